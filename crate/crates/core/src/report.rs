//! Structured verdicts produced by the validators and consistency checkers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Version tag written into every JSON report.
pub const REPORT_SCHEMA: &str = "regretlab.report/v1";

/// Witnesses retained per report; the total is kept in `stats.witnesses_total`.
const MAX_WITNESSES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One counterexample. `fields` hold the replayable inputs and observed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub message: String,
    pub fields: BTreeMap<String, String>,
}

impl Witness {
    pub fn new(kind: impl Into<String>, message: impl Into<String>) -> Witness {
        Witness {
            kind: kind.into(),
            message: message.into(),
            fields: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Witness {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields.get(key).map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub stats: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> CheckReport {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            stats: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn fail(&mut self, w: Witness) {
        self.verdict = Verdict::Fail;
        *self.stats.entry("witnesses_total".into()).or_insert(0) += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub fn count(&mut self, stat: &str, n: u64) {
        *self.stats.entry(stat.to_string()).or_insert(0) += n;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    /// Folds `other` into this report, prefixing its stats with its check name.
    pub fn absorb(&mut self, other: CheckReport) {
        for (k, v) in other.stats {
            if k == "witnesses_total" {
                continue;
            }
            self.count(&format!("{}.{}", other.check, k), v);
        }
        for w in other.witnesses {
            self.fail(w);
        }
        if other.verdict == Verdict::Fail && self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
        for n in other.notes {
            self.note(n);
        }
    }

    /// Witnesses whose kind starts with `prefix`.
    pub fn witnesses_of<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Witness> + 'a {
        self.witnesses.iter().filter(move |w| w.kind.starts_with(prefix))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": REPORT_SCHEMA,
            "check": self.check,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "stats": self.stats,
            "notes": self.notes,
        })
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let _ = writeln!(s, "{}: {}", self.check, verdict);
        for w in &self.witnesses {
            let _ = writeln!(s, "  witness [{}] {}", w.kind, w.message);
            for (k, v) in &w.fields {
                let _ = writeln!(s, "    {k} = {v}");
            }
        }
        if !self.stats.is_empty() {
            let parts: Vec<String> = self.stats.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "  stats: {}", parts.join(" "));
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_requires_a_witness_and_absorb_merges() {
        let mut a = CheckReport::new("outer");
        assert!(a.passed());
        let mut b = CheckReport::new("inner");
        b.count("cells", 3);
        b.fail(Witness::new("x", "broken").with("h", "s1"));
        a.absorb(b);
        assert!(!a.passed());
        assert_eq!(a.witnesses.len(), 1);
        assert_eq!(a.stats["inner.cells"], 3);
        assert_eq!(a.stats["witnesses_total"], 1);
        assert_eq!(a.to_json()["schema"], REPORT_SCHEMA);
    }
}
