//! Checkers for dynamic consistency of regret-based choice.
//!
//! Each checker returns a [`CheckReport`]; a failing report carries witnesses
//! whose fields are enough to replay the failing comparison.

mod axioms;
mod rect;
mod reversal;
mod sep;
mod thm2;

pub use axioms::{check_axioms, check_axioms_on_menu, tree_algebra, AxiomSummary};
pub use rect::{check_rectangularity, check_rectangularity_named};
pub use reversal::{check_no_reversal, choice_at, choice_at_with, plan_value, ChoiceAt};
pub use sep::{check_sep, check_sep_all, check_sep_named, SepOutcome};
pub use thm2::{cross_validate_thm2, dcm_probe, SepInstance};

pub use crate::report::{CheckReport, Verdict, Witness};

use crate::belief::{Event, StateSpace, UpdateRule, WeightedBeliefSet};
use crate::error::{Error, Result};
use crate::rational;
use crate::regret::{Criterion, DecisionRule};
use crate::tree::MenuPolicy;

/// How the decision maker chooses at a history: `C_{μ(h), E(h)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceContext {
    pub rule: DecisionRule,
    pub beliefs: Option<WeightedBeliefSet>,
    pub update: UpdateRule,
    pub menu_policy: MenuPolicy,
}

impl ChoiceContext {
    pub fn new(
        rule: DecisionRule,
        beliefs: Option<WeightedBeliefSet>,
        update: UpdateRule,
        menu_policy: MenuPolicy,
    ) -> Result<ChoiceContext> {
        if rule.needs_beliefs() && beliefs.is_none() {
            return Err(Error::RuleArgument {
                rule: rule.name(),
                what: "a belief set",
            });
        }
        Ok(ChoiceContext {
            rule,
            beliefs,
            update,
            menu_policy,
        })
    }

    pub fn mwer(beliefs: WeightedBeliefSet, update: UpdateRule, menu_policy: MenuPolicy) -> ChoiceContext {
        ChoiceContext {
            rule: DecisionRule::Mwer,
            beliefs: Some(beliefs),
            update,
            menu_policy,
        }
    }

    pub fn minimax(menu_policy: MenuPolicy) -> ChoiceContext {
        ChoiceContext {
            rule: DecisionRule::MinimaxRegret,
            beliefs: None,
            update: UpdateRule::PriorByPrior,
            menu_policy,
        }
    }

    /// The criterion after learning `e`.
    pub fn criterion(&self, e: Event) -> Result<Criterion> {
        self.rule.criterion(self.beliefs.as_ref(), e, self.update)
    }

    pub fn describe(&self) -> String {
        format!(
            "rule={} update={} menu={}",
            self.rule.name(),
            self.update.name(),
            self.menu_policy.name()
        )
    }
}

/// Event rendering used in witnesses: basis names when a space is known.
pub(crate) fn event_name(space: Option<&StateSpace>, e: Event) -> String {
    match space {
        Some(s) => s.format_event(e),
        None => format!("{e:?}"),
    }
}

pub(crate) fn q(x: &rational::Q) -> String {
    rational::format(x)
}

/// Distinct pairs `(E ∩ F, F)` over `E, F` in `algebra`; `E` only matters
/// through `E ∩ F`. With `proper`, both `E ∩ F` and `Eᶜ ∩ F` must be nonempty.
pub(crate) fn splits(algebra: &[Event], n: usize, proper: bool) -> Vec<(Event, Event)> {
    let mut out = Vec::new();
    for &f in algebra {
        for &e in algebra {
            let inside = e.intersect(f);
            let outside = e.complement(n).intersect(f);
            if proper && (inside.is_empty() || outside.is_empty()) {
                continue;
            }
            if !out.contains(&(inside, f)) {
                out.push((inside, f));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
