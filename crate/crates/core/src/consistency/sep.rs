use std::collections::HashMap;

use num_traits::Zero;

use super::{event_name, q, splits};
use crate::belief::{Event, StateSpace, UpdateRule, WeightedBeliefSet};
use crate::error::Result;
use crate::rational::Q;
use crate::regret::{self, Act, Menu};
use crate::report::{CheckReport, Witness};

/// Both sides of the separability conditions for one act and one split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepOutcome {
    /// Regret under the beliefs updated on `F`.
    pub lhs: Q,
    /// Weighted sum of the regrets on the two cells.
    pub rhs: Q,
    /// Regret under the beliefs updated on `E ∩ F`.
    pub r_in: Q,
    /// Regret under the beliefs updated on `Eᶜ ∩ F`.
    pub r_out: Q,
    /// Right-hand side of the strict clause.
    pub out_only: Q,
}

impl SepOutcome {
    pub fn equality_holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn strict_clause_holds(&self) -> bool {
        self.r_in.is_zero() || self.lhs > self.out_only
    }

    pub fn holds(&self) -> bool {
        self.equality_holds() && self.strict_clause_holds()
    }
}

/// The outer supremum ranges over the beliefs updated on `F`, which is the
/// full set when `F` is the whole space.
fn outcome(
    conditioned: &WeightedBeliefSet,
    inside: Event,
    outside: Event,
    lhs: Q,
    r_in: Q,
    r_out: Q,
) -> SepOutcome {
    let mut rhs = Q::zero();
    let mut out_only = Q::zero();
    for m in conditioned.members() {
        let p_in = m.measure.prob(inside);
        let p_out = m.measure.prob(outside);
        let total = &m.weight * (&p_in * &r_in + &p_out * &r_out);
        let o = &m.weight * &p_out * &r_out;
        if total > rhs {
            rhs = total;
        }
        if o > out_only {
            out_only = o;
        }
    }
    SepOutcome {
        lhs,
        rhs,
        r_in,
        r_out,
        out_only,
    }
}

/// Side-condition of the separability definition: both cells have positive
/// upper weighted probability.
fn guard(bel: &WeightedBeliefSet, inside: Event, outside: Event) -> bool {
    !bel.upper_weighted_prob(inside).is_zero() && !bel.upper_weighted_prob(outside).is_zero()
}

fn witness(
    space: Option<&StateSpace>,
    f: &Act,
    inside: Event,
    fvt: Event,
    o: &SepOutcome,
    rule: UpdateRule,
) -> Witness {
    let (kind, msg) = if !o.equality_holds() {
        ("sep-equality", "regret on F differs from the weighted regrets on the cells")
    } else {
        ("sep-strict", "regret on F does not exceed the Eᶜ∩F part although the E∩F regret is nonzero")
    };
    Witness::new(kind, format!("`{}`: {msg}", f.label()))
        .with("act", f.label())
        .with("E_cap_F", event_name(space, inside))
        .with("F", event_name(space, fvt))
        .with("update", rule.name())
        .with("lhs", q(&o.lhs))
        .with("rhs", q(&o.rhs))
        .with("regret_E_cap_F", q(&o.r_in))
        .with("regret_Ec_cap_F", q(&o.r_out))
        .with("strict_bound", q(&o.out_only))
}

/// Separability of the weighted regret of `f` against menu `m` for one split.
pub fn check_sep(
    bel: &WeightedBeliefSet,
    m: &Menu,
    f: &Act,
    e: Event,
    fvt: Event,
    rule: UpdateRule,
) -> Result<CheckReport> {
    check_sep_named(None, bel, m, f, e, fvt, rule)
}

pub fn check_sep_named(
    space: Option<&StateSpace>,
    bel: &WeightedBeliefSet,
    m: &Menu,
    f: &Act,
    e: Event,
    fvt: Event,
    rule: UpdateRule,
) -> Result<CheckReport> {
    let mut r = CheckReport::new("sep");
    let n = bel.dim();
    let inside = e.intersect(fvt);
    let outside = e.complement(n).intersect(fvt);
    if !guard(bel, inside, outside) {
        r.count("side_condition_unmet", 1);
        r.note("side-condition unmet: a cell has zero upper weighted probability");
        return Ok(r);
    }
    let conditioned = bel.update(fvt, rule);
    let o = outcome(
        &conditioned,
        inside,
        outside,
        regret::mwer(m, f, &conditioned)?,
        regret::mwer(m, f, &bel.update(inside, rule))?,
        regret::mwer(m, f, &bel.update(outside, rule))?,
    );
    r.count("cells", 1);
    if !o.holds() {
        r.fail(witness(space, f, inside, fvt, &o, rule));
    }
    Ok(r)
}

/// Separability for every act of `m` and every split drawn from `algebra`.
pub fn check_sep_all(
    space: Option<&StateSpace>,
    bel: &WeightedBeliefSet,
    m: &Menu,
    algebra: &[Event],
    rule: UpdateRule,
) -> Result<CheckReport> {
    let mut r = CheckReport::new("sep");
    let n = bel.dim();
    let mut updated: HashMap<Event, WeightedBeliefSet> = HashMap::new();
    let mut regrets: HashMap<Event, Vec<Q>> = HashMap::new();
    let mut regret_on = |ev: Event| -> Result<(WeightedBeliefSet, Vec<Q>)> {
        if let Some(v) = regrets.get(&ev) {
            return Ok((updated[&ev].clone(), v.clone()));
        }
        let b = bel.update(ev, rule);
        let v = m
            .acts()
            .iter()
            .map(|f| regret::mwer(m, f, &b))
            .collect::<Result<Vec<_>>>()?;
        updated.insert(ev, b.clone());
        regrets.insert(ev, v.clone());
        Ok((b, v))
    };
    for (inside, fvt) in splits(algebra, n, false) {
        let outside = inside.complement(n).intersect(fvt);
        if !guard(bel, inside, outside) {
            r.count("side_condition_unmet", 1);
            continue;
        }
        let (conditioned, lhs) = regret_on(fvt)?;
        let (_, rin) = regret_on(inside)?;
        let (_, rout) = regret_on(outside)?;
        for (i, f) in m.acts().iter().enumerate() {
            r.count("cells", 1);
            let o = outcome(&conditioned, inside, outside, lhs[i].clone(), rin[i].clone(), rout[i].clone());
            if !o.holds() {
                r.fail(witness(space, f, inside, fvt, &o, rule));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::{ProbMeasure, WeightedMeasure};
    use crate::rational::{frac, int};

    fn table1() -> WeightedBeliefSet {
        let pr1 = ProbMeasure::new(vec![int(1), int(0), int(0), int(0)]).unwrap();
        let pr2 = ProbMeasure::deficient(vec![int(0), frac(1, 5), frac(1, 5), frac(1, 5)]).unwrap();
        WeightedBeliefSet::new(vec![
            WeightedMeasure::new(pr1, int(1)).unwrap(),
            WeightedMeasure::new(pr2, frac(3, 5)).unwrap(),
        ])
        .unwrap()
    }

    fn acts() -> (Act, Act) {
        (
            Act::new("play-study", vec![int(1), int(0), int(5), int(0)]),
            Act::new("play-play", vec![int(0), int(3), int(0), int(3)]),
        )
    }

    #[test]
    fn table1_split_on_hard_fails() {
        let (ps, pp) = acts();
        let m = Menu::new([ps.clone(), pp]).unwrap();
        let hard = Event::from_indices([0, 1]);
        let r = check_sep(&table1(), &m, &ps, hard, Event::full(4), UpdateRule::PriorByPrior).unwrap();
        assert!(!r.passed());
        let w = &r.witnesses[0];
        assert_eq!(w.kind, "sep-equality");
        // Brute force: lhs = 3/5 * (3 * 1/5 + 3 * 1/5); the Pr1 term of rhs = 1 * 9/5.
        assert_eq!(w.field("lhs"), Some("18/25"));
        assert_eq!(w.field("rhs"), Some("9/5"));
        assert_eq!(w.field("regret_E_cap_F"), Some("9/5"));
        assert_eq!(w.field("regret_Ec_cap_F"), Some("9/10"));
    }

    #[test]
    fn singleton_passes_everywhere() {
        let (ps, pp) = acts();
        let m = Menu::new([ps, pp]).unwrap();
        let bel = WeightedBeliefSet::singleton(
            ProbMeasure::new(vec![frac(1, 10), frac(2, 10), frac(3, 10), frac(4, 10)]).unwrap(),
        );
        let algebra: Vec<Event> = (0..16).map(Event::from_bits).collect();
        for rule in UpdateRule::ALL {
            let r = check_sep_all(None, &bel, &m, &algebra, rule).unwrap();
            assert!(r.passed(), "{}", r.render_text());
            assert!(r.stats["cells"] > 0);
        }
    }

    #[test]
    fn trivial_split_is_vacuous() {
        let (ps, pp) = acts();
        let m = Menu::new([ps.clone(), pp]).unwrap();
        let r = check_sep(&table1(), &m, &ps, Event::full(4), Event::full(4), UpdateRule::PriorByPrior).unwrap();
        assert!(r.passed());
        assert_eq!(r.stats["side_condition_unmet"], 1);
        let r = check_sep(&table1(), &m, &ps, Event::EMPTY, Event::full(4), UpdateRule::Likelihood).unwrap();
        assert_eq!(r.stats["side_condition_unmet"], 1);
    }
}
