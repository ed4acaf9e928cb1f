//! Regret of acts against menus, and set-valued choice functions.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::belief::{Event, ProbMeasure, UpdateRule, WeightedBeliefSet};
use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// An act, stored as its utility vector `u . f` with a provenance label.
#[derive(Clone, PartialEq, Eq)]
pub struct Act {
    label: String,
    payoff: Vec<Q>,
}

impl fmt::Debug for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.payoff.iter().map(rational::format).collect();
        write!(f, "{}[{}]", self.label, p.join(", "))
    }
}

impl Act {
    pub fn new(label: impl Into<String>, payoff: Vec<Q>) -> Act {
        Act {
            label: label.into(),
            payoff,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn payoff(&self) -> &[Q] {
        &self.payoff
    }

    pub fn dim(&self) -> usize {
        self.payoff.len()
    }

    pub fn same_payoff(&self, other: &Act) -> bool {
        self.payoff == other.payoff
    }

    /// Agrees with `other` on every state of `e`.
    pub fn agrees_on(&self, other: &Act, e: Event) -> bool {
        e.indices()
            .take_while(|&i| i < self.dim())
            .all(|i| self.payoff[i] == other.payoff[i])
    }
}

/// A nonempty set of acts, deduplicated by payoff vector (first label wins).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Menu {
    acts: Vec<Act>,
}

impl Menu {
    pub fn new(acts: impl IntoIterator<Item = Act>) -> Result<Menu> {
        let mut out: Vec<Act> = Vec::new();
        for a in acts {
            if let Some(first) = out.first() {
                if first.dim() != a.dim() {
                    return Err(Error::Dimension {
                        expected: first.dim(),
                        got: a.dim(),
                    });
                }
            }
            if !out.iter().any(|o| o.same_payoff(&a)) {
                out.push(a);
            }
        }
        if out.is_empty() {
            return Err(Error::EmptyMenu);
        }
        Ok(Menu { acts: out })
    }

    pub fn acts(&self) -> &[Act] {
        &self.acts
    }

    pub fn len(&self) -> usize {
        self.acts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acts.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.acts[0].dim()
    }

    pub fn contains(&self, f: &Act) -> bool {
        self.acts.iter().any(|a| a.same_payoff(f))
    }

    /// Highest payoff available in each state.
    pub fn best(&self) -> Vec<Q> {
        (0..self.dim())
            .map(|s| {
                self.acts
                    .iter()
                    .map(|a| &a.payoff[s])
                    .max()
                    .expect("menu is nonempty")
                    .clone()
            })
            .collect()
    }

    pub fn find(&self, label: &str) -> Option<&Act> {
        self.acts.iter().find(|a| a.label == label)
    }
}

fn check_dim(m: &Menu, f: &Act) -> Result<()> {
    if m.dim() != f.dim() {
        return Err(Error::Dimension {
            expected: m.dim(),
            got: f.dim(),
        });
    }
    Ok(())
}

/// Best payoff in state `s` minus `f`'s payoff there. `f` need not belong to `m`,
/// in which case the result may be negative.
pub fn state_regret(m: &Menu, f: &Act, s: usize) -> Result<Q> {
    check_dim(m, f)?;
    if s >= m.dim() {
        return Err(Error::Dimension {
            expected: m.dim(),
            got: s + 1,
        });
    }
    let best = m.acts.iter().map(|a| &a.payoff[s]).max().expect("nonempty");
    Ok(best - &f.payoff[s])
}

/// Per-state regrets of `f` against `m`.
pub fn regret_vector(m: &Menu, f: &Act) -> Result<Vec<Q>> {
    check_dim(m, f)?;
    Ok(m.best().iter().zip(&f.payoff).map(|(b, x)| b - x).collect())
}

/// Worst-case regret over all states.
pub fn max_regret(m: &Menu, f: &Act) -> Result<Q> {
    max_regret_on(m, f, Event::full(m.dim()))
}

/// Worst-case regret over the states of `e`; zero when `e` is empty.
pub fn max_regret_on(m: &Menu, f: &Act, e: Event) -> Result<Q> {
    let r = regret_vector(m, f)?;
    Ok(max_on(&r, e))
}

fn max_on(r: &[Q], e: Event) -> Q {
    e.indices()
        .take_while(|&i| i < r.len())
        .map(|i| &r[i])
        .max()
        .cloned()
        .unwrap_or_else(Q::zero)
}

pub fn expected_regret(m: &Menu, f: &Act, pr: &ProbMeasure) -> Result<Q> {
    if pr.dim() != m.dim() {
        return Err(Error::Dimension {
            expected: m.dim(),
            got: pr.dim(),
        });
    }
    Ok(pr.expectation(&regret_vector(m, f)?))
}

/// Maximum expected regret over a set of measures. An empty set yields zero
/// and logs a warning, matching the weighted convention.
pub fn mer(m: &Menu, f: &Act, measures: &[ProbMeasure]) -> Result<Q> {
    let r = regret_vector(m, f)?;
    if measures.is_empty() {
        log::warn!("maximum expected regret over an empty set of measures; using 0");
    }
    Ok(mer_of(&r, measures))
}

fn mer_of(r: &[Q], measures: &[ProbMeasure]) -> Q {
    measures
        .iter()
        .map(|p| p.expectation(r))
        .max()
        .unwrap_or_else(Q::zero)
}

/// Maximum weighted expected regret; zero for the empty belief set.
pub fn mwer(m: &Menu, f: &Act, bel: &WeightedBeliefSet) -> Result<Q> {
    if bel.dim() != m.dim() {
        return Err(Error::Dimension {
            expected: m.dim(),
            got: bel.dim(),
        });
    }
    Ok(bel.upper_expectation(&regret_vector(m, f)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionRule {
    MinimaxRegret,
    Mer,
    Mwer,
    /// Expected regret under a single measure.
    ExpectedRegret,
}

impl DecisionRule {
    pub fn name(self) -> &'static str {
        match self {
            DecisionRule::MinimaxRegret => "minimax",
            DecisionRule::Mer => "mer",
            DecisionRule::Mwer => "mwer",
            DecisionRule::ExpectedRegret => "expected",
        }
    }

    pub fn parse(s: &str) -> Result<DecisionRule> {
        match s {
            "minimax" | "minimax-regret" => Ok(DecisionRule::MinimaxRegret),
            "mer" => Ok(DecisionRule::Mer),
            "mwer" => Ok(DecisionRule::Mwer),
            "expected" | "expected-regret" | "expected-regret-single" => {
                Ok(DecisionRule::ExpectedRegret)
            }
            _ => Err(Error::Parse(format!("unknown decision rule `{s}`"))),
        }
    }

    pub fn needs_beliefs(self) -> bool {
        self != DecisionRule::MinimaxRegret
    }

    /// The criterion used after observing `e`: beliefs are updated on `e`
    /// with `update`; minimax regret ranges over the states of `e`.
    pub fn criterion(
        self,
        beliefs: Option<&WeightedBeliefSet>,
        e: Event,
        update: UpdateRule,
    ) -> Result<Criterion> {
        if self == DecisionRule::MinimaxRegret {
            return Ok(Criterion::MinimaxRegret { support: e });
        }
        let bel = beliefs.ok_or(Error::RuleArgument {
            rule: self.name(),
            what: "a belief set",
        })?;
        let updated = bel.update(e, update);
        Ok(match self {
            DecisionRule::Mer => Criterion::Mer(updated.measures()),
            DecisionRule::Mwer => Criterion::Mwer(updated),
            DecisionRule::ExpectedRegret => {
                if bel.len() != 1 {
                    return Err(Error::RuleArgument {
                        rule: self.name(),
                        what: "exactly one measure",
                    });
                }
                Criterion::ExpectedRegret(updated.measures().into_iter().next())
            }
            DecisionRule::MinimaxRegret => unreachable!(),
        })
    }
}

/// A fully instantiated rule: what an act is scored by, given its regret vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Criterion {
    MinimaxRegret { support: Event },
    Mer(Vec<ProbMeasure>),
    Mwer(WeightedBeliefSet),
    /// `None` when conditioning removed the only measure.
    ExpectedRegret(Option<ProbMeasure>),
}

impl Criterion {
    pub fn value(&self, eval_menu: &Menu, f: &Act) -> Result<Q> {
        Ok(self.score(&regret_vector(eval_menu, f)?))
    }

    /// Scores a per-state regret vector.
    pub fn score(&self, regrets: &[Q]) -> Q {
        match self {
            Criterion::MinimaxRegret { support } => max_on(regrets, *support),
            Criterion::Mer(ms) => mer_of(regrets, ms),
            Criterion::Mwer(bel) => bel.upper_expectation(regrets),
            Criterion::ExpectedRegret(Some(p)) => p.expectation(regrets),
            Criterion::ExpectedRegret(None) => Q::zero(),
        }
    }
}

/// Acts of `choice_set` minimizing the criterion, with regret computed against
/// `eval_menu`, paired with their (common) value. Never empty.
pub fn choice_with_values(
    c: &Criterion,
    eval_menu: &Menu,
    choice_set: &[Act],
) -> Result<Vec<(Act, Q)>> {
    if choice_set.is_empty() {
        return Err(Error::EmptyChoiceSet);
    }
    let scored: Vec<(Act, Q)> = choice_set
        .iter()
        .map(|f| Ok((f.clone(), c.value(eval_menu, f)?)))
        .collect::<Result<_>>()?;
    let min = scored.iter().map(|(_, v)| v).min().expect("nonempty").clone();
    Ok(scored.into_iter().filter(|(_, v)| *v == min).collect())
}

pub fn choice(c: &Criterion, eval_menu: &Menu, choice_set: &[Act]) -> Result<Vec<Act>> {
    Ok(choice_with_values(c, eval_menu, choice_set)?
        .into_iter()
        .map(|(a, _)| a)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::WeightedMeasure;
    use crate::rational::{frac, int};

    fn act(label: &str, xs: &[i64]) -> Act {
        Act::new(label, xs.iter().map(|&x| int(x)).collect())
    }

    /// The procrastination exam with (p1, p2, g1, g2) = (10, 10, 25, 15); states (hard, easy).
    fn exam() -> (Act, Act, Act) {
        (act("SS", &[25, 0]), act("PS", &[10, 10]), act("PP", &[5, 20]))
    }

    #[test]
    fn example1_max_regrets() {
        let (ss, ps, pp) = exam();
        let m = Menu::new([ss.clone(), ps.clone(), pp.clone()]).unwrap();
        assert_eq!(max_regret(&m, &ps).unwrap(), int(15));
        assert_eq!(max_regret(&m, &ss).unwrap(), int(20));
        assert_eq!(max_regret(&m, &pp).unwrap(), int(20));
    }

    #[test]
    fn example1_choices() {
        let (ss, ps, pp) = exam();
        let full = Menu::new([ss.clone(), ps.clone(), pp.clone()]).unwrap();
        let day2 = Menu::new([ps.clone(), pp.clone()]).unwrap();
        let c = Criterion::MinimaxRegret { support: Event::full(2) };
        assert_eq!(choice(&c, &full, full.acts()).unwrap(), vec![ps.clone()]);
        assert_eq!(choice(&c, &day2, day2.acts()).unwrap(), vec![pp.clone()]);
        assert_eq!(choice(&c, &full, day2.acts()).unwrap(), vec![ps]);
    }

    #[test]
    fn trivial_regrets() {
        let (ss, ps, pp) = exam();
        let m = Menu::new([ss, ps, pp]).unwrap();
        let best = Act::new("best", m.best());
        for s in 0..2 {
            assert_eq!(state_regret(&m, &best, s).unwrap(), int(0));
        }
        let single = Menu::new([act("f", &[3, -1])]).unwrap();
        assert_eq!(max_regret(&single, &act("f", &[3, -1])).unwrap(), int(0));
        // Outside acts can have negative regret.
        assert_eq!(state_regret(&single, &act("g", &[5, 0]), 0).unwrap(), int(-2));
        assert!(state_regret(&single, &act("g", &[5]), 0).is_err());
    }

    #[test]
    fn expected_regret_point_mass_is_state_regret() {
        let (ss, ps, pp) = exam();
        let m = Menu::new([ss, ps.clone(), pp]).unwrap();
        for s in 0..2 {
            assert_eq!(
                expected_regret(&m, &ps, &ProbMeasure::point(2, s)).unwrap(),
                state_regret(&m, &ps, s).unwrap()
            );
        }
    }

    #[test]
    fn mwer_reduces_to_mer_and_empty_is_zero() {
        let (ss, ps, pp) = exam();
        let m = Menu::new([ss, ps.clone(), pp]).unwrap();
        let ms = vec![ProbMeasure::uniform(2), ProbMeasure::point(2, 1)];
        let bel = WeightedBeliefSet::unweighted(ms.clone()).unwrap();
        assert_eq!(mwer(&m, &ps, &bel).unwrap(), mer(&m, &ps, &ms).unwrap());
        assert_eq!(mwer(&m, &ps, &WeightedBeliefSet::empty(2)).unwrap(), int(0));
        assert_eq!(mer(&m, &ps, &[]).unwrap(), int(0));
    }

    #[test]
    fn empty_beliefs_choose_everything() {
        let (ss, ps, pp) = exam();
        let m = Menu::new([ss, ps, pp]).unwrap();
        let c = Criterion::Mwer(WeightedBeliefSet::empty(2));
        assert_eq!(choice(&c, &m, m.acts()).unwrap().len(), 3);
        assert!(matches!(choice(&c, &m, &[]), Err(Error::EmptyChoiceSet)));
    }

    #[test]
    fn table1_ex_ante_mwer() {
        let pr1 = ProbMeasure::point(4, 0);
        let pr2 = ProbMeasure::deficient(vec![int(0), frac(1, 5), frac(1, 5), frac(1, 5)]).unwrap();
        let bel = WeightedBeliefSet::new(vec![
            WeightedMeasure::new(pr1, int(1)).unwrap(),
            WeightedMeasure::new(pr2, frac(3, 5)).unwrap(),
        ])
        .unwrap();
        let ps = act("play-study", &[1, 0, 5, 0]);
        let pp = act("play-play", &[0, 3, 0, 3]);
        let m = Menu::new([ps.clone(), pp.clone()]).unwrap();
        assert_eq!(mwer(&m, &ps, &bel).unwrap(), frac(18, 25));
        assert_eq!(mwer(&m, &pp, &bel).unwrap(), int(1));
    }

    #[test]
    fn expected_rule_requires_single_measure() {
        let bel = WeightedBeliefSet::unweighted(vec![ProbMeasure::uniform(2), ProbMeasure::point(2, 0)]).unwrap();
        assert!(DecisionRule::ExpectedRegret
            .criterion(Some(&bel), Event::full(2), UpdateRule::Likelihood)
            .is_err());
        assert!(DecisionRule::Mwer
            .criterion(None, Event::full(2), UpdateRule::Likelihood)
            .is_err());
    }
}
