//! Finite weighted sets of probability measures, their updates, and the
//! subprobability algebra they generate.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp;
use crate::rational::{self, Q};

pub const MAX_STATES: usize = 64;

/// A set of states, stored as a bitmask over the state space's ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event(u64);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn full(n: usize) -> Event {
        debug_assert!(n <= MAX_STATES);
        if n == 64 {
            Event(u64::MAX)
        } else {
            Event((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Event {
        Event(1u64 << i)
    }

    pub fn from_bits(bits: u64) -> Event {
        Event(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Event {
        Event(it.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Event) -> Event {
        Event(self.0 | other.0)
    }

    pub fn intersect(self, other: Event) -> Event {
        Event(self.0 & other.0)
    }

    /// Complement relative to a space of `n` states.
    pub fn complement(self, n: usize) -> Event {
        Event(!self.0 & Event::full(n).0)
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_STATES).filter(move |i| bits >> i & 1 == 1)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Ordered states plus the named events declared relevant to a problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    states: Vec<String>,
    basis: Vec<(String, Event)>,
}

impl StateSpace {
    pub fn new<S: Into<String>>(states: impl IntoIterator<Item = S>) -> Result<StateSpace> {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(Error::StateSpace("no states".into()));
        }
        if states.len() > MAX_STATES {
            return Err(Error::StateSpace(format!(
                "{} states exceeds the supported maximum of {MAX_STATES}",
                states.len()
            )));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::StateSpace(format!("duplicate state `{s}`")));
            }
        }
        Ok(StateSpace {
            states,
            basis: Vec::new(),
        })
    }

    /// Adds a named basis event given by state names.
    pub fn with_event<S: AsRef<str>>(mut self, name: &str, members: &[S]) -> Result<StateSpace> {
        let e = self.event(members)?;
        if self.basis.iter().any(|(n, _)| n == name) {
            return Err(Error::StateSpace(format!("duplicate event name `{name}`")));
        }
        self.basis.push((name.to_string(), e));
        Ok(self)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn full(&self) -> Event {
        Event::full(self.len())
    }

    pub fn basis(&self) -> &[(String, Event)] {
        &self.basis
    }

    pub fn index_of(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn named_event(&self, name: &str) -> Option<Event> {
        self.basis.iter().find(|(n, _)| n == name).map(|(_, e)| *e)
    }

    pub fn event<S: AsRef<str>>(&self, members: &[S]) -> Result<Event> {
        let mut e = Event::EMPTY;
        for m in members {
            let i = self
                .index_of(m.as_ref())
                .ok_or_else(|| Error::StateSpace(format!("unknown state `{}`", m.as_ref())))?;
            e = e.union(Event::singleton(i));
        }
        Ok(e)
    }

    pub fn state_names(&self, e: Event) -> Vec<&str> {
        e.indices()
            .take_while(|&i| i < self.len())
            .map(|i| self.states[i].as_str())
            .collect()
    }

    /// Renders an event as `{a,b}`, or by its basis name when it has one.
    pub fn format_event(&self, e: Event) -> String {
        if let Some((n, _)) = self.basis.iter().find(|(_, b)| *b == e) {
            return n.clone();
        }
        format!("{{{}}}", self.state_names(e).join(","))
    }
}

/// The algebra generated by the space's basis events.
pub fn sigma_algebra(space: &StateSpace, cap: usize) -> Result<Vec<Event>> {
    let basis: Vec<Event> = space.basis.iter().map(|(_, e)| *e).collect();
    generated_algebra(space.len(), &basis, cap)
}

/// All unions of atoms of the partition generated by `events`, sorted by bitmask.
pub fn generated_algebra(n: usize, events: &[Event], cap: usize) -> Result<Vec<Event>> {
    let mut atoms: Vec<(Vec<bool>, Event)> = Vec::new();
    for s in 0..n {
        let sig: Vec<bool> = events.iter().map(|e| e.contains(s)).collect();
        match atoms.iter_mut().find(|(g, _)| *g == sig) {
            Some((_, a)) => *a = a.union(Event::singleton(s)),
            None => atoms.push((sig, Event::singleton(s))),
        }
    }
    let k = atoms.len();
    let size: u128 = 1u128 << k;
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            name: "sigma",
            size,
            limit: cap as u128,
        });
    }
    let mut out: Vec<Event> = (0..size as u64)
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Event::EMPTY, |acc, (_, (_, a))| acc.union(*a))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// A probability measure over the state space, one exact mass per state.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProbMeasure {
    mass: Vec<Q>,
}

impl fmt::Debug for ProbMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mass.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl ProbMeasure {
    pub fn new(mass: Vec<Q>) -> Result<ProbMeasure> {
        let m = ProbMeasure::deficient(mass)?;
        if !m.total().is_one() {
            return Err(Error::Measure(format!(
                "masses sum to {}, not 1",
                rational::format(&m.total())
            )));
        }
        Ok(m)
    }

    /// A measure whose total mass may be below one. Conditioning renormalizes it.
    /// Only used to encode tables whose rows are printed without normalization.
    pub fn deficient(mass: Vec<Q>) -> Result<ProbMeasure> {
        if mass.is_empty() {
            return Err(Error::Measure("no states".into()));
        }
        if mass.len() > MAX_STATES {
            return Err(Error::Measure("too many states".into()));
        }
        if let Some(q) = mass.iter().find(|q| q.is_negative()) {
            return Err(Error::Measure(format!("negative mass {}", rational::format(q))));
        }
        let m = ProbMeasure { mass };
        let t = m.total();
        if t.is_zero() || t > Q::one() {
            return Err(Error::Measure(format!(
                "total mass {} outside (0, 1]",
                rational::format(&t)
            )));
        }
        Ok(m)
    }

    pub fn point(n: usize, i: usize) -> ProbMeasure {
        let mut mass = vec![Q::zero(); n];
        mass[i] = Q::one();
        ProbMeasure { mass }
    }

    pub fn uniform(n: usize) -> ProbMeasure {
        ProbMeasure {
            mass: vec![rational::frac(1, n as i64); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self) -> &[Q] {
        &self.mass
    }

    pub fn total(&self) -> Q {
        self.mass.iter().sum()
    }

    pub fn prob(&self, e: Event) -> Q {
        self.mass
            .iter()
            .enumerate()
            .filter(|(i, _)| e.contains(*i))
            .map(|(_, q)| q)
            .sum()
    }

    /// `Pr | e`, or `None` when `Pr(e) = 0`.
    pub fn condition(&self, e: Event) -> Option<ProbMeasure> {
        let p = self.prob(e);
        if p.is_zero() {
            return None;
        }
        let mass = self
            .mass
            .iter()
            .enumerate()
            .map(|(i, q)| if e.contains(i) { q / &p } else { Q::zero() })
            .collect();
        Some(ProbMeasure { mass })
    }

    pub fn expectation(&self, theta: &[Q]) -> Q {
        self.mass.iter().zip(theta).map(|(p, t)| p * t).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMeasure {
    pub measure: ProbMeasure,
    pub weight: Q,
}

impl WeightedMeasure {
    pub fn new(measure: ProbMeasure, weight: Q) -> Result<WeightedMeasure> {
        if weight.is_negative() || weight > Q::one() {
            return Err(Error::BeliefSet(format!(
                "weight {} outside [0, 1]",
                rational::format(&weight)
            )));
        }
        Ok(WeightedMeasure { measure, weight })
    }

    /// The subprobability `weight * Pr`.
    pub fn scaled(&self) -> Vec<Q> {
        self.measure.mass().iter().map(|p| p * &self.weight).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateRule {
    /// Condition every measure with positive probability; weights are kept.
    PriorByPrior,
    /// Condition and rescale weights by relative likelihood of the observation.
    Likelihood,
}

impl UpdateRule {
    pub fn name(self) -> &'static str {
        match self {
            UpdateRule::PriorByPrior => "prior",
            UpdateRule::Likelihood => "likelihood",
        }
    }

    pub fn parse(s: &str) -> Result<UpdateRule> {
        match s {
            "prior" | "p" | "prior-by-prior" => Ok(UpdateRule::PriorByPrior),
            "likelihood" | "l" => Ok(UpdateRule::Likelihood),
            _ => Err(Error::Parse(format!("unknown update rule `{s}`"))),
        }
    }

    pub const ALL: [UpdateRule; 2] = [UpdateRule::PriorByPrior, UpdateRule::Likelihood];
}

/// A finite set of weighted probability measures with pairwise distinct measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedBeliefSet {
    dim: usize,
    members: Vec<WeightedMeasure>,
}

impl WeightedBeliefSet {
    /// A normalized belief set: nonempty, and some member carries weight exactly 1.
    pub fn new(members: Vec<WeightedMeasure>) -> Result<WeightedBeliefSet> {
        if members.is_empty() {
            return Err(Error::BeliefSet("no members".into()));
        }
        let set = WeightedBeliefSet::unnormalized(members[0].measure.dim(), members)?;
        if !set.members.iter().any(|m| m.weight.is_one()) {
            return Err(Error::BeliefSet("no member has weight 1".into()));
        }
        Ok(set)
    }

    /// A belief set without the normalization requirement; may be empty.
    pub fn unnormalized(dim: usize, members: Vec<WeightedMeasure>) -> Result<WeightedBeliefSet> {
        for (i, m) in members.iter().enumerate() {
            if m.measure.dim() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: m.measure.dim(),
                });
            }
            if m.weight.is_negative() || m.weight > Q::one() {
                return Err(Error::BeliefSet("weight outside [0, 1]".into()));
            }
            if members[..i].iter().any(|o| o.measure == m.measure) {
                return Err(Error::BeliefSet(format!(
                    "measure {:?} listed twice",
                    m.measure
                )));
            }
        }
        Ok(WeightedBeliefSet { dim, members })
    }

    pub fn empty(dim: usize) -> WeightedBeliefSet {
        WeightedBeliefSet {
            dim,
            members: Vec::new(),
        }
    }

    pub fn singleton(measure: ProbMeasure) -> WeightedBeliefSet {
        WeightedBeliefSet {
            dim: measure.dim(),
            members: vec![WeightedMeasure {
                measure,
                weight: Q::one(),
            }],
        }
    }

    /// Every measure with weight 1 (an unweighted set of priors).
    pub fn unweighted(measures: Vec<ProbMeasure>) -> Result<WeightedBeliefSet> {
        let members = measures
            .into_iter()
            .map(|measure| WeightedMeasure {
                measure,
                weight: Q::one(),
            })
            .collect();
        WeightedBeliefSet::new(members)
    }

    /// The belief set `{(delta_s, 1) : s}`; MWER over it is plain minimax regret.
    pub fn point_masses(n: usize) -> WeightedBeliefSet {
        WeightedBeliefSet {
            dim: n,
            members: (0..n)
                .map(|i| WeightedMeasure {
                    measure: ProbMeasure::point(n, i),
                    weight: Q::one(),
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[WeightedMeasure] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn measures(&self) -> Vec<ProbMeasure> {
        self.members.iter().map(|m| m.measure.clone()).collect()
    }

    pub fn max_weight(&self) -> Option<Q> {
        rational::max_of(self.members.iter().map(|m| &m.weight))
    }

    /// Weight of `measure` in this set, if present.
    pub fn weight_of(&self, measure: &ProbMeasure) -> Option<&Q> {
        self.members
            .iter()
            .find(|m| &m.measure == measure)
            .map(|m| &m.weight)
    }

    /// Upper weighted probability: `max weight * Pr(e)`; zero for the empty set.
    pub fn upper_weighted_prob(&self, e: Event) -> Q {
        self.members
            .iter()
            .map(|m| &m.weight * m.measure.prob(e))
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Conditions the set on `e`.
    ///
    /// Members with `Pr(e) = 0` are dropped. Under likelihood updating each
    /// conditional is weighted by `weight * Pr(e) / upper_weighted_prob(e)`;
    /// members with equal conditionals are merged, keeping the largest weight.
    /// Updating on the whole space returns the set unchanged.
    pub fn update(&self, e: Event, rule: UpdateRule) -> WeightedBeliefSet {
        if e == Event::full(self.dim) {
            return self.clone();
        }
        let upper = self.upper_weighted_prob(e);
        if rule == UpdateRule::Likelihood && upper.is_zero() {
            return WeightedBeliefSet::empty(self.dim);
        }
        let mut out: Vec<WeightedMeasure> = Vec::new();
        for m in &self.members {
            let Some(cond) = m.measure.condition(e) else {
                continue;
            };
            let weight = match rule {
                UpdateRule::PriorByPrior => m.weight.clone(),
                UpdateRule::Likelihood => &m.weight * m.measure.prob(e) / &upper,
            };
            match out.iter_mut().find(|o| o.measure == cond) {
                Some(o) => {
                    if weight > o.weight {
                        o.weight = weight;
                    }
                }
                None => out.push(WeightedMeasure {
                    measure: cond,
                    weight,
                }),
            }
        }
        WeightedBeliefSet {
            dim: self.dim,
            members: out,
        }
    }

    /// The vectors `weight * Pr`; `C(P+)` is the union of the boxes below them.
    pub fn c_generators(&self) -> Vec<SubProbability> {
        self.members
            .iter()
            .map(|m| SubProbability { mass: m.scaled() })
            .collect()
    }

    /// `q` is dominated componentwise by some generator.
    pub fn in_c(&self, q: &SubProbability) -> bool {
        self.members.iter().any(|m| {
            m.measure
                .mass()
                .iter()
                .zip(&q.mass)
                .all(|(p, x)| x <= &(p * &m.weight))
        })
    }

    /// `q` is dominated componentwise by some convex combination of generators.
    pub fn in_convex_c(&self, q: &SubProbability) -> bool {
        self.convex_c_certificate(q).is_some()
    }

    /// Mixture weights over the generators witnessing `in_convex_c`.
    pub fn convex_c_certificate(&self, q: &SubProbability) -> Option<Vec<Q>> {
        let gens: Vec<Vec<Q>> = self.members.iter().map(WeightedMeasure::scaled).collect();
        if let Some(i) = gens
            .iter()
            .position(|g| g.iter().zip(&q.mass).all(|(a, b)| b <= a))
        {
            let mut lambda = vec![Q::zero(); gens.len()];
            lambda[i] = Q::one();
            return Some(lambda);
        }
        // Every coordinate must be reachable by at least one generator.
        for (i, x) in q.mass.iter().enumerate() {
            if gens.iter().all(|g| &g[i] < x) {
                return None;
            }
        }
        lp::dominating_mixture(&q.mass, &gens)
    }

    /// Maximum weighted expected value of `theta`; zero for the empty set.
    pub fn upper_expectation(&self, theta: &[Q]) -> Q {
        self.members
            .iter()
            .map(|m| &m.weight * m.measure.expectation(theta))
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Whether a single generator dominates all others. For a finite set this
    /// is exactly when `C(P+)` is convex.
    pub fn has_dominating_generator(&self) -> bool {
        let gens: Vec<Vec<Q>> = self.members.iter().map(WeightedMeasure::scaled).collect();
        gens.iter().any(|g| {
            gens.iter()
                .all(|h| h.iter().zip(g).all(|(x, y)| x <= y))
        })
    }
}

/// A nonnegative vector with total mass at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubProbability {
    mass: Vec<Q>,
}

impl SubProbability {
    pub fn new(mass: Vec<Q>) -> Result<SubProbability> {
        if mass.iter().any(|q| q.is_negative()) {
            return Err(Error::Measure("negative subprobability mass".into()));
        }
        let t: Q = mass.iter().sum();
        if t > Q::one() {
            return Err(Error::Measure(format!(
                "subprobability total {} exceeds 1",
                rational::format(&t)
            )));
        }
        Ok(SubProbability { mass })
    }

    pub fn zero(n: usize) -> SubProbability {
        SubProbability {
            mass: vec![Q::zero(); n],
        }
    }

    pub fn mass(&self) -> &[Q] {
        &self.mass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pm(xs: &[(i64, i64)]) -> ProbMeasure {
        ProbMeasure::new(xs.iter().map(|&(n, d)| frac(n, d)).collect()).unwrap()
    }

    fn sub(xs: &[(i64, i64)]) -> SubProbability {
        SubProbability::new(xs.iter().map(|&(n, d)| frac(n, d)).collect()).unwrap()
    }

    /// The exam belief table as printed: the second row carries total mass 3/5.
    fn table1() -> WeightedBeliefSet {
        let pr1 = pm(&[(1, 1), (0, 1), (0, 1), (0, 1)]);
        let pr2 = ProbMeasure::deficient(vec![int(0), frac(1, 5), frac(1, 5), frac(1, 5)]).unwrap();
        WeightedBeliefSet::new(vec![
            WeightedMeasure::new(pr1, int(1)).unwrap(),
            WeightedMeasure::new(pr2, frac(3, 5)).unwrap(),
        ])
        .unwrap()
    }

    const HARD: Event = Event(0b0011);
    const EASY: Event = Event(0b1100);

    #[test]
    fn upper_weighted_prob_examples() {
        let bel = WeightedBeliefSet::singleton(ProbMeasure::uniform(2));
        assert_eq!(bel.upper_weighted_prob(Event::singleton(0)), frac(1, 2));
        assert_eq!(table1().upper_weighted_prob(HARD), int(1));
        assert_eq!(table1().upper_weighted_prob(Event::EMPTY), int(0));
        assert_eq!(WeightedBeliefSet::empty(3).upper_weighted_prob(Event::full(3)), int(0));
    }

    #[test]
    fn singleton_likelihood_update_is_bayesian() {
        let pr = pm(&[(1, 2), (1, 3), (1, 6)]);
        let e = Event::from_indices([0, 2]);
        let got = WeightedBeliefSet::singleton(pr.clone()).update(e, UpdateRule::Likelihood);
        assert_eq!(got, WeightedBeliefSet::singleton(pr.condition(e).unwrap()));
    }

    #[test]
    fn table1_updates_on_hard() {
        let l = table1().update(HARD, UpdateRule::Likelihood);
        assert_eq!(l.len(), 2);
        assert_eq!(l.weight_of(&ProbMeasure::point(4, 0)), Some(&int(1)));
        assert_eq!(l.weight_of(&ProbMeasure::point(4, 1)), Some(&frac(3, 25)));

        let p = table1().update(HARD, UpdateRule::PriorByPrior);
        assert_eq!(p.weight_of(&ProbMeasure::point(4, 0)), Some(&int(1)));
        assert_eq!(p.weight_of(&ProbMeasure::point(4, 1)), Some(&frac(3, 5)));
    }

    #[test]
    fn table1_likelihood_on_easy_drops_first_measure() {
        let l = table1().update(EASY, UpdateRule::Likelihood);
        assert_eq!(l.len(), 1);
        assert_eq!(l.members()[0].measure, pm(&[(0, 1), (0, 1), (1, 2), (1, 2)]));
        assert_eq!(l.members()[0].weight, int(1));
    }

    #[test]
    fn likelihood_update_on_null_event_is_empty() {
        let bel = WeightedBeliefSet::singleton(pm(&[(1, 1), (0, 1)]));
        assert!(bel.update(Event::singleton(1), UpdateRule::Likelihood).is_empty());
        assert!(bel.update(Event::singleton(1), UpdateRule::PriorByPrior).is_empty());
    }

    #[test]
    fn duplicate_conditionals_merge_by_max() {
        // Both measures condition to the point mass on state 0 given {0}.
        let a = pm(&[(1, 2), (1, 2)]);
        let b = pm(&[(1, 4), (3, 4)]);
        let bel = WeightedBeliefSet::new(vec![
            WeightedMeasure::new(a, int(1)).unwrap(),
            WeightedMeasure::new(b, frac(1, 2)).unwrap(),
        ])
        .unwrap();
        let e = Event::singleton(0);
        let l = bel.update(e, UpdateRule::Likelihood);
        assert_eq!(l.len(), 1);
        // max(1 * 1/2, 1/2 * 1/4) / (1/2)
        assert_eq!(l.members()[0].weight, int(1));
        let p = bel.update(e, UpdateRule::PriorByPrior);
        assert_eq!(p.len(), 1);
        assert_eq!(p.members()[0].weight, int(1));
    }

    #[test]
    fn c_generators_examples() {
        let g = WeightedBeliefSet::singleton(ProbMeasure::uniform(2)).c_generators();
        assert_eq!(g, vec![sub(&[(1, 2), (1, 2)])]);

        let bel = WeightedBeliefSet::new(vec![
            WeightedMeasure::new(ProbMeasure::point(2, 0), int(1)).unwrap(),
            WeightedMeasure::new(ProbMeasure::point(2, 1), frac(1, 2)).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            bel.c_generators(),
            vec![sub(&[(1, 1), (0, 1)]), sub(&[(0, 1), (1, 2)])]
        );

        let t: Vec<Vec<Q>> = table1().c_generators().iter().map(|s| s.mass().to_vec()).collect();
        let v = frac(3, 25);
        assert_eq!(
            t,
            vec![
                vec![int(1), int(0), int(0), int(0)],
                vec![int(0), v.clone(), v.clone(), v]
            ]
        );
    }

    #[test]
    fn in_c_examples() {
        let bel = table1();
        assert!(bel.in_c(&SubProbability::zero(4)));
        for g in bel.c_generators() {
            assert!(bel.in_c(&g));
        }
        let point = WeightedBeliefSet::singleton(ProbMeasure::point(2, 0));
        assert!(!point.in_c(&sub(&[(0, 1), (1, 2)])));
    }

    #[test]
    fn in_convex_c_examples() {
        let bel = WeightedBeliefSet::unweighted(vec![ProbMeasure::point(2, 0), ProbMeasure::point(2, 1)])
            .unwrap();
        let half = sub(&[(1, 2), (1, 2)]);
        assert!(bel.in_convex_c(&half));
        assert!(!bel.in_c(&half));
        assert!(bel.in_convex_c(&sub(&[(1, 1), (0, 1)])));
        let t = table1();
        assert!(!t.in_convex_c(&sub(&[(0, 1), (1, 5), (0, 1), (0, 1)])));
    }

    #[test]
    fn upper_expectation_examples() {
        let bel = WeightedBeliefSet::new(vec![
            WeightedMeasure::new(ProbMeasure::point(2, 0), int(1)).unwrap(),
            WeightedMeasure::new(ProbMeasure::point(2, 1), frac(1, 2)).unwrap(),
        ])
        .unwrap();
        assert_eq!(bel.upper_expectation(&[int(1), int(4)]), int(2));
        assert_eq!(bel.upper_expectation(&[int(0), int(0)]), int(0));
        let pr = pm(&[(1, 3), (2, 3)]);
        assert_eq!(
            WeightedBeliefSet::singleton(pr).upper_expectation(&[int(3), int(6)]),
            int(5)
        );
    }

    #[test]
    fn sigma_algebra_examples() {
        let s = StateSpace::new(["s1", "s2"]).unwrap();
        assert_eq!(sigma_algebra(&s, 4096).unwrap(), vec![Event(0), Event(3)]);
        let s = s.with_event("A", &["s1"]).unwrap();
        assert_eq!(
            sigma_algebra(&s, 4096).unwrap(),
            vec![Event(0), Event(1), Event(2), Event(3)]
        );
        let s3 = StateSpace::new(["s1", "s2", "s3"])
            .unwrap()
            .with_event("A", &["s1", "s2"])
            .unwrap()
            .with_event("B", &["s2", "s3"])
            .unwrap();
        assert_eq!(sigma_algebra(&s3, 4096).unwrap().len(), 8);
        match sigma_algebra(&s3, 4) {
            Err(Error::CapExceeded { size, .. }) => assert_eq!(size, 8),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(ProbMeasure::new(vec![frac(1, 2), frac(1, 3)]).is_err());
        assert!(ProbMeasure::new(vec![frac(3, 2), frac(-1, 2)]).is_err());
        assert!(WeightedMeasure::new(ProbMeasure::uniform(2), frac(3, 2)).is_err());
        assert!(WeightedBeliefSet::new(vec![WeightedMeasure::new(ProbMeasure::uniform(2), frac(1, 2)).unwrap()]).is_err());
        assert!(WeightedBeliefSet::unweighted(vec![ProbMeasure::uniform(2), ProbMeasure::uniform(2)]).is_err());
        assert!(StateSpace::new(["a", "a"]).is_err());
    }

    #[test]
    fn convexity_proxy() {
        assert!(!table1().has_dominating_generator());
        let bel = WeightedBeliefSet::new(vec![
            WeightedMeasure::new(ProbMeasure::uniform(2), int(1)).unwrap(),
            WeightedMeasure::new(ProbMeasure::point(2, 0), frac(1, 2)).unwrap(),
        ])
        .unwrap();
        assert!(bel.has_dominating_generator());
    }
}
