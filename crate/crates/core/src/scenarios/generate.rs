use std::collections::BTreeMap;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Scenario, Shape};
use crate::belief::{Event, ProbMeasure, StateSpace, UpdateRule, WeightedBeliefSet, WeightedMeasure};
use crate::consistency::ChoiceContext;
use crate::error::{Error, Result};
use crate::rational::{frac, int, Q};
use crate::tree::MenuPolicy;

/// Parameters for random decision problems. Ranges are inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub states: (usize, usize),
    pub depth: (usize, usize),
    pub branching: (usize, usize),
    pub measures: (usize, usize),
    /// Weights are drawn from `k / weight_grid`, `k = 1..=weight_grid`.
    pub weight_grid: u32,
    /// Probability masses are drawn as integers in `0..=mass_grid`, then normalized.
    pub mass_grid: u32,
    pub utility: (i64, i64),
    /// One information set per action record, spanning every state.
    pub trivial_information: bool,
    /// A single measure with weight 1.
    pub singleton_beliefs: bool,
    /// `{Pr, Pr|E, Pr|Eᶜ}` with weight 1, where `E` is the one event revealed.
    pub closed_under_conditioning: bool,
    pub max_plans: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            states: (2, 4),
            depth: (1, 3),
            branching: (2, 3),
            measures: (1, 3),
            weight_grid: 5,
            mass_grid: 4,
            utility: (0, 9),
            trivial_information: false,
            singleton_beliefs: false,
            closed_under_conditioning: false,
            max_plans: 512,
        }
    }
}

const ATTEMPTS: usize = 64;

impl GeneratorConfig {
    fn check(&self) -> Result<()> {
        let ranges = [self.states, self.depth, self.branching, self.measures];
        if ranges.iter().any(|(lo, hi)| lo > hi) || self.utility.0 > self.utility.1 {
            return Err(Error::Config("empty range in generator config".into()));
        }
        if self.states.0 == 0 || self.states.1 > 16 {
            return Err(Error::Config("state count must lie in 1..=16".into()));
        }
        if self.depth.0 == 0 || self.branching.0 < 2 || self.branching.1 > 8 {
            return Err(Error::Config("depth must be positive and branching in 2..=8".into()));
        }
        if self.weight_grid == 0 || self.mass_grid == 0 {
            return Err(Error::Config("grids must be positive".into()));
        }
        if self.singleton_beliefs && self.closed_under_conditioning {
            return Err(Error::Config("singleton and closed-under-conditioning beliefs are exclusive".into()));
        }
        if self.closed_under_conditioning && self.states.1 < 2 {
            return Err(Error::Config("closed-under-conditioning beliefs need two states".into()));
        }
        Ok(())
    }
}

fn random_shape(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, n: usize) -> Shape {
    let depth = rng.gen_range(cfg.depth.0..=cfg.depth.1);
    let mut shape = Shape::new();
    let mut frontier = vec![Shape::ROOT];
    let leaf = |rng: &mut ChaCha8Rng| -> Vec<Q> {
        (0..n).map(|_| int(rng.gen_range(cfg.utility.0..=cfg.utility.1))).collect()
    };
    for d in 0..depth {
        let mut next = Vec::new();
        for &u in &frontier {
            let b = rng.gen_range(cfg.branching.0..=cfg.branching.1);
            for k in 0..b {
                let action = format!("a{k}");
                // The first child continues; the others may stop early.
                let last = d + 1 == depth;
                if last || (k > 0 && rng.gen_bool(0.5)) {
                    let v = leaf(rng);
                    shape.leaf(u, &action, v);
                } else {
                    next.push(shape.inner(u, &action));
                }
            }
        }
        frontier = next;
    }
    shape
}

/// Random nonempty proper subset of `0..n`.
fn random_split(rng: &mut ChaCha8Rng, n: usize) -> Event {
    loop {
        let e = Event::from_indices((0..n).filter(|_| rng.gen_bool(0.5)));
        if !e.is_empty() && e != Event::full(n) {
            return e;
        }
    }
}

fn random_measure(rng: &mut ChaCha8Rng, n: usize, grid: u32, positive: bool) -> ProbMeasure {
    loop {
        let lo = if positive { 1 } else { 0 };
        let raw: Vec<u32> = (0..n).map(|_| rng.gen_range(lo..=grid)).collect();
        let total: u32 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        let mass = raw.iter().map(|&x| frac(x as i64, total as i64)).collect();
        return ProbMeasure::new(mass).expect("normalized");
    }
}

fn random_beliefs(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, n: usize, revealed: Option<Event>) -> Result<WeightedBeliefSet> {
    if cfg.singleton_beliefs {
        return Ok(WeightedBeliefSet::singleton(random_measure(rng, n, cfg.mass_grid, false)));
    }
    if cfg.closed_under_conditioning {
        let e = revealed.expect("closed sets reveal one event");
        let pr = random_measure(rng, n, cfg.mass_grid, true);
        let members = [Some(pr.clone()), pr.condition(e), pr.condition(e.complement(n))]
            .into_iter()
            .flatten()
            .map(|m| WeightedMeasure::new(m, Q::one()))
            .collect::<Result<Vec<_>>>()?;
        return WeightedBeliefSet::new(members);
    }
    let k = rng.gen_range(cfg.measures.0.max(1)..=cfg.measures.1.max(1));
    let mut members = Vec::with_capacity(k);
    for i in 0..k {
        let w = if i == 0 {
            Q::one()
        } else {
            frac(rng.gen_range(1..=cfg.weight_grid) as i64, cfg.weight_grid as i64)
        };
        // Small grids may not hold `k` distinct measures; keep what fits.
        let fresh = (0..100)
            .map(|_| random_measure(rng, n, cfg.mass_grid, false))
            .find(|m| members.iter().all(|o: &WeightedMeasure| o.measure != *m));
        if let Some(m) = fresh {
            members.push(WeightedMeasure::new(m, w)?);
        }
    }
    members.shuffle(rng);
    WeightedBeliefSet::new(members)
}

/// A random scenario, deterministic in `cfg.seed`. Information is revealed by
/// refining a partition of the states as the tree deepens, which keeps recall
/// perfect and possibility sets shrinking.
pub fn generate(cfg: &GeneratorConfig) -> Result<Scenario> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = rng.gen_range(cfg.states.0.max(if cfg.closed_under_conditioning { 2 } else { 1 })..=cfg.states.1);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    for _ in 0..ATTEMPTS {
        let shape = random_shape(&mut rng, cfg, n);
        let max_depth = (0..shape.len()).map(|u| shape.depth(u)).max().unwrap_or(0);
        // partitions[d]: the blocks known at depth d.
        let mut partitions: Vec<Vec<Event>> = vec![vec![Event::full(n)]];
        let mut revealed = None;
        for d in 1..=max_depth {
            let prev = partitions[d - 1].clone();
            let next = if cfg.trivial_information {
                prev
            } else if cfg.closed_under_conditioning {
                if d == 1 {
                    let e = random_split(&mut rng, n);
                    revealed = Some(e);
                    vec![e, e.complement(n)]
                } else {
                    prev
                }
            } else {
                prev.iter()
                    .flat_map(|&b| {
                        if b.len() > 1 && rng.gen_bool(0.5) {
                            let idx: Vec<usize> = b.indices().collect();
                            let cut = rng.gen_range(1..idx.len());
                            let mut shuffled = idx.clone();
                            shuffled.shuffle(&mut rng);
                            let left = Event::from_indices(shuffled[..cut].iter().copied());
                            vec![left, Event::from_bits(b.bits() & !left.bits())]
                        } else {
                            vec![b]
                        }
                    })
                    .collect()
            };
            partitions.push(next);
        }
        let mut space = StateSpace::new(states.clone())?;
        let finest = partitions.last().expect("root partition").clone();
        if finest.len() > 1 {
            for (i, b) in finest.iter().enumerate() {
                let names: Vec<&str> = b.indices().map(|s| states[s].as_str()).collect();
                space = space.with_event(&format!("B{i}"), &names)?;
            }
        }
        let tree = shape.build(space, |u| {
            partitions[shape.depth(u)]
                .iter()
                .enumerate()
                .map(|(i, &b)| (format!("n{u}.{i}"), b))
                .collect()
        })?;
        if tree.plan_count() > cfg.max_plans as u128 {
            continue;
        }
        let beliefs = random_beliefs(&mut rng, cfg, n, revealed)?;
        let contexts = UpdateRule::ALL
            .iter()
            .flat_map(|&u| {
                [MenuPolicy::ConstantInitial, MenuPolicy::FeasibleOnly].map(|p| {
                    (
                        format!("mwer-{}-{}", u.name(), p.name()),
                        ChoiceContext::mwer(beliefs.clone(), u, p),
                    )
                })
            })
            .collect();
        return Ok(Scenario {
            name: format!("generated-{}", cfg.seed),
            tree,
            beliefs: Some(beliefs),
            contexts,
            expected: Vec::new(),
            aliases: BTreeMap::from([("root".to_string(), states[0].clone())]),
        });
    }
    Err(Error::Config(format!(
        "no tree within {} plans after {ATTEMPTS} attempts",
        cfg.max_plans
    )))
}

