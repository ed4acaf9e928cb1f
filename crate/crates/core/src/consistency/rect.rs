use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{event_name, q, splits};
use crate::belief::{Event, StateSpace, SubProbability, UpdateRule, WeightedBeliefSet};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lp;
use crate::rational::{int, Q};
use crate::report::{CheckReport, Witness};

const FALSIFIER_SEED: u64 = 0x7265_6374;
const FALSIFIER_DRAWS: usize = 16;

fn vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(q).collect();
    format!("({})", parts.join(", "))
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `α₃Pr₃(E∩F)·(α₁Pr₁) + α₃Pr₃(Eᶜ∩F)·(α₂Pr₂)` over members of the set updated on
/// `F` (index 3) and of the sets updated on the two cells (1 and 2). An empty
/// cell set contributes the zero vector; its cell is then null under every
/// member, so the coefficient is zero as well.
fn mixed_generators(
    conditioned: &WeightedBeliefSet,
    cell_in: &WeightedBeliefSet,
    cell_out: &WeightedBeliefSet,
    inside: Event,
    outside: Event,
) -> Vec<Vec<Q>> {
    let n = conditioned.dim();
    let zero = vec![Q::zero(); n];
    let ins: Vec<Vec<Q>> = if cell_in.is_empty() {
        vec![zero.clone()]
    } else {
        cell_in.c_generators().into_iter().map(|g| g.mass().to_vec()).collect()
    };
    let outs: Vec<Vec<Q>> = if cell_out.is_empty() {
        vec![zero]
    } else {
        cell_out.c_generators().into_iter().map(|g| g.mass().to_vec()).collect()
    };
    let mut out: Vec<Vec<Q>> = Vec::new();
    for m3 in conditioned.members() {
        let a = &m3.weight * m3.measure.prob(inside);
        let b = &m3.weight * m3.measure.prob(outside);
        for g1 in &ins {
            for g2 in &outs {
                let v: Vec<Q> = g1.iter().zip(g2).map(|(x, y)| &a * x + &b * y).collect();
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

pub fn check_rectangularity(
    bel: &WeightedBeliefSet,
    algebra: &[Event],
    rule: UpdateRule,
    caps: &Caps,
) -> Result<CheckReport> {
    check_rectangularity_named(None, bel, algebra, rule, caps)
}

/// Checks parts (a), (b) and (c) of rectangularity for every `E, F` in `algebra`.
///
/// Part (b)'s "for all δ > 0" is decided in the limit: the expression is
/// increasing in δ, so it holds iff some member of the set updated on `F`
/// attains `R = max α·Pr(Eᶜ∩F)` with `α·Pr(E∩F) > 0`. Part (c)'s "for all θ ≥ 0"
/// holds iff each generator of `C(P⁺|F)` is dominated by a mixture of the
/// mixed generators, which is an LP feasibility question.
pub fn check_rectangularity_named(
    space: Option<&StateSpace>,
    bel: &WeightedBeliefSet,
    algebra: &[Event],
    rule: UpdateRule,
    caps: &Caps,
) -> Result<CheckReport> {
    if algebra.len() > caps.sigma_events {
        return Err(Error::CapExceeded {
            name: "sigma",
            size: algebra.len() as u128,
            limit: caps.sigma_events as u128,
        });
    }
    let n = bel.dim();
    let mut r = CheckReport::new("rect");
    r.note(format!("update={}", rule.name()));
    let mut rng = ChaCha8Rng::seed_from_u64(FALSIFIER_SEED);
    for (inside, fvt) in splits(algebra, n, false) {
        let outside = inside.complement(n).intersect(fvt);
        let conditioned = bel.update(fvt, rule);
        if conditioned.is_empty() {
            r.count("null_F", 1);
            continue;
        }
        r.count("cells", 1);
        let cell_in = bel.update(inside, rule);
        let cell_out = bel.update(outside, rule);
        let mixed = mixed_generators(&conditioned, &cell_in, &cell_out, inside, outside);
        let at = |w: Witness| {
            w.with("E_cap_F", event_name(space, inside))
                .with("F", event_name(space, fvt))
                .with("update", rule.name())
        };

        // (a)
        for v in &mixed {
            let sub = SubProbability::new(v.clone())?;
            if !conditioned.in_c(&sub) {
                r.fail(at(Witness::new(
                    "rect-a",
                    "a mixture of cell conditionals lies outside C(P+|F)",
                )
                .with("part", "a")
                .with("vector", vector(v))));
            }
        }

        // (b)
        if bel.upper_weighted_prob(inside).is_zero() {
            r.count("b_null_cell", 1);
        } else {
            let outs: Vec<(Q, Q)> = conditioned
                .members()
                .iter()
                .map(|m| (&m.weight * m.measure.prob(outside), &m.weight * m.measure.prob(inside)))
                .collect();
            let big_r = outs.iter().map(|(o, _)| o.clone()).max().expect("nonempty");
            let ok = outs.iter().any(|(o, i)| *o == big_r && !i.is_zero());
            if !ok {
                r.fail(at(Witness::new(
                    "rect-b",
                    "every member maximizing α·Pr(Eᶜ∩F) gives E∩F zero weight",
                )
                .with("part", "b")
                .with("R", q(&big_r))));
            }
        }

        // (c)
        let gens: Vec<Vec<Q>> = conditioned
            .c_generators()
            .into_iter()
            .map(|g| g.mass().to_vec())
            .collect();
        let mut refuted = false;
        for _ in 0..FALSIFIER_DRAWS {
            let theta: Vec<Q> = (0..n).map(|_| int(rng.gen_range(0..=12))).collect();
            let lhs = mixed.iter().map(|v| dot(v, &theta)).max().expect("nonempty");
            let rhs = gens.iter().map(|p| dot(p, &theta)).max().expect("nonempty");
            if lhs < rhs {
                r.count("c_refuted_by_sampling", 1);
                r.fail(at(Witness::new(
                    "rect-c",
                    "the cell decomposition of the upper expectation falls short",
                )
                .with("part", "c")
                .with("theta", vector(&theta))
                .with("lhs", q(&lhs))
                .with("rhs", q(&rhs))));
                refuted = true;
                break;
            }
        }
        if !refuted {
            for p in &gens {
                if mixed.iter().any(|v| v.iter().zip(p).all(|(a, b)| b <= a)) {
                    continue;
                }
                r.count("c_lp_solves", 1);
                if lp::dominating_mixture(p, &mixed).is_none() {
                    r.fail(at(Witness::new(
                        "rect-c",
                        "a generator of C(P+|F) is not dominated by any mixture of cell conditionals",
                    )
                    .with("part", "c")
                    .with("generator", vector(p))));
                    break;
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::{generated_algebra, ProbMeasure, WeightedMeasure};
    use crate::rational::frac;

    fn table1() -> WeightedBeliefSet {
        let pr1 = ProbMeasure::new(vec![int(1), int(0), int(0), int(0)]).unwrap();
        let pr2 = ProbMeasure::deficient(vec![int(0), frac(1, 5), frac(1, 5), frac(1, 5)]).unwrap();
        WeightedBeliefSet::new(vec![
            WeightedMeasure::new(pr1, int(1)).unwrap(),
            WeightedMeasure::new(pr2, frac(3, 5)).unwrap(),
        ])
        .unwrap()
    }

    fn hard_algebra() -> Vec<Event> {
        generated_algebra(4, &[Event::from_indices([0, 1])], 64).unwrap()
    }

    #[test]
    fn positive_singleton_is_rectangular() {
        let bel = WeightedBeliefSet::singleton(
            ProbMeasure::new(vec![frac(1, 2), frac(1, 4), frac(1, 8), frac(1, 8)]).unwrap(),
        );
        let algebra: Vec<Event> = (0..16).map(Event::from_bits).collect();
        for rule in UpdateRule::ALL {
            let r = check_rectangularity(&bel, &algebra, rule, &Caps::default()).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn table1_is_not_rectangular() {
        let r = check_rectangularity(&table1(), &hard_algebra(), UpdateRule::PriorByPrior, &Caps::default()).unwrap();
        assert!(!r.passed());
        assert!(r.witnesses.iter().all(|w| w.field("part").is_some()));
    }

    #[test]
    fn closed_under_conditioning_passes_part_a() {
        let pr = ProbMeasure::new(vec![frac(1, 2), frac(1, 6), frac(1, 3)]).unwrap();
        let e = Event::from_indices([0, 1]);
        let members = vec![
            WeightedMeasure::new(pr.clone(), int(1)).unwrap(),
            WeightedMeasure::new(pr.condition(e).unwrap(), int(1)).unwrap(),
            WeightedMeasure::new(pr.condition(e.complement(3)).unwrap(), int(1)).unwrap(),
        ];
        let bel = WeightedBeliefSet::new(members).unwrap();
        let algebra = generated_algebra(3, &[e], 64).unwrap();
        let r = check_rectangularity(&bel, &algebra, UpdateRule::PriorByPrior, &Caps::default()).unwrap();
        assert_eq!(r.witnesses_of("rect-a").count(), 0, "{}", r.render_text());
    }

    #[test]
    fn mixed_generators_reduce_to_the_measure_for_singletons() {
        let pr = ProbMeasure::new(vec![frac(1, 3), frac(2, 3)]).unwrap();
        let bel = WeightedBeliefSet::singleton(pr.clone());
        let (i, o) = (Event::singleton(0), Event::singleton(1));
        let v = mixed_generators(&bel, &bel.update(i, UpdateRule::Likelihood), &bel.update(o, UpdateRule::Likelihood), i, o);
        assert_eq!(v, vec![pr.mass().to_vec()]);
    }
}
