use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{event_name, q, splits, ChoiceContext};
use crate::belief::{generated_algebra, Event, StateSpace};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::regret::{self, Act, Menu};
use crate::report::{CheckReport, Witness};
use crate::tree::DecisionTree;

const SAMPLE_SEED: u64 = 0x6178_696f_6d73;
/// Above this menu size Sen's α is only checked against immediate sub-menus.
const FULL_SEN_LIMIT: usize = 8;

/// Which of the four axioms held, read off a report from [`check_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomSummary {
    pub dc_m: bool,
    pub conditional_preference: bool,
    pub nonemptiness: bool,
    pub sens_alpha: bool,
}

impl AxiomSummary {
    pub fn of(r: &CheckReport) -> AxiomSummary {
        let ok = |k: &str| r.stats.get(&format!("violations.{k}")).copied().unwrap_or(0) == 0;
        AxiomSummary {
            dc_m: ok("dc-m"),
            conditional_preference: ok("conditional-preference"),
            nonemptiness: ok("nonemptiness"),
            sens_alpha: ok("sens-alpha"),
        }
    }

    pub fn all(&self) -> bool {
        self.dc_m && self.conditional_preference && self.nonemptiness && self.sens_alpha
    }
}

/// The algebra generated by the space's named events and every `E(h)`.
pub fn tree_algebra(t: &DecisionTree, caps: &Caps) -> Result<Vec<Event>> {
    let mut events: Vec<Event> = t.space().basis().iter().map(|(_, e)| *e).collect();
    for h in t.decision_nodes() {
        events.push(t.possible_states(h));
    }
    generated_algebra(t.n_states(), &events, caps.sigma_events)
}

/// The four menu axioms (DC-M, conditional preference, nonemptiness, Sen's α) for the tree's initial evaluation menu.
pub fn check_axioms(t: &DecisionTree, ctx: &ChoiceContext, caps: &Caps) -> Result<CheckReport> {
    let table = t.plan_table(caps)?;
    let menu = t.menu_at(t.root(0), &ctx.menu_policy, &table)?;
    let algebra = tree_algebra(t, caps)?;
    let mut r = check_axioms_on_menu(Some(t.space()), &menu, &algebra, ctx, caps)?;
    r.note(ctx.describe());
    Ok(r)
}

/// Per-event ranks of each act's criterion value: lower is better.
pub(crate) struct Ranked {
    pub values: Vec<Q>,
    ranks: Vec<u32>,
}

impl Ranked {
    pub fn new(values: Vec<Q>) -> Ranked {
        let distinct: BTreeSet<&Q> = values.iter().collect();
        let order: BTreeMap<&Q, u32> = distinct.into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        let ranks = values.iter().map(|v| order[v]).collect();
        Ranked { values, ranks }
    }

    /// Members of `subset` (a bitmask over acts) minimizing the value.
    pub fn choose(&self, subset: u64) -> u64 {
        let mut best = u32::MAX;
        let mut out = 0;
        for i in bits(subset) {
            let r = self.ranks[i];
            if r < best {
                best = r;
                out = 1 << i;
            } else if r == best {
                out |= 1 << i;
            }
        }
        out
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

pub(crate) fn mask_labels(acts: &[Act], mask: u64) -> String {
    let names: Vec<&str> = bits(mask).map(|i| acts[i].label()).collect();
    format!("{{{}}}", names.join(", "))
}

/// A failing DC-M instance within one split: `f` is chosen on both cells;
/// `clause1` says it is not chosen on F, and `g`, if any, is rejected on E∩F
/// yet chosen on F.
pub(crate) struct DcmViolation {
    pub subset: u64,
    pub f: usize,
    pub clause1: bool,
    pub g: Option<usize>,
}

/// DC-M for one split over the given sub-menus.
pub(crate) fn dcm_violation(
    inside: &Ranked,
    outside: &Ranked,
    whole: &Ranked,
    subsets: impl IntoIterator<Item = u64>,
) -> Option<DcmViolation> {
    for subset in subsets {
        let c_in = inside.choose(subset);
        let both = c_in & outside.choose(subset);
        if both == 0 {
            continue;
        }
        let c_f = whole.choose(subset);
        let dropped = both & !c_f;
        let g = bits(subset & !c_in & c_f).next();
        if dropped != 0 || g.is_some() {
            let f = bits(if dropped != 0 { dropped } else { both }).next().expect("nonempty");
            return Some(DcmViolation {
                subset,
                f,
                clause1: dropped != 0,
                g,
            });
        }
    }
    None
}

fn subsets(k: usize, caps: &Caps, r: &mut CheckReport) -> Result<Vec<u64>> {
    if k >= 64 {
        return Err(Error::CapExceeded {
            name: "menu_subsets",
            size: 1u128 << k.min(127),
            limit: caps.menu_subsets as u128,
        });
    }
    let full: u64 = (1u64 << k) - 1;
    if full as u128 <= caps.menu_subsets as u128 {
        return Ok((1..=full).collect());
    }
    r.count("sampled", 1);
    r.note(format!(
        "menu has {k} acts: {} sub-menus sampled deterministically",
        caps.menu_subsets
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut out: BTreeSet<u64> = BTreeSet::new();
    out.insert(full);
    for i in 0..k {
        out.insert(1 << i);
    }
    while out.len() < caps.menu_subsets {
        let m = rng.gen::<u64>() & full;
        if m != 0 {
            out.insert(m);
        }
    }
    Ok(out.into_iter().collect())
}

/// The four menu axioms for the family `C_{menu, E}` over every `E` in `algebra` and
/// every sub-menu of `menu` (sampled beyond `caps.menu_subsets`).
pub fn check_axioms_on_menu(
    space: Option<&StateSpace>,
    menu: &Menu,
    algebra: &[Event],
    ctx: &ChoiceContext,
    caps: &Caps,
) -> Result<CheckReport> {
    let mut r = CheckReport::new("axioms");
    let acts = menu.acts();
    let k = acts.len();
    let n = menu.dim();
    let subs = subsets(k, caps, &mut r)?;
    let mut ranked: BTreeMap<Event, Ranked> = BTreeMap::new();
    for &e in algebra {
        let crit = ctx.criterion(e)?;
        let values = acts
            .iter()
            .map(|f| crit.value(menu, f))
            .collect::<Result<Vec<_>>>()?;
        ranked.insert(e, Ranked::new(values));
    }
    let violate = |r: &mut CheckReport, kind: &str, w: Witness| {
        r.count(&format!("violations.{kind}"), 1);
        r.fail(w);
    };
    r.count("events", algebra.len() as u64);
    r.count("sub_menus", subs.len() as u64);

    // Nonemptiness, cross-checked against the engine's choice on the full menu.
    for &e in algebra {
        let rk = &ranked[&e];
        let engine = regret::choice(&ctx.criterion(e)?, menu, acts)?;
        let full = (1u64 << k) - 1;
        let mine = rk.choose(full);
        let engine_mask = engine
            .iter()
            .map(|a| acts.iter().position(|b| b.same_payoff(a)).expect("chosen from menu"))
            .fold(0u64, |acc, i| acc | 1 << i);
        if mine != engine_mask {
            violate(
                &mut r,
                "nonemptiness",
                Witness::new("nonemptiness", "ranked choice disagrees with the engine")
                    .with("E", event_name(space, e)),
            );
        }
        for &s in &subs {
            let c = rk.choose(s);
            if c == 0 || c & !s != 0 {
                violate(
                    &mut r,
                    "nonemptiness",
                    Witness::new("nonemptiness", "choice is empty or leaves the sub-menu")
                        .with("E", event_name(space, e))
                        .with("sub_menu", mask_labels(acts, s)),
                );
            }
        }
    }

    // Conditional preference.
    for &e in algebra {
        let rk = &ranked[&e];
        for i in 0..k {
            for j in i + 1..k {
                if !acts[i].agrees_on(&acts[j], e) {
                    continue;
                }
                let pair = 1u64 << i | 1u64 << j;
                for &s in subs.iter().filter(|&&s| s & pair == pair) {
                    let c = rk.choose(s);
                    if (c >> i & 1) != (c >> j & 1) {
                        violate(
                            &mut r,
                            "conditional-preference",
                            Witness::new(
                                "conditional-preference",
                                format!("`{}` and `{}` agree on E but only one is chosen", acts[i].label(), acts[j].label()),
                            )
                            .with("E", event_name(space, e))
                            .with("sub_menu", mask_labels(acts, s))
                            .with("f", acts[i].label())
                            .with("g", acts[j].label()),
                        );
                        break;
                    }
                }
            }
        }
    }

    // Sen's α.
    let full_sen = k <= FULL_SEN_LIMIT;
    if !full_sen {
        r.note("Sen's α checked against immediate sub-menus only");
    }
    for &e in algebra {
        let rk = &ranked[&e];
        for &s in &subs {
            let c = rk.choose(s);
            let smaller: Vec<u64> = if full_sen {
                let mut v = Vec::new();
                let mut sub = (s - 1) & s;
                while sub != 0 {
                    v.push(sub);
                    sub = (sub - 1) & s;
                }
                v
            } else {
                bits(s).map(|i| s & !(1 << i)).filter(|&m| m != 0).collect()
            };
            for sub in smaller {
                let kept = c & sub;
                if kept & !rk.choose(sub) != 0 {
                    let f = bits(kept & !rk.choose(sub)).next().expect("nonempty");
                    violate(
                        &mut r,
                        "sens-alpha",
                        Witness::new("sens-alpha", format!("`{}` is dropped from a smaller sub-menu", acts[f].label()))
                            .with("E", event_name(space, e))
                            .with("larger", mask_labels(acts, s))
                            .with("smaller", mask_labels(acts, sub))
                            .with("f", acts[f].label()),
                    );
                }
            }
        }
    }

    // DC-M. Splits with an empty cell are vacuous: nothing is excluded on a
    // null cell, so both clauses reduce to tautologies.
    let mut checked = 0u64;
    for (inside, fvt) in splits(algebra, n, true) {
        let outside = inside.complement(n).intersect(fvt);
        checked += 1;
        let (ri, ro, rf) = (&ranked[&inside], &ranked[&outside], &ranked[&fvt]);
        // Largest sub-menus first, so witnesses favor the full menu.
        if let Some(v) = dcm_violation(ri, ro, rf, subs.iter().rev().copied()) {
            let mut w = Witness::new(
                "dc-m",
                match (v.clause1, v.g) {
                    (true, _) => format!("`{}` is chosen on both cells but not on F", acts[v.f].label()),
                    (false, Some(g)) => format!("`{}` is rejected on E∩F but chosen on F", acts[g].label()),
                    (false, None) => unreachable!("a violation breaks a clause"),
                },
            )
            .with("E_cap_F", event_name(space, inside))
            .with("Ec_cap_F", event_name(space, outside))
            .with("F", event_name(space, fvt))
            .with("sub_menu", mask_labels(acts, v.subset))
            .with("f", acts[v.f].label())
            .with(
                "clause",
                match (v.clause1, v.g.is_some()) {
                    (true, true) => "1+2",
                    (true, false) => "1",
                    _ => "2",
                },
            )
            .with("value_f_E_cap_F", q(&ri.values[v.f]))
            .with("value_f_Ec_cap_F", q(&ro.values[v.f]))
            .with("value_f_F", q(&rf.values[v.f]));
            if let Some(g) = v.g {
                w = w
                    .with("g", acts[g].label())
                    .with("value_g_E_cap_F", q(&ri.values[g]))
                    .with("value_g_F", q(&rf.values[g]));
            }
            violate(&mut r, "dc-m", w);
        }
    }
    r.count("splits", checked);
    Ok(r)
}
