use num_traits::{One, Zero};

use super::axioms::{dcm_violation, mask_labels, Ranked};
use super::{check_axioms_on_menu, check_sep_all, event_name, q, splits, ChoiceContext};
use crate::belief::{generated_algebra, Event, UpdateRule, WeightedBeliefSet};
use crate::caps::Caps;
use crate::error::Result;
use crate::rational::Q;
use crate::regret::{self, Act, Menu};
use crate::report::{CheckReport, Witness};
use crate::tree::MenuPolicy;

/// A belief set with an initial menu, checked over the power-set algebra.
#[derive(Clone, Debug)]
pub struct SepInstance {
    pub label: String,
    pub beliefs: WeightedBeliefSet,
    pub menu: Menu,
}

fn power_set(n: usize, caps: &Caps) -> Result<Vec<Event>> {
    let singletons: Vec<Event> = (0..n).map(Event::singleton).collect();
    generated_algebra(n, &singletons, caps.sigma_events)
}

/// Acts built from `f`'s cell regrets `r_in`, `r_out`: the menu's best payoff
/// lowered by a constant on each cell of the split.
fn constructed(best: &[Q], inside: Event, outside: Event, r_in: &Q, r_out: &Q, tag: &str) -> Act {
    let payoff = best
        .iter()
        .enumerate()
        .map(|(s, b)| {
            if inside.contains(s) {
                b - r_in
            } else if outside.contains(s) {
                b - r_out
            } else {
                b.clone()
            }
        })
        .collect();
    Act::new(tag, payoff)
}

/// Probes DC-M on menus extended by acts built from each act's cell regrets,
/// following the two-stage constructions used to derive separability from the
/// axioms. Returns the first violation found.
pub fn dcm_probe(
    bel: &WeightedBeliefSet,
    menu: &Menu,
    inside: Event,
    fvt: Event,
    rule: UpdateRule,
) -> Result<Option<Witness>> {
    let n = bel.dim();
    let outside = inside.complement(n).intersect(fvt);
    let sets = [bel.update(inside, rule), bel.update(outside, rule), bel.update(fvt, rule)];
    let best = menu.best();
    let w_in = sets[0].max_weight().unwrap_or_else(Q::one);
    let w_out = sets[1].max_weight().unwrap_or_else(Q::one);
    for f in menu.acts() {
        let r_in = regret::mwer(menu, f, &sets[0])?;
        let r_out = regret::mwer(menu, f, &sets[1])?;
        let mut probes = vec![
            constructed(&best, inside, outside, &r_in, &r_out, "a_f'"),
            constructed(&best, inside, outside, &Q::zero(), &r_out, "a_g'"),
        ];
        if !w_in.is_zero() && !w_out.is_zero() && (!w_in.is_one() || !w_out.is_one()) {
            probes.push(constructed(&best, inside, outside, &(&r_in / &w_in), &(&r_out / &w_out), "a_f'/w"));
        }
        for a in probes {
            if menu.acts().iter().any(|b| b.same_payoff(&a)) {
                continue;
            }
            let extended = Menu::new(menu.acts().iter().cloned().chain([a.clone()]))?;
            let acts = extended.acts();
            let idx = acts.iter().position(|b| b.same_payoff(&a)).expect("just added");
            let ranked = sets
                .iter()
                .map(|b| {
                    acts.iter()
                        .map(|g| regret::mwer(&extended, g, b))
                        .collect::<Result<Vec<_>>>()
                        .map(Ranked::new)
                })
                .collect::<Result<Vec<_>>>()?;
            let full = (1u64 << acts.len()) - 1;
            let subsets = (1..=full).filter(|s| s >> idx & 1 == 1);
            if let Some(v) = dcm_violation(&ranked[0], &ranked[1], &ranked[2], subsets) {
                let mut w = Witness::new("dc-m-probe", format!("DC-M fails once `{}` is offered", a.label()))
                    .with("E_cap_F", event_name(None, inside))
                    .with("F", event_name(None, fvt))
                    .with("source_act", f.label())
                    .with("probe_payoff", format!("{:?}", a.payoff().iter().map(q).collect::<Vec<_>>()))
                    .with("sub_menu", mask_labels(acts, v.subset))
                    .with("f", acts[v.f].label());
                if let Some(g) = v.g {
                    w = w.with("g", acts[g].label());
                }
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// For each instance, compares the axiom verdict (the four menu axioms on the menu's
/// sub-menus, plus DC-M on the constructed extensions) with the separability
/// verdict (every act, every split). Any disagreement is reported.
pub fn cross_validate_thm2(instances: &[SepInstance], rule: UpdateRule, caps: &Caps) -> Result<CheckReport> {
    let mut r = CheckReport::new("thm2");
    r.note(format!("update={}", rule.name()));
    for inst in instances {
        let n = inst.beliefs.dim();
        let algebra = power_set(n, caps)?;
        let ctx = ChoiceContext::mwer(inst.beliefs.clone(), rule, MenuPolicy::ConstantInitial);
        let axioms = check_axioms_on_menu(None, &inst.menu, &algebra, &ctx, caps)?;
        let mut probe = None;
        if axioms.passed() {
            for (inside, fvt) in splits(&algebra, n, true) {
                if let Some(w) = dcm_probe(&inst.beliefs, &inst.menu, inside, fvt, rule)? {
                    probe = Some(w);
                    break;
                }
            }
        }
        let axiom_ok = axioms.passed() && probe.is_none();
        let sep = check_sep_all(None, &inst.beliefs, &inst.menu, &algebra, rule)?;
        r.count("instances", 1);
        match (axiom_ok, sep.passed()) {
            (true, true) => r.count("both_pass", 1),
            (false, false) => r.count("both_fail", 1),
            _ => {
                let first = |rep: &CheckReport| rep.witnesses.first().map(|w| w.message.clone()).unwrap_or_default();
                let axiom_detail = probe.map(|w| w.message).unwrap_or_else(|| first(&axioms));
                r.fail(
                    Witness::new("divergence", format!("`{}`: axiom and separability verdicts differ", inst.label))
                        .with("instance", inst.label.clone())
                        .with("axioms", if axiom_ok { "pass" } else { "fail" })
                        .with("sep", if sep.passed() { "pass" } else { "fail" })
                        .with("axiom_detail", axiom_detail)
                        .with("sep_detail", first(&sep)),
                );
            }
        }
    }
    Ok(r)
}
