use super::{event_name, ChoiceContext};
use crate::caps::Caps;
use crate::error::Result;
use crate::rational::Q;
use crate::report::{CheckReport, Witness};
use crate::tree::{DecisionTree, NodeId, PlanTable};

/// Plans chosen at `node`: feasible plans minimizing the context's criterion
/// against the policy's menu, with the minimal value.
pub(crate) fn chosen_plans(
    t: &DecisionTree,
    table: &PlanTable,
    ctx: &ChoiceContext,
    node: NodeId,
) -> Result<(Vec<usize>, Q)> {
    let menu = t.menu_at(node, &ctx.menu_policy, table)?;
    let crit = ctx.criterion(t.possible_states(node))?;
    let mut act_value: Vec<Option<Q>> = vec![None; table.acts.len()];
    let mut best: Option<Q> = None;
    let mut scored = Vec::new();
    for (i, p) in table.plans.iter().enumerate() {
        if !t.is_feasible(p, node) {
            continue;
        }
        let a = table.act_of_plan[i];
        if act_value[a].is_none() {
            act_value[a] = Some(crit.value(&menu, &table.acts[a])?);
        }
        let v = act_value[a].clone().expect("just set");
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v.clone());
        }
        scored.push((i, v));
    }
    let best = best.expect("every history has a feasible plan");
    let chosen = scored.into_iter().filter(|(_, v)| *v == best).map(|(i, _)| i).collect();
    Ok((chosen, best))
}

fn labels(t: &DecisionTree, table: &PlanTable, plans: &[usize]) -> String {
    let names: Vec<String> = plans.iter().map(|&i| t.plan_label(&table.plans[i])).collect();
    format!("{{{}}}", names.join(", "))
}

/// A plan chosen at `h` that is still feasible at a later decision history
/// `h'` must be chosen there too.
pub fn check_no_reversal(t: &DecisionTree, ctx: &ChoiceContext, caps: &Caps) -> Result<CheckReport> {
    let table = t.plan_table(caps)?;
    let mut r = CheckReport::new("reversal");
    r.note(ctx.describe());
    let decision = t.decision_nodes();
    let mut chosen: Vec<Option<(Vec<usize>, Q)>> = vec![None; t.nodes().len()];
    for &h in &decision {
        chosen[h] = Some(chosen_plans(t, &table, ctx, h)?);
    }
    let mut pairs = 0u64;
    for &h in &decision {
        let (ch, vh) = chosen[h].as_ref().expect("computed above");
        for h2 in t.descendants(h) {
            let Some((ch2, vh2)) = chosen[h2].as_ref() else {
                continue;
            };
            pairs += 1;
            for &f in ch {
                if !t.is_feasible(&table.plans[f], h2) || ch2.contains(&f) {
                    continue;
                }
                let menu2 = t.menu_at(h2, &ctx.menu_policy, &table)?;
                let crit2 = ctx.criterion(t.possible_states(h2))?;
                let vf2 = crit2.value(&menu2, table.act(f))?;
                r.fail(
                    Witness::new(
                        "reversal",
                        format!(
                            "`{}` is chosen at `{}` but not at `{}`",
                            t.plan_label(&table.plans[f]),
                            t.history_string(h),
                            t.history_string(h2)
                        ),
                    )
                    .with("h", t.history_string(h))
                    .with("h_prime", t.history_string(h2))
                    .with("plan", t.plan_label(&table.plans[f]))
                    .with("E(h)", event_name(Some(t.space()), t.possible_states(h)))
                    .with("E(h_prime)", event_name(Some(t.space()), t.possible_states(h2)))
                    .with("choice_at_h", labels(t, &table, ch))
                    .with("choice_at_h_prime", labels(t, &table, ch2))
                    .with("value_at_h", super::q(vh))
                    .with("plan_value_at_h_prime", super::q(&vf2))
                    .with("best_value_at_h_prime", super::q(vh2)),
                );
            }
        }
    }
    r.count("histories", decision.len() as u64);
    r.count("history_pairs", pairs);
    r.count("plans", table.plans.len() as u64);
    Ok(r)
}

/// The choice at one history, in plan and act form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceAt {
    /// Labels of the chosen plans, in plan order.
    pub plans: Vec<String>,
    /// Distinct acts of the chosen plans.
    pub acts: Vec<crate::regret::Act>,
    pub value: Q,
}

pub fn choice_at(t: &DecisionTree, ctx: &ChoiceContext, node: NodeId, caps: &Caps) -> Result<ChoiceAt> {
    let table = t.plan_table(caps)?;
    choice_at_with(t, &table, ctx, node)
}

pub fn choice_at_with(t: &DecisionTree, table: &PlanTable, ctx: &ChoiceContext, node: NodeId) -> Result<ChoiceAt> {
    let (plans, value) = chosen_plans(t, table, ctx, node)?;
    let mut acts: Vec<crate::regret::Act> = Vec::new();
    for &p in &plans {
        let a = &table.acts[table.act_of_plan[p]];
        if !acts.iter().any(|b| b.same_payoff(a)) {
            acts.push(t.plan_to_act(&table.plans[p]));
        }
    }
    Ok(ChoiceAt {
        plans: plans.iter().map(|&p| t.plan_label(&table.plans[p])).collect(),
        acts,
        value,
    })
}

/// The criterion value of `plan` at `node`.
pub fn plan_value(t: &DecisionTree, table: &PlanTable, ctx: &ChoiceContext, node: NodeId, plan: &crate::tree::Plan) -> Result<Q> {
    let menu = t.menu_at(node, &ctx.menu_policy, table)?;
    ctx.criterion(t.possible_states(node))?.value(&menu, &t.plan_to_act(plan))
}
