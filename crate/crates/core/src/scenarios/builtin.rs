use std::collections::BTreeMap;

use super::{Expectation, Origin, Query, Scenario, Shape};
use crate::belief::{ProbMeasure, StateSpace, UpdateRule, WeightedBeliefSet, WeightedMeasure};
use crate::consistency::ChoiceContext;
use crate::error::{Error, Result};
use crate::rational::{frac, int, Q};
use crate::regret::{Act, Menu};
use crate::tree::MenuPolicy;

pub const BUILTIN_NAMES: [&str; 6] = [
    "procrastination",
    "exam-table1",
    "exam-table1-normalized",
    "lost-cause",
    "lost-cause-right",
    "p4c-counterexample",
];

pub fn builtin(name: &str) -> Result<Scenario> {
    match name {
        "procrastination" => procrastination_with(10, 10, 25, 15),
        "exam-table1" => exam_table1(false),
        "exam-table1-normalized" => exam_table1(true),
        "lost-cause" => lost_cause(false),
        "lost-cause-right" => lost_cause(true),
        "p4c-counterexample" => p4c(),
        _ => Err(Error::UnknownScenario(name.to_string())),
    }
}

fn aliases(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn choice(context: &str, at: &str, plans: &[&str], origin: Origin, note: &str) -> Expectation {
    Expectation::new(
        Query::Choice {
            context: context.into(),
            at: at.into(),
            plans: plans.iter().map(|p| p.to_string()).collect(),
        },
        origin,
        note,
    )
}

fn value(context: &str, at: &str, plan: &str, v: Q, origin: Origin, note: &str) -> Expectation {
    Expectation::new(
        Query::Value {
            context: context.into(),
            at: at.into(),
            plan: plan.into(),
            value: v,
        },
        origin,
        note,
    )
}

fn reversal(context: &str, passes: bool, origin: Origin, note: &str) -> Expectation {
    Expectation::new(
        Query::Reversal {
            context: context.into(),
            passes,
        },
        origin,
        note,
    )
}

/// The two-day exam problem with play utilities `p1`, `p2`, the bonus `g1`
/// for studying when the exam is hard and the penalty `g2` for never studying
/// when it is hard. States are `(hard, easy)`; choices use minimax regret.
pub fn procrastination_with(p1: i64, p2: i64, g1: i64, g2: i64) -> Result<Scenario> {
    if !(p1 > 0 && p2 > 0 && g2 > 0 && 2 * p1 + p2 > g1 && g1 > p1 + p2 && g2 > p2) {
        return Err(Error::Config(format!(
            "procrastination parameters ({p1}, {p2}, {g1}, {g2}) violate 2p1+p2 > g1 > p1+p2 or g2 > p2"
        )));
    }
    let space = StateSpace::new(["hard", "easy"])?;
    let mut shape = Shape::new();
    shape.leaf(Shape::ROOT, "study", vec![int(g1), int(0)]);
    let play = shape.inner(Shape::ROOT, "play");
    shape.leaf(play, "study", vec![int(p1), int(p1)]);
    shape.leaf(play, "play", vec![int(p1 + p2 - g2), int(p1 + p2)]);
    let full = space.full();
    let tree = shape.build(space, |u| {
        let name = if u == Shape::ROOT { "day1" } else { "day2" };
        vec![(name.to_string(), full)]
    })?;
    let contexts = vec![
        ("constant".to_string(), ChoiceContext::minimax(MenuPolicy::ConstantInitial)),
        ("feasible".to_string(), ChoiceContext::minimax(MenuPolicy::FeasibleOnly)),
    ];
    let day2_play = g2 < 2 * p2;
    let day2_choice: &[&str] = if day2_play { &["play-play"] } else if g2 == 2 * p2 { &["play-study", "play-play"] } else { &["play-study"] };
    let expected = vec![
        value("constant", "root", "study-study", int(p1 + p2), Origin::Reported, "worst case: easy exam"),
        value("constant", "root", "play-study", int(g1 - p1), Origin::Reported, "worst case: hard exam"),
        value("constant", "root", "play-play", int(g1 - p1 - p2 + g2), Origin::BruteForce, ""),
        choice("constant", "root", &["play-study"], Origin::Reported, "she plays on the first day"),
        value("feasible", "play", "play-study", int(p2), Origin::Reported, "forgone plan ignored"),
        value("feasible", "play", "play-play", int(g2 - p2), Origin::Reported, ""),
        choice("feasible", "play", day2_choice, Origin::Reported, "plays again iff g2 < 2 p2"),
        value("constant", "play", "play-study", int(g1 - p1), Origin::BruteForce, "forgone plan kept"),
        value("constant", "play", "play-play", int(g1 - p1 - p2 + g2), Origin::BruteForce, ""),
        choice("constant", "play", &["play-study"], Origin::BruteForce, ""),
        reversal("feasible", !day2_play, Origin::BruteForce, ""),
        reversal("constant", true, Origin::BruteForce, "no learning, constant menu"),
    ];
    Ok(Scenario {
        name: "procrastination".into(),
        tree,
        beliefs: None,
        contexts,
        expected,
        aliases: aliases(&[("root", "hard"), ("play", "hard/play")]),
    })
}

/// The table's measures over (hard-short, hard-long, easy-short, easy-long).
/// The literal reading keeps the second row as printed (total 0.6); the
/// normalized one rescales it to a probability.
pub fn table1_beliefs(normalized: bool) -> Result<WeightedBeliefSet> {
    let pr1 = ProbMeasure::new(vec![int(1), int(0), int(0), int(0)])?;
    let pr2 = if normalized {
        ProbMeasure::new(vec![int(0), frac(1, 3), frac(1, 3), frac(1, 3)])?
    } else {
        ProbMeasure::deficient(vec![int(0), frac(1, 5), frac(1, 5), frac(1, 5)])?
    };
    WeightedBeliefSet::new(vec![
        WeightedMeasure::new(pr1, int(1))?,
        WeightedMeasure::new(pr2, frac(3, 5))?,
    ])
}

fn exam_table1(normalized: bool) -> Result<Scenario> {
    let space = StateSpace::new(["hard-short", "hard-long", "easy-short", "easy-long"])?
        .with_event("hard", &["hard-short", "hard-long"])?
        .with_event("easy", &["easy-short", "easy-long"])?;
    let hard = space.named_event("hard").expect("declared");
    let easy = space.named_event("easy").expect("declared");
    let mut shape = Shape::new();
    let play = shape.inner(Shape::ROOT, "play");
    shape.leaf(Shape::ROOT, "study", vec![int(0); 4]);
    shape.leaf(play, "study", vec![int(1), int(0), int(5), int(0)]);
    shape.leaf(play, "play", vec![int(0), int(3), int(0), int(3)]);
    let full = space.full();
    let tree = shape.build(space, |u| {
        if u == Shape::ROOT {
            vec![("day1".to_string(), full)]
        } else {
            vec![("hard".to_string(), hard), ("easy".to_string(), easy)]
        }
    })?;
    let beliefs = table1_beliefs(normalized)?;
    let ctx = |update| ChoiceContext::mwer(beliefs.clone(), update, MenuPolicy::ConstantInitial);
    let contexts = vec![
        ("prior".to_string(), ctx(UpdateRule::PriorByPrior)),
        ("likelihood".to_string(), ctx(UpdateRule::Likelihood)),
    ];
    // Plans are day1-hard-easy; play-study-study and play-play-play are the
    // table's two rows.
    let expected = if normalized {
        vec![
            value("prior", "root", "play-study-study", frac(6, 5), Origin::BruteForce, ""),
            value("prior", "root", "play-play-play", int(1), Origin::BruteForce, ""),
            choice("prior", "root", &["play-play-study", "play-play-play"], Origin::BruteForce, "diverges from the narrative"),
            choice("prior", "hard", &["play-play-study", "play-play-play"], Origin::BruteForce, ""),
            choice("prior", "easy", &["play-study-study", "play-play-study"], Origin::BruteForce, ""),
            reversal("prior", false, Origin::BruteForce, "play-play-play is dropped at the easy history"),
        ]
    } else {
        vec![
            value("prior", "root", "play-study-study", frac(18, 25), Origin::BruteForce, "0.72"),
            value("prior", "root", "play-play-play", int(1), Origin::BruteForce, ""),
            choice("prior", "root", &["play-study-study"], Origin::Reported, "ex ante, play then study"),
            value("prior", "hard", "play-study-study", frac(9, 5), Origin::BruteForce, "1.8"),
            value("prior", "hard", "play-play-play", int(1), Origin::BruteForce, ""),
            choice("prior", "hard", &["play-play-study", "play-play-play"], Origin::Reported, "plays on once the exam is known hard"),
            choice("prior", "easy", &["play-study-study", "play-play-study"], Origin::BruteForce, "no reversal on the easy branch"),
            reversal("prior", false, Origin::Reported, "reversal at the hard history"),
        ]
    };
    Ok(Scenario {
        name: if normalized { "exam-table1-normalized" } else { "exam-table1" }.into(),
        tree,
        beliefs: Some(beliefs),
        contexts,
        expected,
        aliases: aliases(&[("root", "hard-short"), ("hard", "hard-short/play"), ("easy", "easy-short/play")]),
    })
}

/// Utilities for the pair of trees that differ only in the payoff of moving
/// `R` first: `L` then `L`/`R` pays `ll`/`lr`, `R` pays `left_r` in one tree
/// and `right_r` in the other. States are `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LostCause {
    pub ll: [i64; 2],
    pub lr: [i64; 2],
    pub left_r: [i64; 2],
    pub right_r: [i64; 2],
}

/// Minimax regret over the menu `{ll, lr, r}`: indices of the minimizers.
fn minimax_argmin(acts: &[[i64; 2]]) -> Vec<usize> {
    let best = [0, 1].map(|s| acts.iter().map(|a| a[s]).max().expect("nonempty"));
    let regret: Vec<i64> = acts.iter().map(|a| (best[0] - a[0]).max(best[1] - a[1])).collect();
    let min = *regret.iter().min().expect("nonempty");
    (0..acts.len()).filter(|&i| regret[i] == min).collect()
}

/// Exhaustive search over `0..=grid` for utilities making `LR` the unique ex
/// ante choice in the left tree and `LL` in the right one, while the choice
/// after `L` among `{LL, LR}` alone is a single plan.
pub fn lost_cause_search(grid: i64) -> Option<LostCause> {
    let cells: Vec<[i64; 2]> = (0..=grid).flat_map(|x| (0..=grid).map(move |y| [x, y])).collect();
    for &ll in &cells {
        for &lr in &cells {
            if ll == lr || minimax_argmin(&[ll, lr]).len() != 1 {
                continue;
            }
            let pick = |target: usize| {
                cells
                    .iter()
                    .copied()
                    .find(|&r| r != ll && r != lr && minimax_argmin(&[ll, lr, r]) == [target])
            };
            if let (Some(left_r), Some(right_r)) = (pick(1), pick(0)) {
                return Some(LostCause { ll, lr, left_r, right_r });
            }
        }
    }
    None
}

const LOST_CAUSE_GRID: i64 = 6;

fn lost_cause(right: bool) -> Result<Scenario> {
    let lc = lost_cause_search(LOST_CAUSE_GRID)
        .ok_or_else(|| Error::Config("no lost-cause utilities on the search grid".into()))?;
    let space = StateSpace::new(["a", "b"])?;
    let q2 = |v: [i64; 2]| vec![int(v[0]), int(v[1])];
    let mut shape = Shape::new();
    let l = shape.inner(Shape::ROOT, "L");
    shape.leaf(Shape::ROOT, "R", q2(if right { lc.right_r } else { lc.left_r }));
    shape.leaf(l, "L", q2(lc.ll));
    shape.leaf(l, "R", q2(lc.lr));
    let full = space.full();
    let tree = shape.build(space, |u| {
        let name = if u == Shape::ROOT { "first" } else { "second" };
        vec![(name.to_string(), full)]
    })?;
    let contexts = vec![
        ("constant".to_string(), ChoiceContext::minimax(MenuPolicy::ConstantInitial)),
        ("feasible".to_string(), ChoiceContext::minimax(MenuPolicy::FeasibleOnly)),
    ];
    let after_l = if minimax_argmin(&[lc.ll, lc.lr]) == [0] { "L-L" } else { "L-R" };
    let ex_ante = if right { "L-L" } else { "L-R" };
    let expected = vec![
        choice("constant", "root", &[ex_ante], Origin::BruteForce, "ex ante optimum"),
        choice("feasible", "after-L", &[after_l], Origin::BruteForce, "same subtree in both trees"),
        reversal("feasible", after_l == ex_ante, Origin::BruteForce, "one of the two trees reverses"),
        reversal("constant", true, Origin::BruteForce, "forgone opportunities kept"),
    ];
    Ok(Scenario {
        name: if right { "lost-cause-right" } else { "lost-cause" }.into(),
        tree,
        beliefs: None,
        contexts,
        expected,
        aliases: aliases(&[("root", "a"), ("after-L", "a/L")]),
    })
}

fn p4c() -> Result<Scenario> {
    let space = StateSpace::new(["s1", "s2", "s3"])?;
    let g = [20, 23, 5];
    let const_act = |x: i64| [x, x, x];
    // (w* A x*) T g: w on s1, x on s2, g on s3.
    let mix = |w: i64, x: i64| [w, x, g[2]];
    let acts: [(&str, [i64; 3], Q, Origin); 8] = [
        ("o10*Tg", mix(10, 10), int(15), Origin::Reported),
        ("o7*Tg", mix(7, 7), frac(61, 4), Origin::Reported),
        ("o20*Tg", mix(20, 20), int(15), Origin::Reported),
        ("o1*Tg", mix(1, 1), frac(85, 4), Origin::Reported),
        ("(o10*Ao7*)Tg", mix(10, 7), int(15), Origin::Reported),
        ("(o10*Bo1*)Tg", mix(1, 10), int(16), Origin::BruteForce),
        ("(o20*Ao1*)Tg", mix(20, 1), frac(33, 2), Origin::Reported),
        ("(o20*Bo1*)Tg", mix(1, 20), int(16), Origin::Reported),
    ];
    let mut shape = Shape::new();
    for (name, v, _, _) in &acts {
        shape.leaf(Shape::ROOT, name, v.iter().map(|&x| int(x)).collect());
    }
    let full = space.full();
    let tree = shape.build(space.clone(), |_| vec![("root".to_string(), full)])?;
    let to_act = |label: &str, v: [i64; 3]| Act::new(label, v.iter().map(|&x| int(x)).collect());
    let menu = Menu::new([
        to_act("o1*", const_act(1)),
        to_act("o7*", const_act(7)),
        to_act("o10*", const_act(10)),
        to_act("o20*", const_act(20)),
        to_act("g", g),
    ])?;
    let policy = MenuPolicy::Explicit(space.states().iter().map(|s| (s.clone(), menu.clone())).collect());
    let measures = vec![
        ProbMeasure::new(vec![frac(1, 4), frac(3, 4), int(0)])?,
        ProbMeasure::new(vec![int(0), int(0), int(1)])?,
        ProbMeasure::new(vec![frac(1, 4), int(0), frac(3, 4)])?,
    ];
    let beliefs = WeightedBeliefSet::unweighted(measures)?;
    let ctx = ChoiceContext::new(crate::regret::DecisionRule::Mer, Some(beliefs.clone()), UpdateRule::PriorByPrior, policy)?;
    let mut expected: Vec<Expectation> = acts
        .iter()
        .map(|(name, _, v, origin)| {
            let note = if *origin == Origin::BruteForce { "printed as 15" } else { "" };
            value("mer", "root", name, v.clone(), *origin, note)
        })
        .collect();
    expected.push(choice(
        "mer",
        "root",
        &["o10*Tg", "o20*Tg", "(o10*Ao7*)Tg"],
        Origin::BruteForce,
        "minimum regret 15",
    ));
    Ok(Scenario {
        name: "p4c-counterexample".into(),
        tree,
        beliefs: Some(beliefs),
        contexts: vec![("mer".to_string(), ctx)],
        expected,
        aliases: aliases(&[("root", "s1")]),
    })
}

