//! Acceptance suite: one line per criterion, then a single assertion.
//!
//! Reference values that are not copied from the source text are recomputed
//! here with `Rational64` arithmetic over plain arrays, independently of the
//! engine's belief and regret code.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Rational64 as R;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regretlab::consistency::{
    check_axioms, check_no_reversal, check_rectangularity, check_sep_all, choice_at, cross_validate_thm2,
    plan_value, tree_algebra, AxiomSummary,
};
use regretlab::rational::{frac, int};
use regretlab::scenarios::{builtin, generate, procrastination_with, table1_beliefs, GeneratorConfig};
use regretlab::{Caps, Event, UpdateRule, WeightedBeliefSet, Q};

type Check = Result<String, String>;
/// Name, body and time budget in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn to_q(r: R) -> Q {
    frac(*r.numer(), *r.denom())
}

/// Maximum expected regret over plain measures: regret is the menu's best
/// payoff minus the act's payoff, state by state.
fn oracle_mer(menu: &[[i64; 3]], act: [i64; 3], measures: &[[R; 3]]) -> R {
    let best: Vec<i64> = (0..3).map(|s| menu.iter().map(|a| a[s]).max().unwrap()).collect();
    measures
        .iter()
        .map(|p| (0..3).map(|s| p[s] * R::from(best[s] - act[s])).sum::<R>())
        .max()
        .unwrap()
}

fn criterion_1() -> Check {
    let s = builtin("p4c-counterexample").map_err(|e| e.to_string())?;
    let ctx = s.default_context();
    let table = s.tree.plan_table(&Caps::default()).map_err(|e| e.to_string())?;
    let root = s.node("root").map_err(|e| e.to_string())?;
    let value = |label: &str| -> Result<Q, String> {
        let plan = s.tree.parse_plan(label).map_err(|e| e.to_string())?;
        plan_value(&s.tree, &table, ctx, root, &plan).map_err(|e| e.to_string())
    };
    let reported = [
        ("o10*Tg", frac(15, 1)),
        ("o7*Tg", frac(61, 4)),
        ("o20*Tg", frac(15, 1)),
        ("o1*Tg", frac(85, 4)),
        ("(o10*Ao7*)Tg", frac(15, 1)),
        ("(o20*Ao1*)Tg", frac(33, 2)),
        ("(o20*Bo1*)Tg", frac(16, 1)),
    ];
    for (label, want) in &reported {
        let got = value(label)?;
        ensure(&got == want, || format!("{label}: {got} != {want}"))?;
    }
    let menu = [[1, 1, 1], [7, 7, 7], [10, 10, 10], [20, 20, 20], [20, 23, 5]];
    let measures = [
        [R::new(1, 4), R::new(3, 4), R::from(0)],
        [R::from(0), R::from(0), R::from(1)],
        [R::new(1, 4), R::from(0), R::new(3, 4)],
    ];
    let oracle = oracle_mer(&menu, [1, 10, 5], &measures);
    ensure(oracle == R::from(16), || format!("oracle gives {oracle}"))?;
    let got = value("(o10*Bo1*)Tg")?;
    ensure(got == to_q(oracle), || format!("(o10*Bo1*)Tg: {got} != {oracle}"))?;
    Ok("7 reported values exact; (o10*Bo1*)Tg = 16 by brute force (printed as 15)".into())
}

fn criterion_2() -> Check {
    let caps = Caps::default();
    let s = builtin("procrastination").map_err(|e| e.to_string())?;
    let table = s.tree.plan_table(&caps).map_err(|e| e.to_string())?;
    let v = |ctx: &str, at: &str, plan: &str| -> Result<Q, String> {
        let p = s.tree.parse_plan(plan).map_err(|e| e.to_string())?;
        plan_value(&s.tree, &table, s.context(ctx).unwrap(), s.node(at).unwrap(), &p).map_err(|e| e.to_string())
    };
    let cases = [
        ("constant", "root", "study-study", 20),
        ("constant", "root", "play-study", 15),
        ("constant", "root", "play-play", 20),
        ("feasible", "play", "play-study", 10),
        ("feasible", "play", "play-play", 5),
        ("constant", "play", "play-study", 15),
        ("constant", "play", "play-play", 20),
    ];
    for (ctx, at, plan, want) in cases {
        let got = v(ctx, at, plan)?;
        ensure(got == int(want), || format!("{ctx} {at} {plan}: {got} != {want}"))?;
    }
    let feasible = check_no_reversal(&s.tree, s.context("feasible").unwrap(), &caps).map_err(|e| e.to_string())?;
    let constant = check_no_reversal(&s.tree, s.context("constant").unwrap(), &caps).map_err(|e| e.to_string())?;
    ensure(!feasible.passed() && constant.passed(), || "reversal verdicts".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut plays, mut studies) = (0, 0);
    for _ in 0..100 {
        let p1 = rng.gen_range(2..=20);
        let p2 = rng.gen_range(2..=20);
        let g1 = rng.gen_range(p1 + p2 + 1..2 * p1 + p2);
        let g2 = rng.gen_range(p2 + 1..=3 * p2);
        let sc = procrastination_with(p1, p2, g1, g2).map_err(|e| e.to_string())?;
        let c = choice_at(&sc.tree, sc.context("feasible").unwrap(), sc.node("play").unwrap(), &caps)
            .map_err(|e| e.to_string())?;
        let plays_again = c.plans == ["play-play"];
        ensure(plays_again == (g2 < 2 * p2), || format!("({p1},{p2},{g1},{g2}): {:?}", c.plans))?;
        if plays_again {
            plays += 1;
        } else {
            studies += 1;
        }
    }
    Ok(format!("regrets 20/15/20, 10/5 vs 15/20; fuzz 100/100 ({plays} play, {studies} not)"))
}

fn criterion_3() -> Check {
    let caps = Caps::default();
    let mut checked = 0;
    for seed in 0..200 {
        let cfg = GeneratorConfig {
            seed: 3_000 + seed,
            trivial_information: true,
            ..Default::default()
        };
        let s = generate(&cfg).map_err(|e| e.to_string())?;
        for update in UpdateRule::ALL {
            let ctx = s.context(&format!("mwer-{}-constant", update.name())).map_err(|e| e.to_string())?;
            let r = check_no_reversal(&s.tree, ctx, &caps).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("seed {}: {}", cfg.seed, r.render_text()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} tree/rule pairs, zero reversals"))
}

fn criterion_4() -> Check {
    let caps = Caps::default();
    for seed in 0..100 {
        let cfg = GeneratorConfig {
            seed: 4_000 + seed,
            singleton_beliefs: true,
            ..Default::default()
        };
        let s = generate(&cfg).map_err(|e| e.to_string())?;
        let bel = s.beliefs.clone().unwrap();
        let algebra = tree_algebra(&s.tree, &caps).map_err(|e| e.to_string())?;
        let menu = s.tree.plan_table(&caps).map_err(|e| e.to_string())?.menu();
        for update in UpdateRule::ALL {
            let sep = check_sep_all(Some(s.tree.space()), &bel, &menu, &algebra, update).map_err(|e| e.to_string())?;
            ensure(sep.passed(), || format!("seed {} sep: {}", cfg.seed, sep.render_text()))?;
            let ctx = s.context(&format!("mwer-{}-constant", update.name())).unwrap();
            let ax = check_axioms(&s.tree, ctx, &caps).map_err(|e| e.to_string())?;
            ensure(ax.passed(), || format!("seed {} axioms: {}", cfg.seed, ax.render_text()))?;
            let rev = check_no_reversal(&s.tree, ctx, &caps).map_err(|e| e.to_string())?;
            ensure(rev.passed(), || format!("seed {} reversal: {}", cfg.seed, rev.render_text()))?;
        }
    }
    Ok("100 problems: SEP, axioms and no-reversal pass under both rules".into())
}

fn thm2_batch() -> Result<Vec<regretlab::consistency::SepInstance>, String> {
    let caps = Caps::default();
    (0..100)
        .map(|seed| {
            let cfg = GeneratorConfig {
                seed: 5_000 + seed,
                states: (2, 4),
                depth: (1, 1),
                branching: (2, 4),
                measures: (1, 3),
                trivial_information: true,
                ..Default::default()
            };
            generate(&cfg)
                .and_then(|s| s.sep_instance(&caps))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn criterion_5() -> Check {
    let batch = thm2_batch()?;
    let mut lines = Vec::new();
    let mut ok = true;
    for update in UpdateRule::ALL {
        let r = cross_validate_thm2(&batch, update, &Caps::default()).map_err(|e| e.to_string())?;
        let agree = r.stats.get("both_pass").unwrap_or(&0) + r.stats.get("both_fail").unwrap_or(&0);
        let divergent: Vec<&str> = r.witnesses.iter().filter_map(|w| w.field("instance")).collect();
        lines.push(format!("{}: {agree}/100 agree{}", update.name(), if divergent.is_empty() { String::new() } else { format!(" (divergent: {})", divergent.join(", ")) }));
        ok &= agree == 100;
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

fn criterion_6() -> Check {
    let caps = Caps::default();
    let mut summary = Vec::new();
    for update in UpdateRule::ALL {
        let (mut found, mut tried) = (0, 0);
        let mut seed = 6_000;
        while found < 50 && tried < 2_000 {
            let cfg = GeneratorConfig {
                seed,
                singleton_beliefs: seed % 2 == 1,
                closed_under_conditioning: seed % 2 == 0,
                ..Default::default()
            };
            seed += 1;
            tried += 1;
            let s = generate(&cfg).map_err(|e| e.to_string())?;
            let bel = s.beliefs.clone().unwrap();
            let algebra = tree_algebra(&s.tree, &caps).map_err(|e| e.to_string())?;
            let rect = check_rectangularity(&bel, &algebra, update, &caps).map_err(|e| e.to_string())?;
            if !rect.passed() {
                continue;
            }
            found += 1;
            let ctx = s.context(&format!("mwer-{}-constant", update.name())).unwrap();
            let ax = check_axioms(&s.tree, ctx, &caps).map_err(|e| e.to_string())?;
            ensure(AxiomSummary::of(&ax).dc_m, || format!("seed {}: {}", cfg.seed, ax.render_text()))?;
        }
        ensure(found == 50, || format!("{}: only {found} rectangular instances in {tried}", update.name()))?;
        summary.push(format!("{}: 50/50 ({tried} generated)", update.name()));
    }
    Ok(summary.join("; "))
}

/// The exam belief table by direct enumeration: rows are the weighted vectors as printed.
fn table1_oracle() -> ([R; 2], [R; 2]) {
    let rows = [
        (R::from(1), [R::from(1), R::from(0), R::from(0), R::from(0)]),
        (R::new(3, 5), [R::from(0), R::new(1, 5), R::new(1, 5), R::new(1, 5)]),
    ];
    let acts = [[1, 0, 5, 0], [0, 3, 0, 3], [1, 0, 0, 3], [0, 3, 5, 0], [0, 0, 0, 0]];
    let best: Vec<i64> = (0..4).map(|s| acts.iter().map(|a| a[s]).max().unwrap()).collect();
    let regret = |a: usize, s: usize| R::from(best[s] - acts[a][s]);
    let ex_ante = |a: usize| {
        rows.iter()
            .map(|(w, p)| *w * (0..4).map(|s| p[s] * regret(a, s)).sum::<R>())
            .max()
            .unwrap()
    };
    // Conditioning on hard = states 0, 1; weights stay, masses renormalize.
    let hard = |a: usize| {
        rows.iter()
            .filter_map(|(w, p)| {
                let mass = p[0] + p[1];
                (mass != R::from(0)).then(|| *w * (0..2).map(|s| p[s] / mass * regret(a, s)).sum::<R>())
            })
            .max()
            .unwrap()
    };
    ([ex_ante(0), ex_ante(1)], [hard(0), hard(1)])
}

fn criterion_7() -> Check {
    let caps = Caps::default();
    let s = builtin("exam-table1").map_err(|e| e.to_string())?;
    let ctx = s.context("prior").unwrap();
    let table = s.tree.plan_table(&caps).map_err(|e| e.to_string())?;
    let (ante, hard) = table1_oracle();
    let v = |at: &str, plan: &str| {
        let p = s.tree.parse_plan(plan).unwrap();
        plan_value(&s.tree, &table, ctx, s.node(at).unwrap(), &p).map_err(|e| e.to_string())
    };
    let want = [
        ("root", "play-study-study", ante[0], R::new(18, 25)),
        ("root", "play-play-play", ante[1], R::from(1)),
        ("hard", "play-study-study", hard[0], R::new(9, 5)),
        ("hard", "play-play-play", hard[1], R::from(1)),
    ];
    for (at, plan, oracle, stated) in want {
        ensure(oracle == stated, || format!("oracle {at} {plan}: {oracle} != {stated}"))?;
        let got = v(at, plan)?;
        ensure(got == to_q(oracle), || format!("{at} {plan}: {got} != {oracle}"))?;
    }
    let c = choice_at(&s.tree, ctx, s.node("root").unwrap(), &caps).map_err(|e| e.to_string())?;
    ensure(c.plans == ["play-study-study"], || format!("ex ante choice {:?}", c.plans))?;
    let r = check_no_reversal(&s.tree, ctx, &caps).map_err(|e| e.to_string())?;
    let at_hard = r
        .witnesses
        .iter()
        .any(|w| w.field("h_prime").is_some_and(|h| h.ends_with("/play") && h.starts_with("hard")) && w.field("plan") == Some("play-study-study"));
    ensure(!r.passed() && at_hard, || r.render_text())?;
    Ok("ex ante {play-study-study}, 18/25 vs 1; at hard 9/5 vs 1; reversal detected".into())
}

fn criterion_8() -> Check {
    let bel = table1_beliefs(false).map_err(|e| e.to_string())?;
    let hard = Event::from_indices([0, 1]);
    let easy = Event::from_indices([2, 3]);
    let on_hard = bel.update(hard, UpdateRule::Likelihood);
    let weights: Vec<Q> = on_hard.members().iter().map(|m| m.weight.clone()).collect();
    ensure(weights == [int(1), frac(3, 25)], || format!("hard weights {weights:?}"))?;
    let on_easy = bel.update(easy, UpdateRule::Likelihood);
    ensure(on_easy.len() == 1 && on_easy.members()[0].weight == int(1), || "easy update".into())?;
    ensure(on_easy.members()[0].measure.mass()[0] == int(0), || "Pr1 kept on easy".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut nonempty = 0;
    for seed in 0..200 {
        let s = generate(&GeneratorConfig { seed: 8_000 + seed, ..Default::default() }).map_err(|e| e.to_string())?;
        let b: WeightedBeliefSet = s.beliefs.unwrap();
        let n = b.dim();
        let e = Event::from_bits(rng.gen_range(0..1u64 << n));
        let u = b.update(e, UpdateRule::Likelihood);
        if !u.is_empty() {
            nonempty += 1;
            ensure(u.max_weight() == Some(int(1)), || format!("seed {seed}: max weight {:?}", u.max_weight()))?;
        }
    }
    Ok(format!("weights (1, 3/25) and (-, 1); max weight 1 on {nonempty}/200 random nonempty updates"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 p4c golden vector", criterion_1, 1),
        ("2 example 1 reproduction", criterion_2, 5),
        ("3 no reversal without learning", criterion_3, 60),
        ("4 singleton beliefs", criterion_4, 60),
        ("5 axioms vs separability", criterion_5, 120),
        ("6 rectangularity implies DC-M", criterion_6, 120),
        ("7 table 1 scenario", criterion_7, 1),
        ("8 likelihood updating", criterion_8, 1),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit}s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("criterion {name}: {status} [{:.2}s] {detail}", elapsed.as_secs_f64());
        if status == "FAIL" {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
