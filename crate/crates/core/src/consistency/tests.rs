use super::*;
use crate::caps::Caps;
use crate::rational::int;
use crate::regret::{Act, Menu};
use crate::scenarios::builtin;

#[test]
fn example1_reversal_depends_on_menu_policy() {
    let s = builtin("procrastination").unwrap();
    let caps = Caps::default();
    let r = check_no_reversal(&s.tree, s.context("feasible").unwrap(), &caps).unwrap();
    assert!(!r.passed());
    let w = r
        .witnesses
        .iter()
        .find(|w| w.field("h") == Some("hard") && w.field("h_prime") == Some("hard/play"))
        .expect("witness at the day-2 history");
    assert_eq!(w.field("plan"), Some("play-study"));
    assert_eq!(w.field("choice_at_h_prime"), Some("{play-play}"));
    assert_eq!(w.field("plan_value_at_h_prime"), Some("10"));
    assert_eq!(w.field("best_value_at_h_prime"), Some("5"));
    assert!(check_no_reversal(&s.tree, s.context("constant").unwrap(), &caps).unwrap().passed());
}

#[test]
fn table1_axioms_fail_dcm_on_the_hard_split() {
    let s = builtin("exam-table1").unwrap();
    let r = check_axioms(&s.tree, s.context("prior").unwrap(), &Caps::default()).unwrap();
    let summary = AxiomSummary::of(&r);
    assert!(!summary.dc_m);
    assert!(summary.conditional_preference && summary.nonemptiness && summary.sens_alpha);
    let w = r
        .witnesses_of("dc-m")
        .find(|w| w.field("E_cap_F") == Some("hard"))
        .unwrap_or_else(|| panic!("{}", r.render_text()));
    assert_eq!(w.field("F"), Some("{hard-short,hard-long,easy-short,easy-long}"));
    assert!(w.field("f") == Some("play-study-study") || w.field("g") == Some("play-study-study"));
}

#[test]
fn table1_fails_sep_and_rectangularity() {
    let s = builtin("exam-table1").unwrap();
    let bel = s.beliefs.clone().unwrap();
    let caps = Caps::default();
    let algebra = tree_algebra(&s.tree, &caps).unwrap();
    let menu = s.tree.plan_table(&caps).unwrap().menu();
    let sep = check_sep_all(Some(s.tree.space()), &bel, &menu, &algebra, UpdateRule::PriorByPrior).unwrap();
    assert!(!sep.passed());
    let rect = check_rectangularity_named(Some(s.tree.space()), &bel, &algebra, UpdateRule::PriorByPrior, &caps).unwrap();
    assert!(!rect.passed());
}

#[test]
fn singleton_beliefs_satisfy_the_axioms() {
    let s = builtin("exam-table1").unwrap();
    let bel = WeightedBeliefSet::singleton(
        crate::belief::ProbMeasure::new(vec![int(1), int(2), int(3), int(4)].into_iter().map(|x| x / int(10)).collect()).unwrap(),
    );
    for update in UpdateRule::ALL {
        let ctx = ChoiceContext::mwer(bel.clone(), update, MenuPolicy::ConstantInitial);
        let r = check_axioms(&s.tree, &ctx, &Caps::default()).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(check_no_reversal(&s.tree, &ctx, &Caps::default()).unwrap().passed());
    }
}

#[test]
fn thm2_harness_agrees_on_table1() {
    let s = builtin("exam-table1").unwrap();
    let menu = s.tree.plan_table(&Caps::default()).unwrap().menu();
    let inst = SepInstance {
        label: "table1".into(),
        beliefs: s.beliefs.clone().unwrap(),
        menu,
    };
    let r = cross_validate_thm2(&[inst], UpdateRule::PriorByPrior, &Caps::default()).unwrap();
    assert!(r.passed(), "{}", r.render_text());
    assert_eq!(r.stats["both_fail"], 1);
}

#[test]
fn context_requires_beliefs_for_weighted_rules() {
    assert!(ChoiceContext::new(DecisionRule::Mwer, None, UpdateRule::Likelihood, MenuPolicy::FeasibleOnly).is_err());
    assert!(ChoiceContext::new(DecisionRule::MinimaxRegret, None, UpdateRule::Likelihood, MenuPolicy::FeasibleOnly).is_ok());
}

#[test]
fn sampled_sub_menus_are_flagged() {
    let acts: Vec<Act> = (0..6).map(|i| Act::new(format!("f{i}"), vec![int(i), int(5 - i)])).collect();
    let menu = Menu::new(acts).unwrap();
    let caps = Caps { menu_subsets: 16, ..Caps::default() };
    let ctx = ChoiceContext::minimax(MenuPolicy::ConstantInitial);
    let algebra: Vec<Event> = (0..4).map(Event::from_bits).collect();
    let r = check_axioms_on_menu(None, &menu, &algebra, &ctx, &caps).unwrap();
    assert_eq!(r.stats["sampled"], 1);
    assert_eq!(r.stats["sub_menus"], 16);
    assert!(r.passed());
}
