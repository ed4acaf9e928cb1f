//! Regret-based choice under ambiguity for dynamic decision problems.
//!
//! The crate evaluates plans in single-player extensive-form decision trees
//! by minimax regret, minimax expected regret (MER) and minimax weighted
//! expected regret (MWER) over finite weighted sets of probability measures,
//! and mechanically checks consistency conditions: absence of preference
//! reversals, separability of weighted regret, rectangularity of the belief
//! set, and the menu-dependent choice axioms.
//!
//! All probabilities, weights, utilities and regrets are exact rationals.

pub mod belief;
pub mod caps;
pub mod cli;
pub mod consistency;
pub mod error;
pub mod lp;
pub mod problem;
pub mod rational;
pub mod report;
pub mod regret;
pub mod scenarios;
pub mod tree;

pub use belief::{
    Event, ProbMeasure, StateSpace, SubProbability, UpdateRule, WeightedBeliefSet, WeightedMeasure,
};
pub use caps::Caps;
pub use consistency::ChoiceContext;
pub use report::{CheckReport, Verdict, Witness};
pub use error::{Error, Result};
pub use rational::Q;
pub use regret::{Act, Criterion, DecisionRule, Menu};
pub use tree::{DecisionTree, History, MenuPolicy, Plan};
