use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state space: {0}")]
    StateSpace(String),

    #[error("invalid measure: {0}")]
    Measure(String),

    #[error("invalid belief set: {0}")]
    BeliefSet(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("empty choice set")]
    EmptyChoiceSet,

    #[error("empty menu")]
    EmptyMenu,

    #[error("rule {rule} requires {what}")]
    RuleArgument { rule: &'static str, what: &'static str },

    #[error("invalid tree: {0}")]
    Tree(String),

    #[error("invalid history `{0}`")]
    History(String),

    #[error("no explicit menu for history `{0}`")]
    MissingMenu(String),

    #[error("cap `{name}` exceeded: {size} > {limit}")]
    CapExceeded {
        name: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("infeasible generator config: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
