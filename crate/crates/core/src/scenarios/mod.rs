//! Built-in decision problems and a seeded generator of random ones.

mod builtin;
mod generate;

pub use builtin::{builtin, lost_cause_search, procrastination_with, table1_beliefs, LostCause, BUILTIN_NAMES};
pub use generate::{generate, GeneratorConfig};

use std::collections::BTreeMap;

use crate::belief::{Event, StateSpace, WeightedBeliefSet};
use crate::caps::Caps;
use crate::consistency::{check_no_reversal, choice_at_with, plan_value, ChoiceContext, SepInstance};
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::report::{CheckReport, Witness};
use crate::tree::{DecisionTree, History, NodeId, NodeSpec};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Stated in the source material.
    Reported,
    /// Recomputed by exhaustive enumeration outside the engine.
    BruteForce,
    /// Follows from how the fixture is built.
    ByConstruction,
}

impl Origin {
    pub fn name(self) -> &'static str {
        match self {
            Origin::Reported => "reported",
            Origin::BruteForce => "brute-force",
            Origin::ByConstruction => "by-construction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    /// The chosen plans at a history, by label.
    Choice { context: String, at: String, plans: Vec<String> },
    /// One plan's criterion value at a history.
    Value { context: String, at: String, plan: String, value: Q },
    /// Whether the reversal check passes.
    Reversal { context: String, passes: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub query: Query,
    pub origin: Origin,
    pub note: String,
}

impl Expectation {
    pub fn new(query: Query, origin: Origin, note: &str) -> Expectation {
        Expectation {
            query,
            origin,
            note: note.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub tree: DecisionTree,
    pub beliefs: Option<WeightedBeliefSet>,
    /// Named choice contexts; the first is the default.
    pub contexts: Vec<(String, ChoiceContext)>,
    pub expected: Vec<Expectation>,
    /// Short names for histories, e.g. `root`.
    pub aliases: BTreeMap<String, String>,
}

impl Scenario {
    pub fn context(&self, name: &str) -> Result<&ChoiceContext> {
        self.contexts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::Config(format!("scenario `{}` has no context `{name}`", self.name)))
    }

    pub fn default_context(&self) -> &ChoiceContext {
        &self.contexts[0].1
    }

    /// Resolves an alias or a `state/action/...` path.
    pub fn node(&self, at: &str) -> Result<NodeId> {
        let path = self.aliases.get(at).map(String::as_str).unwrap_or(at);
        self.tree.resolve(&History::parse(path)?)
    }

    /// The belief set with the tree's initial menu, for separability checks.
    pub fn sep_instance(&self, caps: &Caps) -> Result<SepInstance> {
        let beliefs = self
            .beliefs
            .clone()
            .ok_or_else(|| Error::Config(format!("scenario `{}` has no beliefs", self.name)))?;
        Ok(SepInstance {
            label: self.name.clone(),
            beliefs,
            menu: self.tree.plan_table(caps)?.menu(),
        })
    }

    /// Replays every expectation against the engine.
    pub fn replay(&self, caps: &Caps) -> Result<CheckReport> {
        let table = self.tree.plan_table(caps)?;
        let mut r = CheckReport::new("replay");
        for (i, e) in self.expected.iter().enumerate() {
            let (ok, observed) = match &e.query {
                Query::Choice { context, at, plans } => {
                    let c = choice_at_with(&self.tree, &table, self.context(context)?, self.node(at)?)?;
                    (&c.plans == plans, format!("{{{}}}", c.plans.join(", ")))
                }
                Query::Value { context, at, plan, value } => {
                    let p = self.tree.parse_plan(plan)?;
                    let v = plan_value(&self.tree, &table, self.context(context)?, self.node(at)?, &p)?;
                    (&v == value, rational::format(&v))
                }
                Query::Reversal { context, passes } => {
                    let rep = check_no_reversal(&self.tree, self.context(context)?, caps)?;
                    (rep.passed() == *passes, if rep.passed() { "pass" } else { "fail" }.to_string())
                }
            };
            r.count("expectations", 1);
            if !ok {
                r.fail(
                    Witness::new("expectation", format!("expectation #{i} of `{}` does not replay", self.name))
                        .with("query", format!("{:?}", e.query))
                        .with("observed", observed)
                        .with("origin", e.origin.name()),
                );
            }
        }
        Ok(r)
    }
}

/// A tree shape shared by every state: the same actions everywhere, with
/// per-state leaf utilities.
#[derive(Clone, Debug, Default)]
pub(crate) struct Shape {
    parent: Vec<Option<usize>>,
    action: Vec<Option<String>>,
    payoff: Vec<Option<Vec<Q>>>,
}

impl Shape {
    pub fn new() -> Shape {
        Shape {
            parent: vec![None],
            action: vec![None],
            payoff: vec![None],
        }
    }

    pub const ROOT: usize = 0;

    pub fn inner(&mut self, parent: usize, action: &str) -> usize {
        self.push(parent, action, None)
    }

    pub fn leaf(&mut self, parent: usize, action: &str, payoff: Vec<Q>) -> usize {
        self.push(parent, action, Some(payoff))
    }

    fn push(&mut self, parent: usize, action: &str, payoff: Option<Vec<Q>>) -> usize {
        self.parent.push(Some(parent));
        self.action.push(Some(action.to_string()));
        self.payoff.push(payoff);
        self.parent.len() - 1
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_leaf(&self, u: usize) -> bool {
        self.payoff[u].is_some()
    }

    pub fn depth(&self, u: usize) -> usize {
        let mut d = 0;
        let mut cur = u;
        while let Some(p) = self.parent[cur] {
            d += 1;
            cur = p;
        }
        d
    }

    fn path(&self, u: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = u;
        while let Some(p) = self.parent[cur] {
            out.push(self.action[cur].clone().expect("non-root"));
            cur = p;
        }
        out.reverse();
        out
    }

    /// Builds the tree; `blocks(u)` partitions the states at inner node `u`
    /// into named information sets. Node ids are history strings.
    pub fn build<F>(&self, space: StateSpace, blocks: F) -> Result<DecisionTree>
    where
        F: Fn(usize) -> Vec<(String, Event)>,
    {
        let mut nodes = Vec::new();
        let id = |s: &str, u: usize| {
            let mut h = s.to_string();
            for a in self.path(u) {
                h.push('/');
                h.push_str(&a);
            }
            h
        };
        for s in space.states() {
            let si = space.index_of(s).expect("own state");
            for u in 0..self.len() {
                let spec = match (self.parent[u], &self.payoff[u]) {
                    (None, _) => NodeSpec::root(&id(s, u), s),
                    (Some(p), None) => NodeSpec::inner(&id(s, u), s, &id(s, p), self.action[u].as_deref().expect("non-root")),
                    (Some(p), Some(v)) => NodeSpec::leaf(
                        &id(s, u),
                        s,
                        &id(s, p),
                        self.action[u].as_deref().expect("non-root"),
                        v[si].clone(),
                    ),
                };
                nodes.push(spec);
            }
        }
        let mut sets = Vec::new();
        for u in 0..self.len() {
            if self.is_leaf(u) {
                continue;
            }
            for (name, block) in blocks(u) {
                let members = block.indices().map(|si| id(&space.states()[si], u)).collect();
                sets.push((name, members));
            }
        }
        DecisionTree::new(space, nodes, sets)
    }
}
