//! The JSON problem-file format.
//!
//! Every rational is written as an exact string (`"3/5"`, `"-2"`); JSON numbers
//! are rejected so that no value passes through a float. Syntax errors carry
//! the line and column reported by the JSON reader.

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;
use num_traits::One;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::belief::{ProbMeasure, StateSpace, UpdateRule, WeightedBeliefSet, WeightedMeasure};
use crate::consistency::ChoiceContext;
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::regret::{Act, DecisionRule, Menu};
use crate::scenarios::Scenario;
use crate::tree::{DecisionTree, MenuPolicy, NodeSpec};

pub const PROBLEM_SCHEMA: &str = "regretlab.problem/v1";

/// A rational carried as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format(&self.0))
    }
}

struct RatVisitor;

impl<'de> Visitor<'de> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string such as \"3/5\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
        rational::parse(v).map(Rat).map_err(|e| match e {
            Error::Parse(msg) => E::custom(msg),
            other => E::custom(other),
        })
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rat, E> {
        Err(E::custom(format!("number {v} is not allowed; write rationals as strings like \"3/5\"")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
        Err(E::custom(format!("number {v} is not allowed; write rationals as strings like \"{v}\"")))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
        self.visit_i64(v as i64)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility: Option<Rat>,
}

/// An information set, either a bare list of node ids or a named one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InfoSetEntry {
    Named { name: String, nodes: Vec<String> },
    Nodes(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeliefEntry {
    #[serde(alias = "weights")]
    pub weight: Rat,
    /// Missing states carry mass zero.
    pub masses: BTreeMap<String, Rat>,
    /// Allows a total mass below one.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub deficient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextEntry {
    #[serde(default = "default_rule")]
    pub rule: String,
    #[serde(default = "default_update")]
    pub update: String,
    #[serde(default = "default_menu")]
    pub menu_policy: String,
}

fn default_rule() -> String {
    "mwer".into()
}

fn default_update() -> String {
    "prior".into()
}

fn default_menu() -> String {
    "constant".into()
}

impl Default for ContextEntry {
    fn default() -> Self {
        ContextEntry {
            rule: default_rule(),
            update: default_update(),
            menu_policy: default_menu(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActEntry {
    pub label: String,
    pub payoff: BTreeMap<String, Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub events: IndexMap<String, Vec<String>>,
    /// Node list per state.
    pub tree: BTreeMap<String, Vec<NodeEntry>>,
    #[serde(default)]
    pub info_sets: Vec<InfoSetEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub beliefs: Vec<BeliefEntry>,
    #[serde(default)]
    pub defaults: ContextEntry,
    /// Further named contexts, selectable with `--context`.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub contexts: IndexMap<String, ContextEntry>,
    /// Short names for histories.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
    /// Menus per history for the `explicit` menu policy.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub menus: BTreeMap<String, Vec<ActEntry>>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<ProblemFile> {
        ProblemFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    pub fn space(&self) -> Result<StateSpace> {
        let mut space = StateSpace::new(self.states.iter().cloned())?;
        for (name, members) in &self.events {
            space = space.with_event(name, members)?;
        }
        Ok(space)
    }

    fn vector(&self, space: &StateSpace, map: &BTreeMap<String, Rat>, what: &str) -> Result<Vec<Q>> {
        let mut v = vec![Q::from_integer(0.into()); space.len()];
        for (s, x) in map {
            let i = space
                .index_of(s)
                .ok_or_else(|| Error::Parse(format!("{what} names unknown state `{s}`")))?;
            v[i] = x.0.clone();
        }
        Ok(v)
    }

    pub fn belief_set(&self, space: &StateSpace) -> Result<Option<WeightedBeliefSet>> {
        if self.beliefs.is_empty() {
            return Ok(None);
        }
        let mut members = Vec::with_capacity(self.beliefs.len());
        for (i, b) in self.beliefs.iter().enumerate() {
            let mass = self.vector(space, &b.masses, &format!("belief {i}"))?;
            let measure = if b.deficient {
                ProbMeasure::deficient(mass)?
            } else {
                ProbMeasure::new(mass)?
            };
            members.push(WeightedMeasure::new(measure, b.weight.0.clone())?);
        }
        WeightedBeliefSet::new(members).map(Some)
    }

    fn menu_policy(&self, space: &StateSpace, name: &str) -> Result<MenuPolicy> {
        match name {
            "constant" | "constant-initial" => Ok(MenuPolicy::ConstantInitial),
            "feasible" | "feasible-only" => Ok(MenuPolicy::FeasibleOnly),
            "explicit" => {
                if self.menus.is_empty() {
                    return Err(Error::Parse("menu policy `explicit` needs a `menus` table".into()));
                }
                let mut map = BTreeMap::new();
                for (h, acts) in &self.menus {
                    let acts = acts
                        .iter()
                        .map(|a| Ok(Act::new(a.label.clone(), self.vector(space, &a.payoff, &a.label)?)))
                        .collect::<Result<Vec<_>>>()?;
                    let key = self.aliases.get(h).cloned().unwrap_or_else(|| h.clone());
                    map.insert(key, Menu::new(acts)?);
                }
                Ok(MenuPolicy::Explicit(map))
            }
            other => Err(Error::Parse(format!("unknown menu policy `{other}`"))),
        }
    }

    /// Builds a context from `entry`, for a file's belief set.
    pub fn context(
        &self,
        space: &StateSpace,
        beliefs: Option<&WeightedBeliefSet>,
        entry: &ContextEntry,
    ) -> Result<ChoiceContext> {
        ChoiceContext::new(
            DecisionRule::parse(&entry.rule)?,
            beliefs.cloned(),
            UpdateRule::parse(&entry.update)?,
            self.menu_policy(space, &entry.menu_policy)?,
        )
    }

    /// The tree, built without the structural validation of `DecisionTree::validate`.
    pub fn tree(&self, space: &StateSpace) -> Result<DecisionTree> {
        let mut specs = Vec::new();
        for s in &self.states {
            for n in self.tree.get(s).map(Vec::as_slice).unwrap_or_default() {
                specs.push(NodeSpec {
                    id: n.id.clone(),
                    state: s.clone(),
                    parent: n.parent.clone(),
                    action: n.action.clone(),
                    utility: n.utility.as_ref().map(|u| u.0.clone()),
                });
            }
        }
        if let Some(s) = self.tree.keys().find(|s| space.index_of(s).is_none()) {
            return Err(Error::Parse(format!("tree lists unknown state `{s}`")));
        }
        let info_sets = self
            .info_sets
            .iter()
            .enumerate()
            .map(|(k, e)| match e {
                InfoSetEntry::Named { name, nodes } => (name.clone(), nodes.clone()),
                InfoSetEntry::Nodes(nodes) => (format!("I{k}"), nodes.clone()),
            })
            .collect();
        DecisionTree::unchecked(space.clone(), specs, info_sets)
    }

    /// The problem as a scenario. The default context comes first, named
    /// `default`, followed by the file's named contexts. The tree is not validated.
    pub fn to_scenario(&self) -> Result<Scenario> {
        let space = self.space()?;
        let tree = self.tree(&space)?;
        let beliefs = self.belief_set(&space)?;
        let mut contexts = vec![("default".to_string(), self.context(&space, beliefs.as_ref(), &self.defaults)?)];
        for (name, entry) in &self.contexts {
            contexts.push((name.clone(), self.context(&space, beliefs.as_ref(), entry)?));
        }
        Ok(Scenario {
            name: self.name.clone().unwrap_or_else(|| "problem".into()),
            tree,
            beliefs,
            contexts,
            expected: Vec::new(),
            aliases: self.aliases.clone(),
        })
    }

    /// Serializes a scenario. Its first context becomes the defaults and every
    /// context is also listed by name.
    pub fn from_scenario(s: &Scenario) -> ProblemFile {
        let t = &s.tree;
        let space = t.space();
        let states = space.states().to_vec();
        let events = space
            .basis()
            .iter()
            .map(|(n, e)| (n.clone(), space.state_names(*e).into_iter().map(String::from).collect()))
            .collect();
        let mut tree: BTreeMap<String, Vec<NodeEntry>> = BTreeMap::new();
        for n in t.nodes() {
            tree.entry(states[n.state].clone()).or_default().push(NodeEntry {
                id: n.id.clone(),
                parent: n.parent.map(|p| t.node(p).id.clone()),
                action: n.action.clone(),
                utility: n.utility.clone().map(Rat),
            });
        }
        let info_sets = t
            .info_sets()
            .iter()
            .map(|i| InfoSetEntry::Named {
                name: i.name.clone(),
                nodes: i.nodes.iter().map(|&n| t.node(n).id.clone()).collect(),
            })
            .collect();
        let by_state = |v: &[Q]| -> BTreeMap<String, Rat> {
            v.iter()
                .enumerate()
                .map(|(i, x)| (states[i].clone(), Rat(x.clone())))
                .collect()
        };
        let beliefs = s
            .beliefs
            .iter()
            .flat_map(|b| b.members())
            .map(|m| BeliefEntry {
                weight: Rat(m.weight.clone()),
                masses: by_state(m.measure.mass()),
                deficient: !m.measure.total().is_one(),
            })
            .collect();
        let entry = |c: &ChoiceContext| ContextEntry {
            rule: c.rule.name().into(),
            update: c.update.name().into(),
            menu_policy: c.menu_policy.name().into(),
        };
        let mut menus = BTreeMap::new();
        if let Some(MenuPolicy::Explicit(map)) = s
            .contexts
            .iter()
            .map(|(_, c)| &c.menu_policy)
            .find(|p| matches!(p, MenuPolicy::Explicit(_)))
        {
            for (h, m) in map {
                let acts = m
                    .acts()
                    .iter()
                    .map(|a| ActEntry {
                        label: a.label().to_string(),
                        payoff: by_state(a.payoff()),
                    })
                    .collect();
                menus.insert(h.clone(), acts);
            }
        }
        ProblemFile {
            schema: Some(PROBLEM_SCHEMA.into()),
            name: Some(s.name.clone()),
            states,
            events,
            tree,
            info_sets,
            beliefs,
            defaults: entry(&s.contexts[0].1),
            contexts: s.contexts.iter().map(|(n, c)| (n.clone(), entry(c))).collect(),
            aliases: s.aliases.clone(),
            menus,
        }
    }
}
