//! Single-player extensive-form decision trees.
//!
//! Nature picks a state first; each state then owns a rooted tree of decision
//! nodes whose leaves carry utilities. Decision nodes are partitioned into
//! information sets. A plan assigns one action to every information set and
//! induces an act (one leaf utility per state).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::belief::{Event, StateSpace};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::regret::{Act, Menu};
use crate::report::{CheckReport, Witness};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSpec {
    pub id: String,
    pub state: String,
    pub parent: Option<String>,
    pub action: Option<String>,
    pub utility: Option<Q>,
}

impl NodeSpec {
    pub fn root(id: &str, state: &str) -> NodeSpec {
        NodeSpec {
            id: id.into(),
            state: state.into(),
            parent: None,
            action: None,
            utility: None,
        }
    }

    pub fn inner(id: &str, state: &str, parent: &str, action: &str) -> NodeSpec {
        NodeSpec {
            id: id.into(),
            state: state.into(),
            parent: Some(parent.into()),
            action: Some(action.into()),
            utility: None,
        }
    }

    pub fn leaf(id: &str, state: &str, parent: &str, action: &str, utility: Q) -> NodeSpec {
        NodeSpec {
            utility: Some(utility),
            ..NodeSpec::inner(id, state, parent, action)
        }
    }

    /// A root that is also a leaf: the decision maker has nothing to do in this state.
    pub fn terminal_root(id: &str, state: &str, utility: Q) -> NodeSpec {
        NodeSpec {
            utility: Some(utility),
            ..NodeSpec::root(id, state)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub state: usize,
    pub parent: Option<NodeId>,
    pub action: Option<String>,
    pub utility: Option<Q>,
    pub children: Vec<NodeId>,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoSet {
    pub name: String,
    pub nodes: Vec<NodeId>,
    /// Action labels, in the child order of the first member node.
    pub actions: Vec<String>,
}

/// A decision tree. Use [`DecisionTree::new`] for a validated tree; the
/// unchecked constructor exists so that [`DecisionTree::validate`] can report
/// on malformed input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionTree {
    space: StateSpace,
    nodes: Vec<Node>,
    roots: Vec<NodeId>,
    info_sets: Vec<InfoSet>,
    node_iset: Vec<Option<usize>>,
    refines: Vec<Vec<bool>>,
}

/// A history: nature's state followed by the decision maker's actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct History {
    pub state: String,
    pub actions: Vec<String>,
}

impl History {
    /// Parses `state/action/action/...`.
    pub fn parse(s: &str) -> Result<History> {
        let mut parts = s.split('/').map(str::trim);
        let state = parts.next().filter(|p| !p.is_empty());
        let Some(state) = state else {
            return Err(Error::History(s.to_string()));
        };
        let actions: Vec<String> = parts.map(String::from).collect();
        if actions.iter().any(String::is_empty) {
            return Err(Error::History(s.to_string()));
        }
        Ok(History {
            state: state.to_string(),
            actions,
        })
    }
}

impl fmt::Display for History {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.state)?;
        for a in &self.actions {
            write!(f, "/{a}")?;
        }
        Ok(())
    }
}

/// A pure strategy: an action index for every information set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plan {
    pub choices: Vec<usize>,
}

/// How the evaluation menu is chosen at a history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MenuPolicy {
    /// Every plan's act, including forgone opportunities.
    ConstantInitial,
    /// Acts of the plans still feasible at the history.
    FeasibleOnly,
    /// A menu per history, keyed by the canonical history string.
    Explicit(BTreeMap<String, Menu>),
}

impl MenuPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            MenuPolicy::ConstantInitial => "constant",
            MenuPolicy::FeasibleOnly => "feasible",
            MenuPolicy::Explicit(_) => "explicit",
        }
    }
}

/// Every plan of a tree, with the distinct acts they induce.
#[derive(Clone, Debug)]
pub struct PlanTable {
    pub plans: Vec<Plan>,
    /// Distinct acts in first-occurrence order.
    pub acts: Vec<Act>,
    /// For each plan, the index of its act in `acts`.
    pub act_of_plan: Vec<usize>,
}

impl PlanTable {
    pub fn menu(&self) -> Menu {
        Menu::new(self.acts.iter().cloned()).expect("trees have at least one plan")
    }

    pub fn act(&self, plan: usize) -> &Act {
        &self.acts[self.act_of_plan[plan]]
    }
}

impl DecisionTree {
    pub fn new(space: StateSpace, nodes: Vec<NodeSpec>, info_sets: Vec<(String, Vec<String>)>) -> Result<DecisionTree> {
        let t = DecisionTree::unchecked(space, nodes, info_sets)?;
        let report = t.validate();
        if !report.passed() {
            let msgs: Vec<&str> = report.witnesses.iter().map(|w| w.message.as_str()).collect();
            return Err(Error::Tree(msgs.join("; ")));
        }
        Ok(t)
    }

    /// Builds the structure, rejecting only inputs that cannot form a tree at all
    /// (unknown references, missing leaf utilities, duplicate ids or actions).
    pub fn unchecked(
        space: StateSpace,
        specs: Vec<NodeSpec>,
        info_sets: Vec<(String, Vec<String>)>,
    ) -> Result<DecisionTree> {
        let mut index: BTreeMap<&str, NodeId> = BTreeMap::new();
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.id.as_str(), i).is_some() {
                return Err(Error::Tree(format!("duplicate node id `{}`", s.id)));
            }
        }
        let mut nodes = Vec::with_capacity(specs.len());
        for s in &specs {
            let state = space
                .index_of(&s.state)
                .ok_or_else(|| Error::Tree(format!("node `{}` has unknown state `{}`", s.id, s.state)))?;
            let parent = match &s.parent {
                None => None,
                Some(p) => Some(
                    *index
                        .get(p.as_str())
                        .ok_or_else(|| Error::Tree(format!("node `{}` has unknown parent `{p}`", s.id)))?,
                ),
            };
            if parent.is_some() != s.action.is_some() {
                return Err(Error::Tree(format!(
                    "node `{}` must carry an action label exactly when it has a parent",
                    s.id
                )));
            }
            nodes.push(Node {
                id: s.id.clone(),
                state,
                parent,
                action: s.action.clone(),
                utility: s.utility.clone(),
                children: Vec::new(),
            });
        }
        for i in 0..nodes.len() {
            if let Some(p) = nodes[i].parent {
                if nodes[p].state != nodes[i].state {
                    return Err(Error::Tree(format!(
                        "node `{}` and its parent belong to different states",
                        nodes[i].id
                    )));
                }
                let label = nodes[i].action.clone();
                if nodes[p].children.iter().any(|&c| nodes[c].action == label) {
                    return Err(Error::Tree(format!(
                        "node `{}` has two children labelled `{}`",
                        nodes[p].id,
                        label.unwrap_or_default()
                    )));
                }
                nodes[p].children.push(i);
            }
        }
        let mut roots = vec![usize::MAX; space.len()];
        for (i, n) in nodes.iter().enumerate() {
            if n.parent.is_none() {
                if roots[n.state] != usize::MAX {
                    return Err(Error::Tree(format!(
                        "state `{}` has more than one root",
                        space.states()[n.state]
                    )));
                }
                roots[n.state] = i;
            }
        }
        if let Some(s) = roots.iter().position(|&r| r == usize::MAX) {
            return Err(Error::Tree(format!("state `{}` has no root", space.states()[s])));
        }
        // Every node must reach its root (no parent cycles).
        for i in 0..nodes.len() {
            let mut cur = i;
            let mut steps = 0;
            while let Some(p) = nodes[cur].parent {
                cur = p;
                steps += 1;
                if steps > nodes.len() {
                    return Err(Error::Tree(format!("cycle through node `{}`", nodes[i].id)));
                }
            }
        }
        for n in &nodes {
            match (n.is_leaf(), n.utility.is_some()) {
                (true, false) => return Err(Error::Tree(format!("leaf `{}` has no utility", n.id))),
                (false, true) => {
                    return Err(Error::Tree(format!("inner node `{}` carries a utility", n.id)))
                }
                _ => {}
            }
        }
        let mut sets = Vec::with_capacity(info_sets.len());
        let mut node_iset = vec![None; nodes.len()];
        for (k, (name, members)) in info_sets.into_iter().enumerate() {
            if members.is_empty() {
                return Err(Error::Tree(format!("information set `{name}` is empty")));
            }
            let mut ids = Vec::with_capacity(members.len());
            for m in &members {
                let id = *index
                    .get(m.as_str())
                    .ok_or_else(|| Error::Tree(format!("information set `{name}` names unknown node `{m}`")))?;
                ids.push(id);
                if node_iset[id].is_none() {
                    node_iset[id] = Some(k);
                }
            }
            let first = &nodes[ids[0]];
            let actions = first
                .children
                .iter()
                .map(|&c| nodes[c].action.clone().expect("children carry actions"))
                .collect();
            sets.push(InfoSet {
                name,
                nodes: ids,
                actions,
            });
        }
        let mut t = DecisionTree {
            space,
            nodes,
            roots,
            info_sets: sets,
            node_iset,
            refines: Vec::new(),
        };
        t.refines = t.compute_refinement();
        Ok(t)
    }

    /// `refines[j][i]`: every history of set `j` has a prefix (possibly itself) in set `i`.
    fn compute_refinement(&self) -> Vec<Vec<bool>> {
        let k = self.info_sets.len();
        let mut out = vec![vec![false; k]; k];
        for (j, row) in out.iter_mut().enumerate() {
            for (i, cell) in row.iter_mut().enumerate() {
                *cell = self.info_sets[j].nodes.iter().all(|&h| {
                    self.path_to_root(h)
                        .into_iter()
                        .any(|a| self.info_sets[i].nodes.contains(&a))
                });
            }
        }
        out
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn info_sets(&self) -> &[InfoSet] {
        &self.info_sets
    }

    pub fn root(&self, state: usize) -> NodeId {
        self.roots[state]
    }

    pub fn info_set_of(&self, node: NodeId) -> Option<usize> {
        self.node_iset[node]
    }

    pub fn node_by_id(&self, id: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn info_set_by_name(&self, name: &str) -> Option<usize> {
        self.info_sets.iter().position(|s| s.name == name)
    }

    /// `node` and its ancestors, root last.
    pub fn path_to_root(&self, node: NodeId) -> Vec<NodeId> {
        let mut out = vec![node];
        let mut cur = node;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Decision nodes (histories where the decision maker moves), in node order.
    pub fn decision_nodes(&self) -> Vec<NodeId> {
        (0..self.nodes.len()).filter(|&i| !self.nodes[i].is_leaf()).collect()
    }

    /// Strict descendants of `node`.
    pub fn descendants(&self, node: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack: Vec<NodeId> = self.nodes[node].children.iter().rev().copied().collect();
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(self.nodes[n].children.iter().rev().copied());
        }
        out
    }

    /// `R(h)`: the decision maker's actions leading to `node`.
    pub fn action_record(&self, node: NodeId) -> Vec<String> {
        let mut path = self.path_to_root(node);
        path.reverse();
        path.iter()
            .filter_map(|&n| self.nodes[n].action.clone())
            .collect()
    }

    pub fn history(&self, node: NodeId) -> History {
        History {
            state: self.space.states()[self.nodes[node].state].clone(),
            actions: self.action_record(node),
        }
    }

    pub fn history_string(&self, node: NodeId) -> String {
        self.history(node).to_string()
    }

    pub fn resolve(&self, h: &History) -> Result<NodeId> {
        let state = self
            .space
            .index_of(&h.state)
            .ok_or_else(|| Error::History(h.to_string()))?;
        let mut cur = self.roots[state];
        for a in &h.actions {
            cur = *self.nodes[cur]
                .children
                .iter()
                .find(|&&c| self.nodes[c].action.as_deref() == Some(a.as_str()))
                .ok_or_else(|| Error::History(h.to_string()))?;
        }
        Ok(cur)
    }

    /// `E(h)`: the states of the histories in `h`'s information set; a terminal
    /// history only admits its own state.
    pub fn possible_states(&self, node: NodeId) -> Event {
        match self.node_iset[node] {
            Some(k) => Event::from_indices(self.info_sets[k].nodes.iter().map(|&n| self.nodes[n].state)),
            None => Event::singleton(self.nodes[node].state),
        }
    }

    pub fn validate(&self) -> CheckReport {
        let mut r = CheckReport::new("validate");
        let mut seen: Vec<Option<usize>> = vec![None; self.nodes.len()];
        for (k, set) in self.info_sets.iter().enumerate() {
            for &n in &set.nodes {
                if self.nodes[n].is_leaf() {
                    r.fail(
                        Witness::new("leaf-in-info-set", format!("information set `{}` contains leaf `{}`", set.name, self.nodes[n].id))
                            .with("info_set", set.name.clone())
                            .with("node", self.nodes[n].id.clone()),
                    );
                }
                match seen[n] {
                    Some(prev) => r.fail(
                        Witness::new(
                            "overlapping-info-sets",
                            format!(
                                "node `{}` belongs to `{}` and `{}`",
                                self.nodes[n].id, self.info_sets[prev].name, set.name
                            ),
                        )
                        .with("node", self.nodes[n].id.clone())
                        .with("info_set", set.name.clone()),
                    ),
                    None => seen[n] = Some(k),
                }
            }
        }
        for (n, node) in self.nodes.iter().enumerate() {
            if !node.is_leaf() && seen[n].is_none() {
                r.fail(
                    Witness::new("uncovered-node", format!("decision node `{}` is in no information set", node.id))
                        .with("node", node.id.clone()),
                );
            }
        }
        for set in &self.info_sets {
            let mut reference = set.actions.clone();
            reference.sort();
            let record = self.action_record(set.nodes[0]);
            for &n in &set.nodes[1..] {
                let mut acts: Vec<String> = self.nodes[n]
                    .children
                    .iter()
                    .filter_map(|&c| self.nodes[c].action.clone())
                    .collect();
                acts.sort();
                if acts != reference && !self.nodes[n].is_leaf() {
                    r.fail(
                        Witness::new(
                            "action-mismatch",
                            format!("information set `{}` mixes action sets", set.name),
                        )
                        .with("info_set", set.name.clone())
                        .with("node", self.nodes[n].id.clone()),
                    );
                }
                if self.action_record(n) != record {
                    r.fail(
                        Witness::new(
                            "perfect-recall",
                            format!("information set `{}` mixes action records", set.name),
                        )
                        .with("info_set", set.name.clone())
                        .with("h", self.history_string(set.nodes[0]))
                        .with("h_prime", self.history_string(n)),
                    );
                }
            }
        }
        for (n, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                if node.is_leaf() {
                    continue;
                }
                let (ep, en) = (self.possible_states(p), self.possible_states(n));
                if !en.is_subset(ep) {
                    r.fail(
                        Witness::new(
                            "growing-possibility-set",
                            format!(
                                "possible states grow from `{}` to `{}`",
                                self.history_string(p),
                                self.history_string(n)
                            ),
                        )
                        .with("h", self.history_string(p))
                        .with("h_prime", self.history_string(n))
                        .with("E(h)", self.space.format_event(ep))
                        .with("E(h_prime)", self.space.format_event(en)),
                    );
                }
            }
        }
        r.count("nodes", self.nodes.len() as u64);
        r.count("info_sets", self.info_sets.len() as u64);
        r
    }

    pub fn plan_count(&self) -> u128 {
        self.info_sets
            .iter()
            .map(|s| s.actions.len() as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    /// All plans in lexicographic order (first information set most significant).
    pub fn enumerate_plans(&self, caps: &Caps) -> Result<Vec<Plan>> {
        let total = self.plan_count();
        if total > caps.plans as u128 {
            return Err(Error::CapExceeded {
                name: "plans",
                size: total,
                limit: caps.plans as u128,
            });
        }
        let sizes: Vec<usize> = self.info_sets.iter().map(|s| s.actions.len()).collect();
        let mut out = Vec::with_capacity(total as usize);
        if sizes.contains(&0) {
            return Ok(out);
        }
        let mut cur = vec![0usize; sizes.len()];
        loop {
            out.push(Plan { choices: cur.clone() });
            let mut k = sizes.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < sizes[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    pub fn plan_label(&self, plan: &Plan) -> String {
        if plan.choices.is_empty() {
            return "(no choices)".to_string();
        }
        plan.choices
            .iter()
            .enumerate()
            .map(|(k, &a)| self.info_sets[k].actions[a].as_str())
            .collect::<Vec<_>>()
            .join("-")
    }

    /// Parses a plan written as action labels joined by `-`, one per information set.
    pub fn parse_plan(&self, label: &str) -> Result<Plan> {
        let parts: Vec<&str> = label.split('-').collect();
        if parts.len() != self.info_sets.len() {
            return Err(Error::Parse(format!("plan `{label}` does not name one action per information set")));
        }
        let choices = parts
            .iter()
            .zip(&self.info_sets)
            .map(|(p, s)| {
                s.actions
                    .iter()
                    .position(|a| a == p)
                    .ok_or_else(|| Error::Parse(format!("`{p}` is not an action of `{}`", s.name)))
            })
            .collect::<Result<_>>()?;
        Ok(Plan { choices })
    }

    fn action_at(&self, plan: &Plan, node: NodeId) -> NodeId {
        let k = self.node_iset[node].expect("decision nodes belong to an information set");
        let label = &self.info_sets[k].actions[plan.choices[k]];
        *self.nodes[node]
            .children
            .iter()
            .find(|&&c| self.nodes[c].action.as_ref() == Some(label))
            .expect("information-set members share actions")
    }

    /// Follows the plan from each state's root to a leaf.
    pub fn plan_to_act(&self, plan: &Plan) -> Act {
        let payoff = (0..self.space.len())
            .map(|s| {
                let mut cur = self.roots[s];
                while !self.nodes[cur].is_leaf() {
                    cur = self.action_at(plan, cur);
                }
                self.nodes[cur].utility.clone().expect("leaves carry utilities")
            })
            .collect();
        Act::new(self.plan_label(plan), payoff)
    }

    /// The plan prescribes every decision-maker move recorded in the history.
    pub fn is_feasible(&self, plan: &Plan, node: NodeId) -> bool {
        let path = self.path_to_root(node);
        path.windows(2).all(|w| {
            let (child, parent) = (w[0], w[1]);
            self.action_at(plan, parent) == child
        })
    }

    pub fn feasible_plans(&self, node: NodeId, caps: &Caps) -> Result<Vec<Plan>> {
        Ok(self
            .enumerate_plans(caps)?
            .into_iter()
            .filter(|p| self.is_feasible(p, node))
            .collect())
    }

    pub fn plan_table(&self, caps: &Caps) -> Result<PlanTable> {
        let plans = self.enumerate_plans(caps)?;
        let mut acts: Vec<Act> = Vec::new();
        let mut act_of_plan = Vec::with_capacity(plans.len());
        for p in &plans {
            let a = self.plan_to_act(p);
            match acts.iter().position(|x| x.same_payoff(&a)) {
                Some(i) => act_of_plan.push(i),
                None => {
                    act_of_plan.push(acts.len());
                    acts.push(a);
                }
            }
        }
        Ok(PlanTable {
            plans,
            acts,
            act_of_plan,
        })
    }

    pub fn menu_at(&self, node: NodeId, policy: &MenuPolicy, table: &PlanTable) -> Result<Menu> {
        match policy {
            MenuPolicy::ConstantInitial => Ok(table.menu()),
            MenuPolicy::FeasibleOnly => Menu::new(
                table
                    .plans
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| self.is_feasible(p, node))
                    .map(|(i, _)| table.act(i).clone()),
            ),
            MenuPolicy::Explicit(map) => {
                let key = self.history_string(node);
                map.get(&key).cloned().ok_or(Error::MissingMenu(key))
            }
        }
    }

    /// Information set `j` refines `i`.
    pub fn refines(&self, j: usize, i: usize) -> bool {
        self.refines[j][i]
    }

    /// The plan following `f` at `iset` and every set refining it, and `g` elsewhere.
    pub fn splice(&self, f: &Plan, g: &Plan, iset: usize) -> Plan {
        Plan {
            choices: (0..self.info_sets.len())
                .map(|j| if self.refines[j][iset] { f.choices[j] } else { g.choices[j] })
                .collect(),
        }
    }

    /// Number of states; shorthand for `space().len()`.
    pub fn n_states(&self) -> usize {
        self.space.len()
    }

    pub fn utility_one() -> Q {
        Q::one()
    }
}
