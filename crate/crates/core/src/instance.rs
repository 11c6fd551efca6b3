//! Instance and solution representation: a discrete line of `m` nodes,
//! agents at distinct nodes with approval pairs over two facilities, the
//! per-agent cost and the two social objectives, plus the normalization
//! helpers (occupied window, mirroring) the mechanisms rely on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based node index on the line.
pub type NodeIndex = u32;

/// Costs are total line distances, hence non-negative integers.
pub type Cost = u64;

/// One of the two distinguishable facilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Facility {
    F1,
    F2,
}

impl Facility {
    pub const BOTH: [Facility; 2] = [Facility::F1, Facility::F2];
}

/// An agent's approval pair: which of the two facilities she approves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApprovalPair {
    pub f1: bool,
    pub f2: bool,
}

impl ApprovalPair {
    pub const F1_ONLY: ApprovalPair = ApprovalPair { f1: true, f2: false };
    pub const F2_ONLY: ApprovalPair = ApprovalPair { f1: false, f2: true };
    pub const BOTH: ApprovalPair = ApprovalPair { f1: true, f2: true };
    pub const NEITHER: ApprovalPair = ApprovalPair { f1: false, f2: false };

    pub fn approves(self, facility: Facility) -> bool {
        match facility {
            Facility::F1 => self.f1,
            Facility::F2 => self.f2,
        }
    }

    pub fn approves_any(self) -> bool {
        self.f1 || self.f2
    }
}

impl std::fmt::Display for ApprovalPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.f1, self.f2) {
            (true, false) => write!(f, "f1"),
            (false, true) => write!(f, "f2"),
            (true, true) => write!(f, "f1+f2"),
            (false, false) => write!(f, "none"),
        }
    }
}

/// An agent: an occupied node plus the agent's approval pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Agent {
    pub pos: NodeIndex,
    #[serde(flatten)]
    pub prefs: ApprovalPair,
}

impl Agent {
    pub fn new(pos: NodeIndex, prefs: ApprovalPair) -> Agent {
        Agent { pos, prefs }
    }
}

/// A line of `m` nodes with agents at strictly increasing positions.
///
/// Construction validates the structural invariants: `2 <= n <= m` and all
/// positions strictly increasing within `1..=m`. Approval pairs are not
/// restricted here; whether an agent may approve neither facility is a
/// property of the preference domain (see [`crate::verify::PrefDomain`]),
/// not of the data type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct LineInstance {
    m: NodeIndex,
    agents: Vec<Agent>,
}

/// Wire form of an instance: `{"m": 5, "agents": [{"pos": 1, "f1": false, "f2": true}, ...]}`.
#[derive(Serialize, Deserialize)]
struct RawInstance {
    m: NodeIndex,
    agents: Vec<Agent>,
}

impl TryFrom<RawInstance> for LineInstance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<LineInstance> {
        LineInstance::new(raw.m, raw.agents)
    }
}

impl From<LineInstance> for RawInstance {
    fn from(instance: LineInstance) -> RawInstance {
        RawInstance { m: instance.m, agents: instance.agents }
    }
}

impl LineInstance {
    pub fn new(m: NodeIndex, agents: Vec<Agent>) -> Result<LineInstance> {
        if agents.len() < 2 {
            return Err(Error::TooFewAgents(agents.len()));
        }
        if agents.len() > m as usize {
            return Err(Error::TooManyAgents { n: agents.len(), m });
        }
        let mut prev = 0;
        for agent in &agents {
            if agent.pos <= prev || agent.pos > m {
                return Err(Error::BadAgentPosition { pos: agent.pos, m });
            }
            prev = agent.pos;
        }
        Ok(LineInstance { m, agents })
    }

    pub fn m(&self) -> NodeIndex {
        self.m
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, index: usize) -> Result<&Agent> {
        self.agents
            .get(index)
            .ok_or(Error::AgentIndexOutOfRange { index, n: self.agents.len() })
    }

    /// Positions of the agents approving `facility`, in increasing order.
    pub fn approver_positions(&self, facility: Facility) -> Vec<NodeIndex> {
        self.agents
            .iter()
            .filter(|a| a.prefs.approves(facility))
            .map(|a| a.pos)
            .collect()
    }

    pub fn has_empty_nodes(&self) -> bool {
        self.agents.len() < self.m as usize
    }

    pub fn is_occupied(&self, node: NodeIndex) -> bool {
        self.agents.binary_search_by_key(&node, |a| a.pos).is_ok()
    }

    /// Unoccupied nodes in increasing order.
    pub fn empty_nodes(&self) -> Vec<NodeIndex> {
        (1..=self.m).filter(|&node| !self.is_occupied(node)).collect()
    }

    pub fn has_empty_prefs(&self) -> bool {
        self.agents.iter().any(|a| !a.prefs.approves_any())
    }

    /// The same instance with agent `index` reporting `prefs` instead.
    ///
    /// Positions are untouched, so the result is structurally valid.
    pub fn with_prefs(&self, index: usize, prefs: ApprovalPair) -> Result<LineInstance> {
        if index >= self.agents.len() {
            return Err(Error::AgentIndexOutOfRange { index, n: self.agents.len() });
        }
        let mut agents = self.agents.clone();
        agents[index].prefs = prefs;
        Ok(LineInstance { m: self.m, agents })
    }

    pub fn check_feasible(&self, solution: Solution) -> Result<()> {
        let Solution { z1, z2 } = solution;
        if z1 == z2 || z1 < 1 || z2 < 1 || z1 > self.m || z2 > self.m {
            return Err(Error::InfeasibleSolution { z1, z2, m: self.m });
        }
        Ok(())
    }
}

impl std::fmt::Display for LineInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "m={}", self.m)?;
        for agent in &self.agents {
            write!(f, " {}@{}", agent.prefs, agent.pos)?;
        }
        Ok(())
    }
}

/// An ordered pair of distinct nodes hosting facility 1 and facility 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    pub z1: NodeIndex,
    pub z2: NodeIndex,
}

impl Solution {
    pub fn new(z1: NodeIndex, z2: NodeIndex) -> Solution {
        Solution { z1, z2 }
    }

    pub fn facility(self, facility: Facility) -> NodeIndex {
        match facility {
            Facility::F1 => self.z1,
            Facility::F2 => self.z2,
        }
    }
}

impl std::fmt::Display for Solution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.z1, self.z2)
    }
}

/// The two social objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    SocialCost,
    MaxCost,
}

impl Objective {
    pub fn evaluate(self, instance: &LineInstance, solution: Solution) -> Result<Cost> {
        match self {
            Objective::SocialCost => social_cost(instance, solution),
            Objective::MaxCost => max_cost(instance, solution),
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Objective::SocialCost => write!(f, "sc"),
            Objective::MaxCost => write!(f, "mc"),
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Objective, String> {
        match s {
            "sc" => Ok(Objective::SocialCost),
            "mc" => Ok(Objective::MaxCost),
            other => Err(format!("unknown objective {other:?}, expected sc or mc")),
        }
    }
}

fn distance(a: NodeIndex, b: NodeIndex) -> Cost {
    a.abs_diff(b) as Cost
}

/// Total distance of agent `index` to the facilities she approves.
pub fn agent_cost(instance: &LineInstance, index: usize, solution: Solution) -> Result<Cost> {
    instance.check_feasible(solution)?;
    let agent = instance.agent(index)?;
    Ok(agent_cost_unchecked(agent, solution))
}

pub(crate) fn agent_cost_unchecked(agent: &Agent, solution: Solution) -> Cost {
    let mut cost = 0;
    if agent.prefs.f1 {
        cost += distance(agent.pos, solution.z1);
    }
    if agent.prefs.f2 {
        cost += distance(agent.pos, solution.z2);
    }
    cost
}

/// Sum of all agent costs.
pub fn social_cost(instance: &LineInstance, solution: Solution) -> Result<Cost> {
    instance.check_feasible(solution)?;
    Ok(instance.agents().iter().map(|a| agent_cost_unchecked(a, solution)).sum())
}

/// Largest single agent cost.
pub fn max_cost(instance: &LineInstance, solution: Solution) -> Result<Cost> {
    instance.check_feasible(solution)?;
    Ok(instance
        .agents()
        .iter()
        .map(|a| agent_cost_unchecked(a, solution))
        .max()
        .unwrap_or(0))
}

/// An instance re-indexed to the part of the line that is occupied, from
/// the first to the last occupied node, plus the offset for mapping
/// solutions back to the original indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupiedWindow {
    pub instance: LineInstance,
    /// `original position = window position + offset`.
    pub offset: u32,
}

impl OccupiedWindow {
    pub fn to_original(&self, solution: Solution) -> Solution {
        Solution { z1: solution.z1 + self.offset, z2: solution.z2 + self.offset }
    }
}

/// Restricts an instance to its occupied window. Interior empty nodes are
/// preserved; leading and trailing empty nodes are dropped.
pub fn occupied_window(instance: &LineInstance) -> OccupiedWindow {
    let first = instance.agents()[0].pos;
    let last = instance.agents()[instance.n() - 1].pos;
    let offset = first - 1;
    let agents = instance
        .agents()
        .iter()
        .map(|a| Agent { pos: a.pos - offset, prefs: a.prefs })
        .collect();
    let windowed = LineInstance { m: last - offset, agents };
    OccupiedWindow { instance: windowed, offset }
}

/// Reflects an instance around the line's midpoint: position `x` becomes
/// `m + 1 - x`, approval pairs travel with their agents. An involution.
pub fn mirror_instance(instance: &LineInstance) -> LineInstance {
    let m = instance.m();
    let mut agents: Vec<Agent> = instance
        .agents()
        .iter()
        .map(|a| Agent { pos: m + 1 - a.pos, prefs: a.prefs })
        .collect();
    agents.reverse();
    LineInstance { m, agents }
}

/// Maps a solution through the reflection of a line with `m` nodes.
pub fn mirror_solution(m: NodeIndex, solution: Solution) -> Solution {
    Solution { z1: m + 1 - solution.z1, z2: m + 1 - solution.z2 }
}
