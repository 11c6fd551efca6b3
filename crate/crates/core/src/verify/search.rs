//! Backtracking search over mechanism tables.
//!
//! A mechanism table assigns one feasible solution to every preference
//! profile of a family that shares a single position profile. The search
//! asks: does any table exist whose every entry beats a given
//! approximation-ratio cap while no in-family single-agent deviation is
//! profitable? `Unsat` is an exhaustion certificate: no such mechanism
//! can exist on that family, machine-checking a lower-bound argument.
//! `Sat` returns the lexicographically first witness table.

use crate::error::{Error, Result};
use crate::instance::{
    agent_cost, ApprovalPair, Cost, LineInstance, NodeIndex, Objective, Solution,
};
use crate::oracle::optimal_cost;
use crate::verify::enumerate::PrefDomain;
use crate::Rational;

/// Preference profiles over one fixed position profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileFamily {
    m: NodeIndex,
    positions: Vec<NodeIndex>,
    profiles: Vec<Vec<ApprovalPair>>,
}

impl ProfileFamily {
    /// Every profile of `domain` over the given positions.
    pub fn full(m: NodeIndex, positions: Vec<NodeIndex>, domain: PrefDomain) -> Result<ProfileFamily> {
        let n = positions.len();
        let probe: Vec<ApprovalPair> = vec![ApprovalPair::BOTH; n];
        let family = ProfileFamily { m, positions, profiles: vec![probe] };
        family.instance(0)?; // validates m and positions
        let profiles = domain.profiles(n).collect();
        Ok(ProfileFamily { profiles, ..family })
    }

    /// Builds a family from explicit instances, which must agree on the
    /// line size and position profile.
    pub fn from_instances(instances: &[LineInstance]) -> Result<ProfileFamily> {
        let first = instances.first().ok_or(Error::EmptyFamily)?;
        let positions: Vec<NodeIndex> = first.agents().iter().map(|a| a.pos).collect();
        let mut profiles = Vec::with_capacity(instances.len());
        for instance in instances {
            let got: Vec<NodeIndex> = instance.agents().iter().map(|a| a.pos).collect();
            if instance.m() != first.m() || got != positions {
                return Err(Error::MixedFamilyPositions { expected: positions, got });
            }
            profiles.push(instance.agents().iter().map(|a| a.prefs).collect());
        }
        Ok(ProfileFamily { m: first.m(), positions, profiles })
    }

    pub fn m(&self) -> NodeIndex {
        self.m
    }

    pub fn positions(&self) -> &[NodeIndex] {
        &self.positions
    }

    pub fn profiles(&self) -> &[Vec<ApprovalPair>] {
        &self.profiles
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// The instance realizing profile `index`.
    pub fn instance(&self, index: usize) -> Result<LineInstance> {
        let profile = &self.profiles[index];
        if profile.len() != self.positions.len() {
            return Err(Error::ProfileLengthMismatch {
                expected: self.positions.len(),
                got: profile.len(),
            });
        }
        let agents = self
            .positions
            .iter()
            .zip(profile)
            .map(|(&pos, &prefs)| crate::instance::Agent::new(pos, prefs))
            .collect();
        LineInstance::new(self.m, agents)
    }

    /// Directed deviation edges: `(from, agent, to)` whenever the two
    /// profiles differ in exactly that one agent's report. Only in-family
    /// pairs induce constraints.
    fn deviation_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut edges = Vec::new();
        for from in 0..self.profiles.len() {
            for to in 0..self.profiles.len() {
                if from == to {
                    continue;
                }
                let differing: Vec<usize> = (0..self.positions.len())
                    .filter(|&i| self.profiles[from][i] != self.profiles[to][i])
                    .collect();
                if let [agent] = differing[..] {
                    edges.push((from, agent, to));
                }
            }
        }
        edges
    }
}

/// Feasible solutions of `instance` whose objective value beats
/// `bound * optimum`, strictly or (in non-strict mode) weakly. These are
/// the only solutions a mechanism better than `bound`-approximate may
/// output, hence the candidate sets of the table search.
pub fn capped_solutions(
    instance: &LineInstance,
    objective: Objective,
    bound: Rational,
    strict: bool,
) -> Vec<Solution> {
    let optimum = optimal_cost(instance, objective).value;
    let cap = bound * Rational::from_integer(optimum as i64);
    let m = instance.m();
    let mut solutions = Vec::new();
    for z1 in 1..=m {
        for z2 in 1..=m {
            if z1 == z2 {
                continue;
            }
            let solution = Solution::new(z1, z2);
            let value = Rational::from_integer(
                objective.evaluate(instance, solution).expect("feasible by construction") as i64,
            );
            if (strict && value < cap) || (!strict && value <= cap) {
                solutions.push(solution);
            }
        }
    }
    solutions
}

/// Outcome of the table search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableSearchResult {
    /// No table satisfies the cap and all deviation constraints.
    Unsat,
    /// A witness table, indexed like the family's profiles.
    Sat(Vec<Solution>),
}

impl TableSearchResult {
    pub fn is_unsat(&self) -> bool {
        matches!(self, TableSearchResult::Unsat)
    }
}

/// A broken promise found while replaying a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableConstraintViolation {
    LengthMismatch { expected: usize, got: usize },
    RatioCap { profile: usize, value: Cost, optimal: Cost },
    Deviation { profile: usize, agent: usize, deviated_profile: usize, true_cost: Cost, deviated_cost: Cost },
}

impl std::fmt::Display for TableConstraintViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableConstraintViolation::LengthMismatch { expected, got } => {
                write!(f, "table has {got} entries for {expected} profiles")
            }
            TableConstraintViolation::RatioCap { profile, value, optimal } => {
                write!(f, "profile {profile}: value {value} misses the cap against optimum {optimal}")
            }
            TableConstraintViolation::Deviation {
                profile,
                agent,
                deviated_profile,
                true_cost,
                deviated_cost,
            } => write!(
                f,
                "profile {profile}: agent {agent} gains by deviating to profile \
                 {deviated_profile} ({true_cost} -> {deviated_cost})"
            ),
        }
    }
}

struct SearchContext {
    /// `costs[p][i]` maps solutions to agent `i`'s cost under profile `p`.
    instances: Vec<LineInstance>,
    edges: Vec<(usize, usize, usize)>,
    /// Edges grouped per unordered profile pair for forward checking.
    neighbors: Vec<Vec<(usize, usize)>>, // profile -> [(other, differing agent)]
}

impl SearchContext {
    fn build(family: &ProfileFamily) -> Result<SearchContext> {
        let instances: Result<Vec<LineInstance>> =
            (0..family.len()).map(|p| family.instance(p)).collect();
        let instances = instances?;
        let edges = family.deviation_edges();
        let mut neighbors = vec![Vec::new(); family.len()];
        for &(from, agent, to) in &edges {
            if from < to {
                neighbors[from].push((to, agent));
                neighbors[to].push((from, agent));
            }
        }
        Ok(SearchContext { instances, edges, neighbors })
    }

    fn cost(&self, profile: usize, agent: usize, solution: Solution) -> Cost {
        agent_cost(&self.instances[profile], agent, solution).expect("solutions stay feasible")
    }

    /// Both directed constraints between a pair of profiles differing at
    /// `agent`: neither side's truthful agent may prefer the other entry.
    fn pair_consistent(
        &self,
        a: usize,
        sa: Solution,
        b: usize,
        sb: Solution,
        agent: usize,
    ) -> bool {
        self.cost(a, agent, sa) <= self.cost(a, agent, sb)
            && self.cost(b, agent, sb) <= self.cost(b, agent, sa)
    }
}

/// Searches for a mechanism table on `family` beating `bound` under
/// `objective`, subject to every in-family deviation constraint.
///
/// Assignment proceeds in family order with candidates in lexicographic
/// solution order and forward checking after each assignment, so a `Sat`
/// result is the lexicographically smallest witness and the outcome is
/// deterministic.
pub fn search_tables(
    family: &ProfileFamily,
    objective: Objective,
    bound: Rational,
    strict: bool,
) -> Result<TableSearchResult> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let ctx = SearchContext::build(family)?;
    let domains: Vec<Vec<Solution>> = ctx
        .instances
        .iter()
        .map(|instance| capped_solutions(instance, objective, bound, strict))
        .collect();
    if domains.iter().any(Vec::is_empty) {
        return Ok(TableSearchResult::Unsat);
    }
    let mut assignment: Vec<Option<Solution>> = vec![None; family.len()];
    if assign(&ctx, &domains, &mut assignment, 0) {
        let table = assignment.into_iter().map(|s| s.expect("complete assignment")).collect();
        Ok(TableSearchResult::Sat(table))
    } else {
        Ok(TableSearchResult::Unsat)
    }
}

fn assign(
    ctx: &SearchContext,
    domains: &[Vec<Solution>],
    assignment: &mut Vec<Option<Solution>>,
    profile: usize,
) -> bool {
    if profile == domains.len() {
        return true;
    }
    'candidates: for &candidate in &domains[profile] {
        // Check against already-assigned neighbors, then make sure every
        // unassigned neighbor still has a consistent option left.
        for &(other, agent) in &ctx.neighbors[profile] {
            match assignment[other] {
                Some(assigned) => {
                    let (a, sa, b, sb) = if other < profile {
                        (other, assigned, profile, candidate)
                    } else {
                        (profile, candidate, other, assigned)
                    };
                    if !ctx.pair_consistent(a, sa, b, sb, agent) {
                        continue 'candidates;
                    }
                }
                None => {
                    let viable = domains[other].iter().any(|&option| {
                        ctx.pair_consistent(profile, candidate, other, option, agent)
                    });
                    if !viable {
                        continue 'candidates;
                    }
                }
            }
        }
        assignment[profile] = Some(candidate);
        if assign(ctx, domains, assignment, profile + 1) {
            return true;
        }
        assignment[profile] = None;
    }
    false
}

/// Replays a table against every cap and deviation constraint.
pub fn verify_table(
    family: &ProfileFamily,
    objective: Objective,
    bound: Rational,
    strict: bool,
    table: &[Solution],
) -> Result<std::result::Result<(), TableConstraintViolation>> {
    if table.len() != family.len() {
        return Ok(Err(TableConstraintViolation::LengthMismatch {
            expected: family.len(),
            got: table.len(),
        }));
    }
    let ctx = SearchContext::build(family)?;
    for (profile, &solution) in table.iter().enumerate() {
        let instance = &ctx.instances[profile];
        instance.check_feasible(solution)?;
        let value = objective.evaluate(instance, solution)?;
        let optimal = optimal_cost(instance, objective).value;
        let cap = bound * Rational::from_integer(optimal as i64);
        let value_ratio = Rational::from_integer(value as i64);
        let beats = if strict { value_ratio < cap } else { value_ratio <= cap };
        if !beats {
            return Ok(Err(TableConstraintViolation::RatioCap { profile, value, optimal }));
        }
    }
    for &(from, agent, to) in &ctx.edges {
        let true_cost = ctx.cost(from, agent, table[from]);
        let deviated_cost = ctx.cost(from, agent, table[to]);
        if deviated_cost < true_cost {
            return Ok(Err(TableConstraintViolation::Deviation {
                profile: from,
                agent,
                deviated_profile: to,
                true_cost,
                deviated_cost,
            }));
        }
    }
    Ok(Ok(()))
}
