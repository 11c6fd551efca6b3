//! Empirical checks of the analytic lower bounds on optimal costs: every
//! bound must stay below the brute-force optimum on every instance (or
//! qualifying agent configuration) of a family.

use crate::error::Result;
use crate::instance::{Facility, LineInstance, Objective};
use crate::oracle::{mc_lower_bound_pair, mc_lower_bound_triple, optimal_cost, sc_lower_bound};
use crate::verify::enumerate::InstanceFamily;
use crate::Rational;

/// A bound that exceeded the true optimum, which would disprove the
/// corresponding inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub instance: LineInstance,
    pub bound: Rational,
    pub optimal: u64,
    pub detail: String,
}

impl std::fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} claims at least {} but the optimum is {} on [{}]",
            self.detail, self.bound, self.optimal, self.instance
        )
    }
}

/// Checks `sc_lower_bound(n1, n2) <= SC*` on every instance of the family.
/// Returns the number of instances checked.
pub fn check_sc_bound(family: &InstanceFamily) -> Result<std::result::Result<u64, BoundViolation>> {
    let mut checked = 0;
    for instance in family.iter() {
        let n1 = instance.approver_positions(Facility::F1).len() as u32;
        let n2 = instance.approver_positions(Facility::F2).len() as u32;
        let bound = sc_lower_bound(n1, n2);
        let optimal = optimal_cost(&instance, Objective::SocialCost).value;
        if bound > Rational::from_integer(optimal as i64) {
            return Ok(Err(BoundViolation {
                bound,
                optimal,
                detail: format!("sc bound for approval counts ({n1},{n2})"),
                instance,
            }));
        }
        checked += 1;
    }
    Ok(Ok(checked))
}

/// Checks the pairwise max-cost bound on every agent pair of every
/// instance: two agents sharing `q` approvals at distance `d` force an
/// optimum of at least `q * d / 2`. Returns the number of pairs checked.
pub fn check_mc_pair_bound(
    family: &InstanceFamily,
) -> Result<std::result::Result<u64, BoundViolation>> {
    let mut checked = 0;
    for instance in family.iter() {
        let optimal = optimal_cost(&instance, Objective::MaxCost).value;
        let agents = instance.agents();
        for i in 0..agents.len() {
            for j in i + 1..agents.len() {
                let shared = (agents[i].prefs.f1 && agents[j].prefs.f1) as u8
                    + (agents[i].prefs.f2 && agents[j].prefs.f2) as u8;
                let bound = mc_lower_bound_pair(agents[i].pos, agents[j].pos, shared)?;
                checked += 1;
                if bound > Rational::from_integer(optimal as i64) {
                    return Ok(Err(BoundViolation {
                        bound,
                        optimal,
                        detail: format!(
                            "mc pair bound for agents at {} and {} sharing {shared}",
                            agents[i].pos, agents[j].pos
                        ),
                        instance,
                    }));
                }
            }
        }
    }
    Ok(Ok(checked))
}

/// Checks the three-agent max-cost bound on every qualifying triple: an
/// agent approving both facilities left of a facility-1 approver left of a
/// facility-2 approver. Returns the number of triples checked.
pub fn check_mc_triple_bound(
    family: &InstanceFamily,
) -> Result<std::result::Result<u64, BoundViolation>> {
    let mut checked = 0;
    for instance in family.iter() {
        let optimal = optimal_cost(&instance, Objective::MaxCost).value;
        let agents = instance.agents();
        for a in agents.iter().filter(|a| a.prefs.f1 && a.prefs.f2) {
            for b in agents.iter().filter(|b| b.prefs.f1 && b.pos > a.pos) {
                for c in agents.iter().filter(|c| c.prefs.f2 && c.pos > b.pos) {
                    let bound = mc_lower_bound_triple(a.pos, b.pos, c.pos)?;
                    checked += 1;
                    if bound > optimal {
                        return Ok(Err(BoundViolation {
                            bound: Rational::from_integer(bound as i64),
                            optimal,
                            detail: format!(
                                "mc triple bound for agents at {}, {}, {}",
                                a.pos, b.pos, c.pos
                            ),
                            instance,
                        }));
                    }
                }
            }
        }
    }
    Ok(Ok(checked))
}
