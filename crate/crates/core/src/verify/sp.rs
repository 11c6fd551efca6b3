//! Exhaustive strategyproofness checking: for every agent and every
//! alternative report in the active domain, evaluate the mechanism on the
//! deviated instance and compare the agent's cost under her true
//! preferences.

use serde::Serialize;

use crate::error::Result;
use crate::instance::{agent_cost, ApprovalPair, Cost, LineInstance, Solution};
use crate::verify::enumerate::{InstanceFamily, PrefDomain};

/// A witnessed profitable misreport: replaying the mechanism on the
/// original and deviated instances reproduces `true_cost` and
/// `deviated_cost`, with `deviated_cost < true_cost`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpViolation {
    pub instance: LineInstance,
    pub agent_index: usize,
    pub misreport: ApprovalPair,
    pub true_cost: Cost,
    pub deviated_cost: Cost,
}

impl SpViolation {
    /// Re-derives both costs from scratch and confirms the strict gain.
    pub fn replay<F>(&self, mechanism: F) -> Result<bool>
    where
        F: Fn(&LineInstance) -> Result<Solution>,
    {
        let truthful = mechanism(&self.instance)?;
        let true_cost = agent_cost(&self.instance, self.agent_index, truthful)?;
        let deviated_instance = self.instance.with_prefs(self.agent_index, self.misreport)?;
        let deviated_solution = mechanism(&deviated_instance)?;
        let deviated_cost = agent_cost(&self.instance, self.agent_index, deviated_solution)?;
        Ok(true_cost == self.true_cost
            && deviated_cost == self.deviated_cost
            && deviated_cost < true_cost)
    }
}

/// Returns the first profitable misreport for `instance`, scanning agents
/// in order and alternative reports in the domain's fixed order, or `None`
/// if truth-telling is optimal for everyone.
pub fn check_strategyproof<F>(
    mechanism: F,
    instance: &LineInstance,
    domain: PrefDomain,
) -> Result<Option<SpViolation>>
where
    F: Fn(&LineInstance) -> Result<Solution>,
{
    let truthful = mechanism(instance)?;
    for (agent_index, agent) in instance.agents().iter().enumerate() {
        let true_cost = agent_cost(instance, agent_index, truthful)?;
        for &misreport in domain.reports() {
            if misreport == agent.prefs {
                continue;
            }
            let deviated_instance = instance.with_prefs(agent_index, misreport)?;
            let deviated_solution = mechanism(&deviated_instance)?;
            let deviated_cost = agent_cost(instance, agent_index, deviated_solution)?;
            if deviated_cost < true_cost {
                return Ok(Some(SpViolation {
                    instance: instance.clone(),
                    agent_index,
                    misreport,
                    true_cost,
                    deviated_cost,
                }));
            }
        }
    }
    Ok(None)
}

/// Outcome of checking a whole family, stopping at the first violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpReport {
    pub instances_checked: u64,
    pub violation: Option<SpViolation>,
}

impl SpReport {
    pub fn is_strategyproof(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every instance of the family, in enumeration order.
pub fn check_family<F>(mechanism: F, family: &InstanceFamily) -> Result<SpReport>
where
    F: Fn(&LineInstance) -> Result<Solution>,
{
    let mut checked = 0;
    for instance in family.iter() {
        checked += 1;
        if let Some(violation) = check_strategyproof(&mechanism, &instance, family.domain)? {
            return Ok(SpReport { instances_checked: checked, violation: Some(violation) });
        }
    }
    Ok(SpReport { instances_checked: checked, violation: None })
}
