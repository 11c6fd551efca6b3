//! Worst-case approximation-ratio sweeps: the exact maximum, over an
//! enumerated family, of mechanism value divided by optimal value.

use num_traits::One;

use crate::error::Result;
use crate::instance::{Cost, LineInstance, Objective, Solution};
use crate::oracle::optimal_cost;
use crate::Rational;

/// Worst-case ratio over a family. `Unbounded` records an instance where
/// the optimum is zero but the mechanism pays a positive cost, which makes
/// the supremum undefined as a finite number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxRatio {
    Bounded(Rational),
    Unbounded,
}

impl std::fmt::Display for MaxRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaxRatio::Bounded(r) => write!(f, "{r}"),
            MaxRatio::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Per-instance sweep data, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub instance_id: u64,
    pub instance: LineInstance,
    pub solution: Solution,
    pub mech_value: Cost,
    pub opt_value: Cost,
}

impl SweepRecord {
    /// Ratio contribution as a `(numerator, denominator)` pair: `1/1` when
    /// both values are zero, `value/0` when only the optimum is.
    pub fn ratio_parts(&self) -> (u64, u64) {
        if self.opt_value == 0 && self.mech_value == 0 {
            (1, 1)
        } else if self.opt_value == 0 {
            (self.mech_value, 0)
        } else {
            let ratio = Rational::new(self.mech_value as i64, self.opt_value as i64);
            (*ratio.numer() as u64, *ratio.denom() as u64)
        }
    }
}

/// Result of a sweep: the exact worst ratio, the first instance attaining
/// it, and how many instances were examined. An unbounded sweep stops at
/// its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub mechanism: String,
    pub objective: Objective,
    pub max_ratio: MaxRatio,
    pub witness: Option<SweepRecord>,
    pub instances_checked: u64,
}

/// Sweeps `mechanism` over `instances`, comparing against the brute-force
/// optimum of `objective` for each.
pub fn ratio_sweep<F, I>(
    mechanism: F,
    label: &str,
    objective: Objective,
    instances: I,
) -> Result<RatioReport>
where
    F: Fn(&LineInstance) -> Result<Solution>,
    I: IntoIterator<Item = LineInstance>,
{
    ratio_sweep_with(mechanism, label, objective, instances, |_| {})
}

/// As [`ratio_sweep`], additionally feeding every per-instance record to
/// `sink` (e.g. for CSV emission).
pub fn ratio_sweep_with<F, I, S>(
    mechanism: F,
    label: &str,
    objective: Objective,
    instances: I,
    mut sink: S,
) -> Result<RatioReport>
where
    F: Fn(&LineInstance) -> Result<Solution>,
    I: IntoIterator<Item = LineInstance>,
    S: FnMut(&SweepRecord),
{
    let mut max: Option<(Rational, SweepRecord)> = None;
    let mut checked = 0;
    for (id, instance) in instances.into_iter().enumerate() {
        let solution = mechanism(&instance)?;
        let mech_value = objective.evaluate(&instance, solution)?;
        let opt_value = optimal_cost(&instance, objective).value;
        let record =
            SweepRecord { instance_id: id as u64, instance, solution, mech_value, opt_value };
        sink(&record);
        checked += 1;
        if opt_value == 0 {
            if mech_value > 0 {
                return Ok(RatioReport {
                    mechanism: label.to_string(),
                    objective,
                    max_ratio: MaxRatio::Unbounded,
                    witness: Some(record),
                    instances_checked: checked,
                });
            }
            // Zero over zero counts as meeting the optimum exactly.
            if max.is_none() {
                max = Some((Rational::one(), record));
            }
            continue;
        }
        let ratio = Rational::new(mech_value as i64, opt_value as i64);
        if max.as_ref().is_none_or(|(best, _)| ratio > *best) {
            max = Some((ratio, record));
        }
    }
    let (max_ratio, witness) = match max {
        Some((ratio, record)) => (MaxRatio::Bounded(ratio), Some(record)),
        None => (MaxRatio::Bounded(Rational::one()), None),
    };
    Ok(RatioReport {
        mechanism: label.to_string(),
        objective,
        max_ratio,
        witness,
        instances_checked: checked,
    })
}
