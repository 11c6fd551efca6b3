//! Ground truth: brute-force optima over all feasible solutions, and the
//! analytic lower bounds on optimal costs used by the ratio analyses. The
//! brute force deliberately enumerates every ordered pair without symmetry
//! shortcuts; it is the trust anchor everything else is checked against.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::{Cost, LineInstance, NodeIndex, Objective, Solution};
use crate::Rational;

/// An exact optimum together with a solution attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptResult {
    pub value: Cost,
    /// The lexicographically smallest minimizer (by `z1`, then `z2`).
    pub witness: Solution,
}

/// Exact minimum of `objective` over all `m * (m - 1)` ordered feasible
/// pairs.
pub fn optimal_cost(instance: &LineInstance, objective: Objective) -> OptResult {
    let m = instance.m();
    let mut best: Option<OptResult> = None;
    for z1 in 1..=m {
        for z2 in 1..=m {
            if z1 == z2 {
                continue;
            }
            let solution = Solution::new(z1, z2);
            let value = objective
                .evaluate(instance, solution)
                .expect("enumerated solutions are feasible");
            // Lexicographic enumeration order makes the first strict
            // improvement the canonical witness.
            if best.is_none_or(|b| value < b.value) {
                best = Some(OptResult { value, witness: solution });
            }
        }
    }
    best.expect("every instance has m >= 2 nodes")
}

/// Lower bound on the optimal social cost from the approval counts alone:
/// `(n1^2 + n2^2 - [n1 odd] - [n2 odd]) / 4`.
pub fn sc_lower_bound(n1: u32, n2: u32) -> Rational {
    let term = |k: u32| {
        let k = k as i64;
        k * k - (k % 2)
    };
    Rational::new(term(n1) + term(n2), 4)
}

/// Lower bound on the optimal maximum cost from two agents at `x < y` that
/// both approve `q` facilities: `q * (y - x) / 2`.
pub fn mc_lower_bound_pair(x: NodeIndex, y: NodeIndex, q: u8) -> Result<Rational> {
    if y <= x {
        return Err(Error::PairBoundOrder { x, y });
    }
    if q > 2 {
        return Err(Error::PairBoundCount(q));
    }
    Ok(Rational::new(q as i64 * (y - x) as i64, 2))
}

/// Lower bound on the optimal maximum cost from an agent at `x` approving
/// both facilities, one at `y > x` approving facility 1 and one at `z > y`
/// approving facility 2: `ceil((y + z - 2x) / 3)`.
pub fn mc_lower_bound_triple(x: NodeIndex, y: NodeIndex, z: NodeIndex) -> Result<Cost> {
    if !(x < y && y < z) {
        return Err(Error::TripleBoundOrder { x, y, z });
    }
    let spread = (y + z - 2 * x) as Cost;
    Ok(spread.div_ceil(3))
}

/// Overhead term of the worst-case social-cost ratio in the
/// median-nearest-empty analysis, as an exact function of the two approval
/// counts: `(y^2 + 4xy + 2y + 1) / (x^2 + y^2 - 2)`.
///
/// For `x + y >= 6` the term never exceeds `13/4`, which caps the overall
/// ratio at `17/4`; the maximum is attained at `(3, 3)`.
pub fn fmne_ratio_term(x: u64, y: u64) -> Result<Rational> {
    let (xi, yi) = (x as i64, y as i64);
    let den = xi * xi + yi * yi - 2;
    if den <= 0 {
        return Err(Error::RatioTermDomain { x, y });
    }
    Ok(Rational::new(yi * yi + 4 * xi * yi + 2 * yi + 1, den))
}

/// Scans the ratio term over `x + y >= 6`, `x, y <= cap` and returns the
/// maximum with the first grid point attaining it (row-major order).
pub fn fmne_ratio_term_max(cap: u64) -> (Rational, (u64, u64)) {
    let mut best = (Rational::zero(), (0, 0));
    for x in 0..=cap {
        for y in 0..=cap {
            if x + y < 6 {
                continue;
            }
            let value = fmne_ratio_term(x, y).expect("x + y >= 6 keeps the denominator positive");
            if value > best.0 {
                best = (value, (x, y));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Agent, ApprovalPair};

    fn instance(m: u32, agents: &[(u32, ApprovalPair)]) -> LineInstance {
        LineInstance::new(m, agents.iter().map(|&(p, t)| Agent::new(p, t)).collect()).unwrap()
    }

    const F1: ApprovalPair = ApprovalPair::F1_ONLY;
    const F2: ApprovalPair = ApprovalPair::F2_ONLY;
    const BOTH: ApprovalPair = ApprovalPair::BOTH;

    #[test]
    fn optimal_social_cost_of_tightness_instances() {
        let fixed = instance(5, &[(1, F2), (2, F2), (3, F1), (4, F1), (5, F1)]);
        let opt = optimal_cost(&fixed, Objective::SocialCost);
        assert_eq!(opt.value, 3);

        let empty = instance(7, &[(1, F2), (2, F2), (3, F2), (4, F1), (5, F1), (6, F1)]);
        let opt = optimal_cost(&empty, Objective::SocialCost);
        assert_eq!(opt.value, 4);
        assert_eq!(opt.witness, Solution::new(5, 2));
    }

    #[test]
    fn optimal_max_cost_on_three_agents() {
        let inst = instance(3, &[(1, F1), (2, F2), (3, F1)]);
        let opt = optimal_cost(&inst, Objective::MaxCost);
        assert_eq!(opt.value, 1);
        // (2,1) and (2,3) both attain 1; (2,1) is lexicographically first.
        assert_eq!(opt.witness, Solution::new(2, 1));
    }

    #[test]
    fn optimal_witness_replays_to_its_value() {
        let inst = instance(6, &[(1, BOTH), (3, F2), (4, F1), (6, BOTH)]);
        for objective in [Objective::SocialCost, Objective::MaxCost] {
            let opt = optimal_cost(&inst, objective);
            assert_eq!(objective.evaluate(&inst, opt.witness).unwrap(), opt.value);
        }
    }

    #[test]
    fn sc_lower_bound_values() {
        assert_eq!(sc_lower_bound(3, 3), Rational::from_integer(4));
        assert_eq!(sc_lower_bound(0, 0), Rational::from_integer(0));
        assert_eq!(sc_lower_bound(2, 2), Rational::from_integer(2));
        assert_eq!(sc_lower_bound(1, 2), Rational::new(4, 4));
    }

    #[test]
    fn mc_pair_bound_values() {
        assert_eq!(mc_lower_bound_pair(1, 3, 2).unwrap(), Rational::from_integer(2));
        assert_eq!(mc_lower_bound_pair(1, 4, 1).unwrap(), Rational::new(3, 2));
        assert_eq!(mc_lower_bound_pair(2, 7, 0).unwrap(), Rational::zero());
        assert!(matches!(mc_lower_bound_pair(3, 3, 1), Err(Error::PairBoundOrder { .. })));
        assert!(matches!(mc_lower_bound_pair(1, 2, 3), Err(Error::PairBoundCount(3))));
    }

    #[test]
    fn mc_triple_bound_values_cross_checked_by_brute_force() {
        assert_eq!(mc_lower_bound_triple(1, 4, 5).unwrap(), 3);
        assert_eq!(mc_lower_bound_triple(1, 2, 3).unwrap(), 1);
        assert_eq!(mc_lower_bound_triple(2, 5, 8).unwrap(), 3);
        assert!(matches!(mc_lower_bound_triple(2, 2, 4), Err(Error::TripleBoundOrder { .. })));

        // The bound must hold on the matching three-agent instances.
        for (x, y, z, m) in [(1u32, 4u32, 5u32, 5u32), (1, 2, 3, 3), (2, 5, 8, 8)] {
            let inst = instance(m, &[(x, BOTH), (y, F1), (z, F2)]);
            let opt = optimal_cost(&inst, Objective::MaxCost);
            assert!(mc_lower_bound_triple(x, y, z).unwrap() <= opt.value);
        }
    }

    #[test]
    fn ratio_term_values() {
        assert_eq!(fmne_ratio_term(3, 3).unwrap(), Rational::new(13, 4));
        assert_eq!(fmne_ratio_term(3, 4).unwrap(), Rational::new(73, 23));
        assert_eq!(fmne_ratio_term(2, 4).unwrap(), Rational::new(19, 6));
        assert!(matches!(fmne_ratio_term(1, 1), Err(Error::RatioTermDomain { .. })));
    }

    #[test]
    fn ratio_term_peaks_at_three_three() {
        let (max, argmax) = fmne_ratio_term_max(40);
        assert_eq!(max, Rational::new(13, 4));
        assert_eq!(argmax, (3, 3));
    }
}
