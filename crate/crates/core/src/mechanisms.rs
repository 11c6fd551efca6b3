//! The deterministic mechanisms: fixed-or-median-nearest-empty for the
//! social cost, the three-agent priority dictatorship, the left-right
//! family for the maximum cost, and the two-extremes baseline.
//!
//! Every mechanism returns a feasible solution for every structurally
//! valid instance. Agents that approve neither facility are only
//! representable in the widened preference domain; the mechanisms stay
//! total there through fixed, report-independent fallbacks documented on
//! each function.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{
    mirror_instance, mirror_solution, occupied_window, Facility, LineInstance, NodeIndex, Solution,
};

/// Addressable mechanism identifiers, as used by the CLI and the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MechanismId {
    /// `fmne`
    Fmne,
    /// `pd3`, defined on three-agent instances only.
    PriorityDictatorship,
    /// `alr:<alpha>` with a fixed split point.
    AlphaLeftRight(u32),
    /// `alr:auto`, split point chosen from the occupied window's parity.
    AlphaLeftRightAuto,
    /// `two-extremes`
    TwoExtremes,
}

impl MechanismId {
    pub fn apply(self, instance: &LineInstance) -> Result<Solution> {
        match self {
            MechanismId::Fmne => Ok(fmne(instance)),
            MechanismId::PriorityDictatorship => priority_dictatorship(instance),
            MechanismId::AlphaLeftRight(alpha) => alpha_left_right(instance, alpha),
            MechanismId::AlphaLeftRightAuto => Ok(lr_for_parity(instance)),
            MechanismId::TwoExtremes => Ok(two_extremes(instance)),
        }
    }

    /// Whether the instance lies in this mechanism's domain.
    pub fn admits(self, instance: &LineInstance) -> bool {
        match self {
            MechanismId::PriorityDictatorship => instance.n() == 3,
            MechanismId::AlphaLeftRight(alpha) => {
                let window = occupied_window(instance).instance;
                alpha >= 1 && alpha < window.m()
            }
            _ => true,
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MechanismId::Fmne => write!(f, "fmne"),
            MechanismId::PriorityDictatorship => write!(f, "pd3"),
            MechanismId::AlphaLeftRight(alpha) => write!(f, "alr:{alpha}"),
            MechanismId::AlphaLeftRightAuto => write!(f, "alr:auto"),
            MechanismId::TwoExtremes => write!(f, "two-extremes"),
        }
    }
}

impl FromStr for MechanismId {
    type Err = Error;

    fn from_str(s: &str) -> Result<MechanismId> {
        match s {
            "fmne" => Ok(MechanismId::Fmne),
            "pd3" => Ok(MechanismId::PriorityDictatorship),
            "alr:auto" => Ok(MechanismId::AlphaLeftRightAuto),
            "two-extremes" => Ok(MechanismId::TwoExtremes),
            other => match other.strip_prefix("alr:").and_then(|a| a.parse::<u32>().ok()) {
                Some(alpha) => Ok(MechanismId::AlphaLeftRight(alpha)),
                None => Err(Error::UnknownMechanism(other.to_string())),
            },
        }
    }
}

/// The leftmost median of a non-empty sorted position list: the element at
/// rank `ceil(k/2)` (1-based) of a `k`-element list.
pub fn leftmost_median(positions: &[NodeIndex]) -> Result<NodeIndex> {
    if positions.is_empty() {
        return Err(Error::EmptyPositionList);
    }
    Ok(positions[(positions.len() - 1) / 2])
}

/// Position of the leftmost median approver of `facility`; if nobody
/// approves it, the leftmost occupied node serves as a report-independent
/// anchor.
fn median_or_leftmost(instance: &LineInstance, facility: Facility) -> NodeIndex {
    let positions = instance.approver_positions(facility);
    if positions.is_empty() {
        instance.agents()[0].pos
    } else {
        leftmost_median(&positions).expect("non-empty position list")
    }
}

/// Fixed-or-median-nearest-empty.
///
/// With no empty nodes the facilities go to the two central nodes
/// `(floor(n/2), floor(n/2)+1)` regardless of reports. Otherwise facility 1
/// goes to the leftmost median approver of facility 1, and facility 2 to
/// the empty node nearest to the leftmost median approver of facility 2,
/// ties in favor of the rightmost such empty node. The output is feasible
/// by construction: in the second branch facility 1 sits on an occupied
/// node and facility 2 on an empty one.
pub fn fmne(instance: &LineInstance) -> Solution {
    let n = instance.n() as u32;
    if !instance.has_empty_nodes() {
        return Solution::new(n / 2, n / 2 + 1);
    }
    let z1 = median_or_leftmost(instance, Facility::F1);
    let y2 = median_or_leftmost(instance, Facility::F2);
    let z2 = nearest_empty_tie_right(instance, y2);
    Solution::new(z1, z2)
}

/// Empty node minimizing the distance to `target`, ties to the rightmost.
fn nearest_empty_tie_right(instance: &LineInstance, target: NodeIndex) -> NodeIndex {
    instance
        .empty_nodes()
        .into_iter()
        .min_by_key(|&e| (e.abs_diff(target), std::cmp::Reverse(e)))
        .expect("caller guarantees at least one empty node")
}

/// Three-agent priority dictatorship.
///
/// Orients the line so the central agent is at least as close to the right
/// agent as to the left one (strictly farther triggers a mirrored
/// evaluation), then serves the central agent first and the right agent
/// second; the left agent's report is ignored. A central agent approving
/// neither facility (widened domain only) is treated as approving both,
/// which keeps her cost at zero either way.
pub fn priority_dictatorship(instance: &LineInstance) -> Result<Solution> {
    if instance.n() != 3 {
        return Err(Error::AgentCountMismatch { expected: 3, got: instance.n() });
    }
    let agents = instance.agents();
    let (left, center, right) = (agents[0], agents[1], agents[2]);
    if right.pos - center.pos > center.pos - left.pos {
        let mirrored = mirror_instance(instance);
        let solution = priority_dictatorship(&mirrored)?;
        return Ok(mirror_solution(instance.m(), solution));
    }

    let c = center.prefs;
    let r = right.prefs;
    let solution = if c.f1 && !c.f2 {
        if r.f2 {
            Solution::new(center.pos, right.pos)
        } else {
            Solution::new(center.pos, left.pos)
        }
    } else if c.f2 && !c.f1 {
        if r.f1 {
            Solution::new(right.pos, center.pos)
        } else {
            Solution::new(left.pos, center.pos)
        }
    } else {
        // c approves both (or, in the widened domain, neither).
        if r.f2 {
            Solution::new(center.pos, center.pos + 1)
        } else {
            Solution::new(center.pos + 1, center.pos)
        }
    };
    Ok(solution)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Left,
    Right,
}

/// Median node of the sub-line spanned by a non-empty set of agent
/// positions, ties in favor of the node farther from the split point: the
/// lower candidate on the left part, the upper one on the right part.
fn span_median(positions: &[NodeIndex], part: Part) -> NodeIndex {
    let lo = positions[0];
    let hi = *positions.last().expect("non-empty span");
    match part {
        Part::Left => (lo + hi) / 2,
        Part::Right => (lo + hi).div_ceil(2),
    }
}

/// The left-right mechanism with split point `alpha` on the occupied
/// window.
///
/// The window is cut into a left part (nodes `1..=alpha`) and a right part
/// (`alpha+1..=m'`). If the approvers of the two facilities are exactly
/// the occupants of the two distinct parts, each facility goes to the
/// median node of the sub-line its part's occupants span. If only one
/// facility's approvers fit inside a single part, that facility goes to
/// the median node of the sub-line spanned by that part's occupants and
/// the other facility to the boundary node of the opposite part. Otherwise
/// both facilities go to the two boundary nodes. Median ties always favor
/// the node farther from the split point. When several `(facility, part)`
/// pairs qualify for the middle case, facility 1 is preferred over
/// facility 2 and the left part over the right.
///
/// A facility nobody approves selects the part whose occupants span the
/// wider segment, ties to the left. The choice is what strategyproofness
/// pins down: an agent who stops approving an otherwise-unapproved
/// facility must not be able to drag it closer to herself, so the
/// placement has to coincide with the one her own part would have
/// received, and only the wider part's median is safe for both sides.
pub fn alpha_left_right(instance: &LineInstance, alpha: u32) -> Result<Solution> {
    let window = occupied_window(instance);
    let window_m = window.instance.m();
    if alpha < 1 || alpha >= window_m {
        return Err(Error::AlphaOutOfRange { alpha, max: window_m - 1, window: window_m });
    }
    let solution = alpha_left_right_on_window(&window.instance, alpha);
    Ok(window.to_original(solution))
}

fn alpha_left_right_on_window(instance: &LineInstance, alpha: u32) -> Solution {
    let n1 = instance.approver_positions(Facility::F1);
    let n2 = instance.approver_positions(Facility::F2);
    let left: Vec<NodeIndex> =
        instance.agents().iter().map(|a| a.pos).filter(|&p| p <= alpha).collect();
    let right: Vec<NodeIndex> =
        instance.agents().iter().map(|a| a.pos).filter(|&p| p > alpha).collect();
    // The window's end nodes are occupied, so both parts hold agents.
    debug_assert!(!left.is_empty() && !right.is_empty());

    // Case 1: the two facilities' approvers are exactly the occupants of
    // the two distinct parts.
    for (x, y) in [(Part::Left, Part::Right), (Part::Right, Part::Left)] {
        let occupants = |part| match part {
            Part::Left => &left,
            Part::Right => &right,
        };
        if n1 == *occupants(x) && n2 == *occupants(y) {
            return Solution::new(span_median(occupants(x), x), span_median(occupants(y), y));
        }
    }

    // Case 2: some facility's approvers all sit inside one part.
    let subset = |approvers: &[NodeIndex], part: Part| match part {
        Part::Left => approvers.iter().all(|&p| p <= alpha),
        Part::Right => approvers.iter().all(|&p| p > alpha),
    };
    for (facility, part) in [
        (Facility::F1, Part::Left),
        (Facility::F1, Part::Right),
        (Facility::F2, Part::Left),
        (Facility::F2, Part::Right),
    ] {
        let approvers = match facility {
            Facility::F1 => &n1,
            Facility::F2 => &n2,
        };
        if !subset(approvers, part) {
            continue;
        }
        let part = if approvers.is_empty() {
            let left_width = left.last().unwrap() - left[0];
            let right_width = right.last().unwrap() - right[0];
            if left_width >= right_width {
                Part::Left
            } else {
                Part::Right
            }
        } else {
            part
        };
        let occupants = match part {
            Part::Left => &left,
            Part::Right => &right,
        };
        let own = span_median(occupants, part);
        let other = match part {
            Part::Left => alpha + 1,
            Part::Right => alpha,
        };
        return match facility {
            Facility::F1 => Solution::new(own, other),
            Facility::F2 => Solution::new(other, own),
        };
    }

    // Case 3: both parts mix approvers of both facilities.
    Solution::new(alpha, alpha + 1)
}

/// Left-right with the split point the maximum-cost analysis calls for:
/// half the occupied window, rounded up on odd window sizes.
pub fn lr_for_parity(instance: &LineInstance) -> Solution {
    let window_m = occupied_window(instance).instance.m();
    let alpha = if window_m.is_multiple_of(2) { window_m / 2 } else { window_m.div_ceil(2) };
    alpha_left_right(instance, alpha).expect("alpha in 1..window by construction")
}

/// Two-extremes baseline: facility 1 at the leftmost approver of facility
/// 1, facility 2 at the rightmost approver of facility 2. A facility
/// nobody approves falls back to the corresponding end of the occupied
/// range. On a collision, facility 2 moves one node toward the side of the
/// line with more room (rightward on ties).
pub fn two_extremes(instance: &LineInstance) -> Solution {
    let n1 = instance.approver_positions(Facility::F1);
    let n2 = instance.approver_positions(Facility::F2);
    let z1 = n1.first().copied().unwrap_or_else(|| instance.agents()[0].pos);
    let z2 = n2.last().copied().unwrap_or_else(|| instance.agents()[instance.n() - 1].pos);
    if z1 != z2 {
        return Solution::new(z1, z2);
    }
    let m = instance.m();
    let moved = if z2 - 1 <= m - z2 { z2 + 1 } else { z2 - 1 };
    Solution::new(z1, moved)
}
