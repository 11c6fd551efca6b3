use crate::instance::ApprovalPair;

/// Errors produced by instance validation, cost evaluation, mechanisms and
/// the verification tooling.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("instance needs at least 2 agents, got {0}")]
    TooFewAgents(usize),

    #[error("instance has {n} agents but only {m} nodes")]
    TooManyAgents { n: usize, m: u32 },

    #[error("agent positions must be strictly increasing within 1..={m}; offending position {pos}")]
    BadAgentPosition { pos: u32, m: u32 },

    #[error("agent with empty approval pair requires the widened preference domain")]
    EmptyPrefsNotAllowed,

    #[error("agent index {index} out of range for {n} agents")]
    AgentIndexOutOfRange { index: usize, n: usize },

    #[error("solution ({z1},{z2}) is infeasible on a line of {m} nodes")]
    InfeasibleSolution { z1: u32, z2: u32, m: u32 },

    #[error("mechanism requires exactly {expected} agents, got {got}")]
    AgentCountMismatch { expected: usize, got: usize },

    #[error("alpha {alpha} outside 1..={max} for an occupied window of {window} nodes")]
    AlphaOutOfRange { alpha: u32, max: u32, window: u32 },

    #[error("unknown mechanism id {0:?}")]
    UnknownMechanism(String),

    #[error("median of an empty position list")]
    EmptyPositionList,

    #[error("pair bound requires y > x, got x={x}, y={y}")]
    PairBoundOrder { x: u32, y: u32 },

    #[error("pair bound takes a shared approval count in 0..=2, got {0}")]
    PairBoundCount(u8),

    #[error("triple bound requires x < y < z, got x={x}, y={y}, z={z}")]
    TripleBoundOrder { x: u32, y: u32, z: u32 },

    #[error("ratio term undefined: x^2 + y^2 must exceed 2, got x={x}, y={y}")]
    RatioTermDomain { x: u64, y: u64 },

    #[error("profile family mixes position profiles: expected {expected:?}, got {got:?}")]
    MixedFamilyPositions { expected: Vec<u32>, got: Vec<u32> },

    #[error("profile family is empty")]
    EmptyFamily,

    #[error("profile has {got} preferences for {expected} agents")]
    ProfileLengthMismatch { expected: usize, got: usize },

    #[error("misreport {report:?} is not part of the active preference domain")]
    ReportOutsideDomain { report: ApprovalPair },
}

pub type Result<T> = std::result::Result<T, Error>;
