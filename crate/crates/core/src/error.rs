use thiserror::Error;

/// Errors raised by the bound evaluators, the family combinatorics and the
/// system constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid probability mass function: {0}")]
    InvalidPmf(String),

    #[error("objective is not finite at x = {arg}")]
    NonFinite { arg: f64 },

    #[error("ground set size {0} is not in 1..=64")]
    InvalidGround(u32),

    #[error("ground sets differ: {left} vs {right}")]
    GroundMismatch { left: u32, right: u32 },

    #[error("member {member:#x} does not fit a ground set of {n} elements")]
    MemberOutOfRange { member: u64, n: u32 },

    #[error("family contains the subset {0:#x} more than once")]
    DuplicateMember(u64),

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("derivation selected no cells: {0}")]
    EmptySelection(String),

    #[error("pair {index}: {reason}")]
    InvalidSystem { index: usize, reason: String },

    #[error("eta = {eta} is below the feasibility threshold {threshold}")]
    InfeasibleEta { eta: f64, threshold: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
