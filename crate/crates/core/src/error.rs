use num_bigint::BigInt;
use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A negative power of the companion matrix was requested while `q = 0`.
    #[error("companion matrix is singular (q = 0): negative powers are unavailable")]
    InverseUnavailable,

    /// A ratio or acceleration formula hit a zero denominator.
    #[error("zero denominator in {op}{}", at_index(.index))]
    DegenerateRatio { op: &'static str, index: Option<i64> },

    /// A root-finding step hit a zero denominator.
    #[error("zero denominator in {method} step")]
    DegenerateStep { method: &'static str },

    /// A continued fraction convergent has a zero denominator.
    #[error("convergent {index} has a zero denominator")]
    DegenerateConvergent { index: u64 },

    /// The quadratic has no pair of distinct real roots.
    #[error("quadratic has no distinct real roots (discriminant {discriminant})")]
    NonRealRoots { discriminant: BigInt },

    /// Root iteration hit its step cap before two iterates agreed.
    #[error("no convergence after {iterations} iterations")]
    NoProgress { iterations: usize },

    /// An index exceeded the configured cap (or overflowed while being computed).
    #[error("index {index} exceeds the cap {cap}")]
    IndexCap { index: String, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn at_index(index: &Option<i64>) -> String {
    match index {
        Some(i) => format!(" at index {i}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
