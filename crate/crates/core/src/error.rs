use thiserror::Error;

use crate::group::GroupFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("\u{39b}^{k} of a rank-{n} space is zero; need 1 <= k <= n")]
    ExteriorPowerTooLarge { k: u32, n: usize },

    #[error("invalid partition {0:?}: parts must be weakly decreasing with at most n entries")]
    InvalidPartition(Vec<u32>),

    #[error("polynomial is not symmetric under x{0} <-> x{1}")]
    NotSymmetric(usize, usize),

    #[error("staircase division left a negative exponent; input was not symmetric")]
    NegativeExponent,

    #[error("input was not a polynomial character: multiplicity {multiplicity} at {partition:?}, degree {degree}")]
    NegativeMultiplicity { partition: Vec<u32>, degree: u32, multiplicity: String },

    #[error("negative dimension {value} at t^{degree}")]
    NegativeDimension { degree: u32, value: String },

    #[error("{family} is not defined for n = {n}")]
    UnsupportedGroup { family: GroupFamily, n: usize },

    #[error("exact division by {divisor} left a remainder")]
    InexactDivision { divisor: String },

    #[error("wedge degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("word length {len} is not {blocks} blocks of {block}")]
    WordLength { len: usize, blocks: usize, block: usize },

    #[error("volume element must be a nonzero element of top degree {top}")]
    BadVolume { top: usize },

    #[error("degenerate metric on the symmetric power")]
    DegenerateMetric,

    #[error("n = {n} does not divide k * p = {kp}")]
    Divisibility { n: usize, kp: usize },

    #[error("too large for oracle: dim \u{39b}^{p}(W) = {size} exceeds {limit}")]
    OracleTooLarge { p: usize, size: u128, limit: usize },

    #[error("no explicit monomial basis for V{0:?}; the oracle handles S^k, \u{39b}^k and their sums")]
    NoExplicitBasis(Vec<u32>),
}
