use thiserror::Error;

/// Errors produced by structure construction, the solvers and the file formats.
///
/// Indices carried by variants are 1-based so that messages line up with the
/// external file formats.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group {group} is empty")]
    EmptyGroup { group: usize },
    #[error("index {index} in group {group} is outside 1..={ground_size}")]
    IndexOutOfRange {
        group: usize,
        index: usize,
        ground_size: usize,
    },
    #[error("element {0} is not covered by any group")]
    UncoveredElement(usize),
    #[error("index {index} appears more than once in group {group}")]
    DuplicateIndex { group: usize, index: usize },
    #[error("group {second} duplicates group {first}")]
    DuplicateGroup { first: usize, second: usize },
    #[error("a group structure needs at least one group and a positive ground size")]
    EmptyStructure,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("structure is not loopless pairwise overlapping")]
    NotLooplessPairwise,
    #[error("budget {name}={value} outside 1..={max}")]
    BudgetOutOfRange {
        name: &'static str,
        value: usize,
        max: usize,
    },
    #[error("instance too large for exhaustive search: {size} > {cap}")]
    InstanceTooLarge { size: usize, cap: usize },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("linear program returned a fractional vertex (max deviation {0:e})")]
    FractionalSolution(f64),
    #[error("no convergence after {iterations} sweeps (last change {change:e})")]
    NonConvergence { iterations: usize, change: f64 },
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
