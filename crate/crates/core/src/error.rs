use thiserror::Error;

use crate::scalar::Rat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Domain errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("undefined sum -inf + +inf")]
    UndefinedSum,

    /// `circuit` lists the visited nodes (0-based) of a circuit whose
    /// total weight `weight` is positive.
    #[error("positive circuit {} of weight {weight}", nodes(circuit))]
    PositiveCircuit { circuit: Vec<usize>, weight: Rat },

    #[error("alcoved polyhedron is empty (positive circuit {} of weight {weight})", nodes(circuit))]
    EmptyPolyhedron { circuit: Vec<usize>, weight: Rat },

    #[error("improper matrix: {0}")]
    ImproperMatrix(String),

    #[error("invalid entry: {0}")]
    InvalidEntry(String),

    #[error("empty input")]
    EmptyInput,

    #[error("operator has stochastic (affine) leaves")]
    NotDeterministic,

    #[error("normal form exceeds the cap of {cap} rows")]
    SizeBlowup { cap: usize },

    #[error("u is not an eigenvector for the given lambda")]
    NotAnEigenvector,

    #[error("horizon {horizon} exceeds the cap {cap}")]
    HorizonTooLarge { horizon: usize, cap: usize },

    #[error("size {size} exceeds the cap {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("operator is not positively homogeneous")]
    NotHomogeneous,

    /// Two elements without a unique least upper (or greatest lower) bound.
    #[error("not a lattice: {reason}")]
    NotALattice { reason: String, pair: Option<(u64, u64)>, bounds: Vec<u64> },

    #[error("point is not a fixed point of the operator")]
    NotAFixedPoint,

    #[error("balls {} and {} violate the pairwise condition", first + 1, second + 1)]
    PairwiseConditionViolated { first: usize, second: usize },

    #[error("no convergence within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used in JSON error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UndefinedSum => "UndefinedSum",
            Error::PositiveCircuit { .. } => "PositiveCircuit",
            Error::EmptyPolyhedron { .. } => "EmptyPolyhedron",
            Error::ImproperMatrix(_) => "ImproperMatrix",
            Error::InvalidEntry(_) => "InvalidEntry",
            Error::EmptyInput => "EmptyInput",
            Error::NotDeterministic => "NotDeterministic",
            Error::SizeBlowup { .. } => "SizeBlowup",
            Error::NotAnEigenvector => "NotAnEigenvector",
            Error::HorizonTooLarge { .. } => "HorizonTooLarge",
            Error::SizeCap { .. } => "SizeCap",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotALattice { .. } => "NotALattice",
            Error::NotAFixedPoint => "NotAFixedPoint",
            Error::PairwiseConditionViolated { .. } => "PairwiseConditionViolated",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::Parse(_) => "Parse",
        }
    }
}

/// Circuit nodes, 1-based.
fn nodes(circuit: &[usize]) -> String {
    let parts: Vec<String> = circuit.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
