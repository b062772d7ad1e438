use std::fmt;

use crate::hwmatrix::SubsetN;

/// The first clause of the HW-matrix definition that a candidate matrix breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotSquare { rows: usize, expected: usize },
    EvenDimension(usize),
    DimensionOutOfRange(usize),
    /// Diagonal entry (1-based) that is not `g1`.
    Diagonal { row: usize },
    /// Off-diagonal entry (1-based) outside `{g2, g3}`.
    OffDiagonal { row: usize, col: usize },
    /// A partial row sum without `g1`: the group has torsion.
    TorsionFree(SubsetN),
    /// The supplied last row differs from the sum of the others.
    LastRow,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { rows, expected } => {
                write!(f, "shape: {rows} rows given, expected {expected} or {}", expected - 1)
            }
            Violation::EvenDimension(n) => write!(f, "dimension {n} is even"),
            Violation::DimensionOutOfRange(n) => write!(f, "dimension {n} out of range"),
            Violation::Diagonal { row } => write!(f, "diagonal entry ({row},{row}) is not 1"),
            Violation::OffDiagonal { row, col } => {
                write!(f, "off-diagonal entry ({row},{col}) is not 2 or 3")
            }
            Violation::TorsionFree(x) => write!(f, "torsion-free subset {x}"),
            Violation::LastRow => write!(f, "last row is not the sum of the other rows"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid HW-matrix: {0}")]
    InvalidMatrix(Violation),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial is not a product of two linear forms")]
    Irreducible,
    #[error("matrix is singular")]
    Singular,
    #[error("transgression span has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("malformed generators: {0}")]
    Generators(String),
    #[error("not an HW ring invariant: {0}")]
    NotHwInvariant(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidMatrix(v)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
