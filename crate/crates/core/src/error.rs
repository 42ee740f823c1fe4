use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials over different rings ({0} vs {1} variables)")]
    ArityMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisibility order by a unit is unbounded")]
    UnitDivisor,
    #[error("divisibility order of the zero polynomial is unbounded")]
    ZeroDividend,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("the zero polynomial has no monomial factorization")]
    ZeroPolynomial,
    #[error("substitution leaves frozen variables in a denominator: {0:?}")]
    FrozenDenominator(Vec<String>),
    #[error("invalid variable name {0:?}")]
    BadName(String),
    #[error("variable {0:?} declared twice")]
    DuplicateName(String),
}

/// Syntax error with a 1-based character offset into the source.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, position: usize) -> Self {
        Self { message: message.into(), position }
    }
}

/// A single LP1/LP2 failure, with 1-based slot index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub slot: usize,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "slot {}: {}", self.slot, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid seed file: {0}")]
    Schema(String),
    #[error("invalid seed: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSeed(Vec<Violation>),
    #[error("slot {slot} out of range for a seed of rank {rank}")]
    BadSlot { slot: usize, rank: usize },
    #[error("mutation escaped the mutation class: {0}")]
    EscapedClass(String),
    #[error("symmetry image escapes the class: {0}")]
    ImageEscapes(String),
    #[error("invalid symmetry: {0}")]
    Symmetry(String),
    #[error("unknown built-in {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Catalog(String),
    #[error("exploration budget exhausted after {0} seeds")]
    BudgetExhausted(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
