use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Resource budget that was exhausted during a Groebner computation.
#[derive(Debug, Clone, PartialEq)]
pub enum BudgetKind {
    Pairs(usize),
    Seconds(f64),
    Degree(u32),
    PieceDimension(usize),
}

impl std::fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BudgetKind::Pairs(n) => write!(f, "pair budget of {n} exceeded"),
            BudgetKind::Seconds(s) => write!(f, "time budget of {s}s exceeded"),
            BudgetKind::Degree(d) => write!(f, "degree budget of {d} exceeded"),
            BudgetKind::PieceDimension(n) => write!(f, "graded piece dimension above {n}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("variable {0} is not in the ring")]
    UnknownVariable(String),
    #[error("variable {0} is outside the domain of the homomorphism")]
    OutsideDomain(String),
    #[error("zero polynomial has no leading form")]
    ZeroPolynomial,
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u64),
    #[error("{value} is not invertible modulo {prime}")]
    NotInvertibleModP { value: String, prime: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("expected {expected} parameters, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("unknown homomorphism `{0}`")]
    UnknownHom(String),
    #[error("{0}")]
    Budget(BudgetKind),
    #[error("exact division failed")]
    InexactDivision,
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }

    pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }
}
