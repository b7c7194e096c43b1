use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial {0} is not Eisenstein")]
    NotEisenstein(String),
    #[error("modulus {0} is not irreducible over the residue field")]
    Reducible(String),
    #[error("field with e={e}, f={f} exceeds the enumeration budget (e*f <= 6)")]
    FieldTooLarge { e: usize, f: usize },
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("precision {have} is below the required {need} digits")]
    InsufficientPrecision { have: usize, need: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
