use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("field of order {0} exceeds the supported bound of 65536 elements")]
    FieldTooLarge(u128),

    #[error("no irreducible polynomial of degree {degree} over F_{p} was found")]
    NoIrreducible { p: u32, degree: u32 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} needs {required} elements but the budget is {budget}")]
    BudgetExceeded {
        what: String,
        required: u128,
        budget: usize,
    },

    #[error("not a member: {0}")]
    NotMember(String),

    #[error("shape precondition violated: {0}")]
    Shape(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("group cache header mismatch: {0}")]
    CacheMismatch(String),

    #[error("malformed group cache: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, required: u128, budget: usize) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            required,
            budget,
        }
    }
}
