use thiserror::Error;

/// Errors raised by the decision procedures.
///
/// Verdicts (true/false) are never errors; these variants only signal
/// malformed input, violated preconditions, or exhausted resource limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("factorization limit exceeded: |n| has {bits} bits, limit is {limit}")]
    FactorizationLimitExceeded { bits: u64, limit: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("p-adic operands have different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),

    #[error("all known digits cancelled; result is zero only to the available precision")]
    PrecisionExhausted,

    #[error("insufficient precision: need {needed} digits, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },

    #[error("not a simple root: {0}")]
    NotASimpleRoot(String),

    #[error("negative valuation {0}; element is not a p-adic integer")]
    NegativeValuation(i64),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("the ring is the whole field Q; its tilde set is undefined")]
    WholeFieldRing,

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("unknown token {0:?}")]
    UnknownToken(String),

    #[error("not a Goedel code: {0}")]
    NotACode(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Resource-limit errors: the question is well posed but a configured
    /// bound was hit.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::FactorizationLimitExceeded { .. } | Error::SearchExhausted(_)
        )
    }

    /// Errors reporting that a mathematical precondition of a lemma or
    /// proposition does not hold.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self, Error::HypothesisViolated(_) | Error::WholeFieldRing)
    }
}
