use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime power exponent must be at least 1")]
    ZeroExponent,

    #[error("residue moduli differ: {0} vs {1}")]
    ModulusMismatch(String, String),

    #[error("lower parameter {param} makes a Pochhammer symbol vanish at k = {k}")]
    ZeroLowerPochhammer { param: String, k: u64 },

    #[error("expected {expected} upper parameters for {lower} lower parameters, got {upper}")]
    ParameterCount {
        upper: usize,
        lower: usize,
        expected: usize,
    },

    #[error("{0} is not congruent to 1 mod 4")]
    NotOneModFour(u64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
