use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange { what: &'static str, value: i64, range: String },

    #[error("multinomial parts sum to {sum}, expected {expected}")]
    PartsMismatch { expected: u64, sum: u64 },

    #[error("estimate pair {pair} is not separated at n = {n}")]
    NotSeparated { pair: String, n: u64 },

    #[error("k = {k} does not exceed the lower estimate {lower} at the domain start")]
    KTooSmall { k: String, lower: String },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("the H3 reduction does not pin M_n at n = {n}; fall back to a full H4 search")]
    Inconclusive { n: u64 },

    #[error("cannot parse {0:?} as a natural number")]
    Parse(String),

    #[error("malformed factorial cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn out_of_range(what: &'static str, value: impl TryInto<i64>, range: &str) -> Error {
    Error::OutOfRange { what, value: value.try_into().unwrap_or(i64::MAX), range: range.to_string() }
}
