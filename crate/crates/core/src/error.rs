use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value {value} outside domain {domain}")]
    Domain { value: String, domain: String },

    #[error("interpolation of the numerator polynomial has degree {found}, expected at most {expected}")]
    InterpolationDegree { expected: usize, found: usize },

    #[error("no closed form available for {kind} with n = {n}")]
    UnsupportedCase { kind: String, n: u32 },

    #[error("row {row} not present in reference table {table}")]
    TableRow { table: String, row: u32 },

    #[error("moment sequence is not positive definite: recurrence coefficient {index} = {value}")]
    HankelNotPositive { index: usize, value: String },

    #[error("cancellation diagnostic failed for coefficient {index}: exact and floating routes differ by {difference}")]
    Cancellation { index: usize, difference: String },

    #[error("quadrature moment error {max_error} exceeds tolerance {tolerance}")]
    QuadratureTolerance { max_error: String, tolerance: String },

    #[error("adaptive quadrature failed to converge (estimated error {0:e})")]
    Integration(f64),

    #[error("sample outside proven range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Self::DivisionByZero => "division_by_zero",
            Self::ParseRational(_) => "parse_rational",
            Self::InvalidArgument(_) => "invalid_argument",
            Self::Domain { .. } => "domain",
            Self::InterpolationDegree { .. } => "interpolation_degree",
            Self::UnsupportedCase { .. } => "unsupported_case",
            Self::TableRow { .. } => "table_row",
            Self::HankelNotPositive { .. } => "hankel_not_positive",
            Self::Cancellation { .. } => "cancellation",
            Self::QuadratureTolerance { .. } => "quadrature_tolerance",
            Self::Integration(_) => "integration",
            Self::OutOfRange(_) => "out_of_range",
        }
    }
}
