//! Error type shared across the crate.

/// Everything that can go wrong when constructing domain values or running
/// an operator pipeline. Construction errors are raised eagerly so that the
/// numeric code never sees an invalid order, grid, or sample set.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The fractional order must lie strictly inside (0, 1).
    #[error("fractional order nu = {0} is outside the open interval (0, 1)")]
    OrderOutOfRange(f64),

    /// A normalization rule produced a value that is not a positive finite number.
    #[error("normalization value {value} at nu = {nu} is not positive and finite")]
    InvalidNormalization { nu: f64, value: f64 },

    /// Grid construction rejected the requested geometry.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A sampled value is NaN or infinite.
    #[error("sample {index} is not finite (value = {value})")]
    NonFiniteSample { index: usize, value: f64 },

    /// Sample vector length does not match the grid it claims to live on.
    #[error("sample length {actual} does not match grid node count {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    /// The kernel width psi must be a positive finite number.
    #[error("psi = {0} must be positive and finite")]
    InvalidPsi(f64),

    /// A limit-check order sequence is empty, out of range, or not monotone
    /// toward the requested endpoint.
    #[error("invalid order sequence: {0}")]
    InvalidSequence(String),

    /// The Caputo-Fabrizio route needs a first derivative and none can be formed.
    #[error("no derivative available: {0}")]
    MissingDerivative(String),

    /// A rational image lost its denominator (identically zero after an operation).
    #[error("degenerate rational image: denominator is identically zero")]
    DegenerateImage,

    /// Pole layout outside the supported class (real simple poles plus a pole
    /// at the origin of multiplicity at most two).
    #[error("unsupported pole structure: {0}")]
    UnsupportedPoleStructure(String),

    /// The rational image is not strictly proper, so inversion would need a
    /// distributional part.
    #[error("improper rational image: {0}")]
    ImproperImage(String),

    /// The integration window is too short for the requested transform point.
    #[error("transform truncation too severe: tail bound {tail:e} exceeds {bound:e}")]
    TruncationTooSevere { tail: f64, bound: f64 },

    /// Model or operator parameters outside their documented domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
