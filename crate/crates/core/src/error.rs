use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Bad rank/level/label or other malformed request.
    #[error("usage error: {0}")]
    Usage(String),
    /// A Verlinde coefficient was not within tolerance of an integer.
    #[error("numeric integrity: N_({a},{b})^{c} = {value} is {residual:e} away from an integer")]
    NumericIntegrity { a: String, b: String, c: String, value: f64, residual: f64 },
    /// Tabulated or derived data contradicts itself.
    #[error("data integrity: {0}")]
    DataIntegrity(String),
    /// The requested operation is outside the scalar (dimension-1) regime.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An operation's precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A generator is not a simple current.
    #[error("{label} is not an automorphism (dimension {dim})")]
    NotAutomorphism { label: String, dim: f64 },
    /// A candidate local-system element has non-integer conformal weight.
    #[error("{label} has nontrivial univalence: h = {h} is not an integer")]
    NontrivialUnivalence { label: String, h: String },
    /// Two elements braid nontrivially.
    #[error("nontrivial monodromy between {a} and {b}: h(ab) - h(a) - h(b) = {charge} mod 1")]
    NontrivialMonodromy { a: String, b: String, charge: String },
    /// The fusion of two labels is not recorded (partial catalog tables).
    #[error("fusion {a} x {b} is not recorded")]
    UnknownFusion { a: String, b: String },
}

pub type Result<T> = core::result::Result<T, Error>;
