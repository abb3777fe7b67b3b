use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different fields.
    FieldMismatch,
    /// A vector or matrix has the wrong size for the operation.
    DimensionMismatch { expected: usize, got: usize },
    /// The modulus of a prime field failed the primality check.
    NotPrime(u64),
    /// p = 2 requested without the explicit override.
    CharacteristicTwo,
    /// The operation only makes sense over a prime field.
    UnsupportedField(&'static str),
    /// A subspace argument was not contained where required.
    NotContained,
    /// The given subspace is not an ideal for both products.
    NotAnIdeal,
    /// A cocycle component fails one of the cocycle identities.
    NotACocycle,
    /// The cocycle is not admissible (the extension would not be full).
    NotAdmissible,
    /// The algebra is not nilpotent.
    NotNilpotent,
    /// The algebra has dimension zero where a nonzero one is needed.
    ZeroDimensional,
    /// A configured dimension or field bound was exceeded.
    ResourceBound(String),
    /// An internal consistency check failed; carries a diagnostic.
    Diagnostic(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::CharacteristicTwo => {
                write!(f, "characteristic 2 requires the explicit override flag")
            }
            Error::UnsupportedField(what) => write!(f, "{what} requires a prime field"),
            Error::NotContained => write!(f, "subspace containment violated"),
            Error::NotAnIdeal => write!(f, "subspace is not an ideal for both products"),
            Error::NotACocycle => write!(f, "bilinear pair is not a 2-cocycle"),
            Error::NotAdmissible => write!(f, "cocycle is not admissible"),
            Error::NotNilpotent => write!(f, "algebra is not nilpotent"),
            Error::ZeroDimensional => write!(f, "algebra has dimension zero"),
            Error::ResourceBound(msg) => write!(f, "resource bound exceeded: {msg}"),
            Error::Diagnostic(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
