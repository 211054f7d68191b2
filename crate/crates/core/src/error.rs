use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A (series, rank) pair that is not a simple type, or an unparseable type string.
    InvalidType(String),
    DimensionMismatch { expected: usize, found: usize },
    /// Two objects live over different root systems.
    AmbientMismatch,
    NotARoot,
    NotDominant,
    IndexOutOfRange { index: usize, bound: usize },
    NotPrime(u64),
    /// A character whose support has no dominant weight.
    NoDominantWeight,
    EmptyCharacter,
    EmptyState,
    /// Subset or orbit enumeration would exceed the configured guard.
    GuardExceeded { required: u64, guard: u64 },
    StateNotInSupport,
    /// The zero one-parameter subgroup has the whole group as its parabolic.
    FullGroup,
    NonIntegralWeight,
    /// The standard representation is only defined for a simple ambient.
    NoStandardRepresentation(String),
    InvalidHiggs(String),
    ZeroDenominator,
    /// A certificate failed re-verification.
    InvalidCertificate(&'static str),
    /// An internal invariant of an exact algorithm was violated.
    Internal(&'static str),
}

impl Error {
    /// Stable machine-readable name of the violated condition.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidType(_) => "invalid_type",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::NotARoot => "not_a_root",
            Error::NotDominant => "not_dominant",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotPrime(_) => "not_prime",
            Error::NoDominantWeight => "no_dominant_weight",
            Error::EmptyCharacter => "empty_character",
            Error::EmptyState => "empty_state",
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::StateNotInSupport => "state_not_in_support",
            Error::FullGroup => "full_group",
            Error::NonIntegralWeight => "non_integral_weight",
            Error::NoStandardRepresentation(_) => "no_standard_representation",
            Error::InvalidHiggs(_) => "invalid_higgs",
            Error::ZeroDenominator => "zero_denominator",
            Error::InvalidCertificate(_) => "invalid_certificate",
            Error::Internal(_) => "internal",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidType(t) => write!(f, "invalid root system type `{t}`"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::AmbientMismatch => f.write_str("objects belong to different root systems"),
            Error::NotARoot => f.write_str("weight is not a root"),
            Error::NotDominant => f.write_str("weight is not dominant"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range 0..={bound}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NoDominantWeight => f.write_str("character support contains no dominant weight"),
            Error::EmptyCharacter => f.write_str("character has total dimension zero"),
            Error::EmptyState => f.write_str("state has no weights"),
            Error::GuardExceeded { required, guard } => {
                write!(f, "enumeration of {required} items exceeds guard {guard}")
            }
            Error::StateNotInSupport => f.write_str("state is not contained in the character support"),
            Error::FullGroup => f.write_str("the zero one-parameter subgroup has parabolic G"),
            Error::NonIntegralWeight => {
                f.write_str("weight is not integral in the fundamental-weight basis")
            }
            Error::NoStandardRepresentation(t) => {
                write!(f, "no standard representation for ambient `{t}`")
            }
            Error::InvalidHiggs(msg) => write!(f, "invalid Higgs structure: {msg}"),
            Error::ZeroDenominator => f.write_str("rational with zero denominator"),
            Error::InvalidCertificate(what) => write!(f, "certificate check failed: {what}"),
            Error::Internal(what) => write!(f, "internal invariant violated: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
