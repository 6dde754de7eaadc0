use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A list element (or scale factor) was zero.
    ZeroElement,
    /// Operation is undefined on the empty list.
    EmptyList,
    /// The list has a common factor larger than one.
    NotPrimitive,
    /// Input failed a documented precondition.
    Precondition(String),
    /// A value is too large for a bounded-width routine.
    TooLarge(String),
    /// A search spec does not describe a finite space.
    InfiniteSearch,
    /// A bound table is too short to answer the question.
    TableTooSmall { needed: usize, have: usize },
    /// A separation witness failed its own identity.
    InvalidWitness(String),
    /// No preset matches the requested catalog.
    UnknownPreset(String),
    /// Text could not be parsed.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroElement => write!(f, "list elements must be nonzero"),
            Error::EmptyList => write!(f, "operation undefined on the empty list"),
            Error::NotPrimitive => write!(f, "list is not primitive"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::TooLarge(m) => write!(f, "value too large: {m}"),
            Error::InfiniteSearch => write!(f, "search needs a support modulus or a box"),
            Error::TableTooSmall { needed, have } => {
                write!(f, "bound table too small: need n_max >= {needed}, have {have}")
            }
            Error::InvalidWitness(m) => write!(f, "invalid separation witness: {m}"),
            Error::UnknownPreset(m) => write!(f, "no catalog preset for {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl core::error::Error for Error {}
