use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

/// Failure modes shared by every computation in the crate.
///
/// The variants map one-to-one onto the exit-code classes of the command
/// line front end: structural and ring errors are input defects, domain
/// errors are mathematically meaningless requests, resource errors are
/// configured caps being hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Exponent vector length or variable list does not match the ring.
    Structural(String),
    /// Two operands live in different polynomial rings.
    RingMismatch,
    /// The invariant is undefined for this input (zero ideal, unit ideal,
    /// non-positive parameter, ...).
    Domain(String),
    /// A configured cap was exceeded.
    Resource { what: &'static str, cap: usize },
    /// An internal consistency check failed. Always a bug.
    Internal(String),
    /// A failure while working on the `p`-th power of an ideal.
    AtPower { p: u32, source: Box<Error> },
}

impl Error {
    pub fn at_power(self, p: u32) -> Error {
        Error::AtPower { p, source: Box::new(self) }
    }

    /// The innermost error, with power annotations stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPower { source, .. } => source.root(),
            other => other,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Structural(msg) => write!(f, "structural error: {msg}"),
            Error::RingMismatch => f.write_str("operands belong to different rings"),
            Error::Domain(msg) => f.write_str(msg),
            Error::Resource { what, cap } => write!(f, "resource cap exceeded: {what} (cap {cap})"),
            Error::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
            Error::AtPower { p, source } => write!(f, "{source} (at power p = {p})"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn zero_or_unit_sheaf() -> Error {
    Error::Domain(String::from("regularity of the zero or unit sheaf is −∞"))
}
