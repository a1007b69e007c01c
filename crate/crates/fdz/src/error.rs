use std::fmt;

/// Errors surfaced by the library. Checks that return structured diagnostics
/// (like presentation validation) report those separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two subgroups of different ambient groups were combined.
    AmbientMismatch,
    /// A generating family was required but the given rows do not generate.
    NotGenerating,
    /// No direct complement is guaranteed (quotient not torsion-free).
    NoComplement,
    /// Ill-shaped or semantically invalid input.
    InvalidInput(String),
    /// An operation precondition does not hold.
    Precondition(String),
    /// A runtime cross-check failed; carries a description of the witness.
    CheckFailed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AmbientMismatch => write!(f, "ambient group mismatch"),
            Error::NotGenerating => write!(f, "rows do not generate the group"),
            Error::NoComplement => write!(f, "no guaranteed complement"),
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::CheckFailed(m) => write!(f, "internal cross-check failed: {m}"),
        }
    }
}

impl std::error::Error for Error {}
