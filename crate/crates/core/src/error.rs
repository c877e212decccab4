use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller broke an operation's precondition (dimensions, sides, inclusions).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An enumeration would exceed a configured size cap.
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    /// Ring tables failed an axiom; carries the offending triple of element indices.
    #[error("ring axiom `{axiom}` fails at ({a}, {b}, {c})")]
    RingAxiom { axiom: String, a: usize, b: usize, c: usize },

    /// A bilinear form is not balanced or not additive.
    #[error("pairing is not balanced: {0}")]
    Balance(String),

    /// The operation is not available on this ring backend.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A theorem's hypothesis required by the operation is false.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    /// Malformed instance document or command input.
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded {
            what: what.to_string(),
            needed,
            cap,
        })
    } else {
        Ok(())
    }
}
