use crate::exact::Spin;

/// Errors raised by kernel operations whose preconditions are violated.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("triangle rule violated for ({0}, {1}, {2})")]
    TriangleViolation(Spin, Spin, Spin),

    #[error("supertriangle ({0}, {1}, {2}) has half-integral defect arguments; exact evaluation is restricted to integral-defect triads")]
    HalfIntegralDefect(Spin, Spin, Spin),

    #[error("adding surds with unlike radicands ({0} vs {1}); regroup or switch to decimal mode")]
    IncompatibleRadicands(String, String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("spin argument must be at least 1/2, got {0}")]
    SpinTooSmall(Spin),

    #[error("provider has no entry for 6-j^S {{{0} {1} {2}; {3} {4} {5}}}")]
    MissingProviderEntry(Spin, Spin, Spin, Spin, Spin, Spin),

    #[error("invalid sublevel choice: {0}")]
    InvalidSublevels(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}
