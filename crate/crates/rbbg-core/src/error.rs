/// Failures shared by every layer of the kernel.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    /// A gamma-family function was asked for its value at a pole.
    #[error("pole at {x} in {what}")]
    Pole {
        /// Function that has the pole.
        what: &'static str,
        /// Offending argument.
        x: f64,
    },

    /// An argument fell outside the documented domain of an operation.
    #[error("{what}: {value} is outside the supported domain")]
    Domain {
        /// Operation that rejected the argument.
        what: &'static str,
        /// Offending value.
        value: f64,
    },

    /// A parameter set violated a structural requirement (e.g. a lower
    /// 2F1 parameter at a non-positive integer).
    #[error("invalid parameters: {what}")]
    Params {
        /// Which requirement failed.
        what: &'static str,
    },

    /// A series or iteration hit its term cap before meeting the tolerance.
    #[error("no convergence after {terms} terms (last term {last:e})")]
    NoConvergence {
        /// Number of terms consumed.
        terms: u32,
        /// Magnitude of the last computed term.
        last: f64,
    },
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
