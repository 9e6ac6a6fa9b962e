use thiserror::Error;

/// Errors raised by the evaluation kernels and series engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gamma/digamma/zeta argument sits on a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// An integer index or real argument outside the supported range.
    #[error("out of range: {0}")]
    Range(String),
    /// Parameters violate the domain predicate of the requested formula.
    #[error("domain violation: {0}")]
    Domain(String),
    /// Unit-argument series whose parametric excess is not positive.
    #[error("divergent series: parametric excess {0} <= 0")]
    Divergent(f64),
    /// A lower series parameter reaches a non-positive integer before truncation.
    #[error("parameter pole: {0}")]
    ParameterPole(String),
    /// The closed form has a removable singularity at the requested point.
    #[error("removable singularity: {0}")]
    RemovableSingularity(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cancelled after {0} terms")]
    Cancelled(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
