use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed algebra description (bad indices, conflicting entries, missing selectors).
    #[error("structural error: {0}")]
    Structure(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range [{lo}, {hi}]")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    /// The element lies on some M_u; `offending` lists the 1-based functionals that vanish.
    #[error("element is not invertible: f_u vanishes for u in {offending:?}")]
    Singular {
        xi: Vec<Complex64>,
        offending: Vec<usize>,
    },

    #[error("t = {t} coincides with xi_{u} = {xi}")]
    Pole {
        u: usize,
        t: Complex64,
        xi: Complex64,
    },

    #[error("invalid frame: {0}")]
    Frame(String),

    #[error("invalid curve: {0}")]
    Curve(String),

    #[error("invalid function: {0}")]
    Function(String),

    /// Integrand evaluation failed at curve parameter `tau`.
    #[error("evaluation failed at curve parameter tau = {tau}: {source}")]
    Evaluation {
        tau: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("element is not in the real span of the frame (residual {residual:e})")]
    NotInSpan { residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("curve is not embracing once: windings {windings:?}")]
    NotEmbracing { windings: Vec<i64> },
}

impl Error {
    pub(crate) fn at(self, tau: f64) -> Error {
        match self {
            e @ Error::Evaluation { .. } => e,
            other => Error::Evaluation {
                tau,
                source: Box::new(other),
            },
        }
    }
}
