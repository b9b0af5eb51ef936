use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Payload values are carried as `f64` regardless of the scalar type used for
/// the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument `{argument}` = {value} is outside the domain ({requirement})")]
    Domain {
        function: &'static str,
        argument: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("{context}: quadrature did not converge (value {value:e}, error estimate {estimate:e})")]
    NonConvergence {
        context: &'static str,
        value: f64,
        estimate: f64,
    },

    #[error("Appell F1 evaluation failed in series term {term}: error estimate {estimate:e}")]
    SeriesTerm { term: usize, estimate: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn domain(
        function: &'static str,
        argument: &'static str,
        value: f64,
        requirement: &'static str,
    ) -> Self {
        Error::Domain {
            function,
            argument,
            value,
            requirement,
        }
    }

    /// Whether the failure is a numerical non-convergence rather than bad input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::SeriesTerm { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
