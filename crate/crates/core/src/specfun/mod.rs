//! Special functions needed by the averaged-BER formulas: log-gamma and
//! beta, rising factorials, the Gauss Q-function, the regularized incomplete
//! beta function and the Appell F1 function.
//!
//! Accuracy targets (f64): `log_gamma` 1e-13 relative on `[1e-3, 1e4]`,
//! `beta` 1e-12, `gauss_q` 1e-14 on `[-8, 37]`, `reg_inc_beta` 1e-12,
//! `appell_f1` 1e-10.

mod appell;
mod erf;
mod gamma;
mod incbeta;

pub use appell::{appell_f1, AppellF1, AppellF1Family};
pub use erf::gauss_q;
pub use gamma::{beta, ln_beta, log_gamma, pochhammer, Pochhammer};
pub use incbeta::{reg_inc_beta, reg_inc_beta_split};

use crate::error::{Error, Result};
use crate::real::Real;

/// Target accuracy for iterative special-function kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy<T> {
    pub rel_tol: T,
    /// Absolute floor below which a result is treated as zero.
    pub abs_floor: T,
}

impl<T: Real> Accuracy<T> {
    pub fn new(rel_tol: T, abs_floor: T) -> Result<Self> {
        if !(rel_tol > T::zero() && rel_tol <= T::lit(1e-3)) {
            return Err(Error::domain("Accuracy", "rel_tol", rel_tol.as_f64(), "0 < rel_tol <= 1e-3"));
        }
        if !(abs_floor > T::zero() && abs_floor <= T::lit(1e-10)) {
            return Err(Error::domain(
                "Accuracy",
                "abs_floor",
                abs_floor.as_f64(),
                "0 < abs_floor <= 1e-10",
            ));
        }
        Ok(Self { rel_tol, abs_floor })
    }
}

impl<T: Real> Default for Accuracy<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-12).max(T::lit(100.0) * T::epsilon()),
            abs_floor: T::lit(1e-300).max(T::min_positive_value()),
        }
    }
}

pub(crate) fn check_positive<T: Real>(function: &'static str, argument: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(function, argument, v.as_f64(), "finite and > 0"))
    }
}
