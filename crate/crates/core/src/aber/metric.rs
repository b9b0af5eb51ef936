use crate::error::{Error, Result};
use crate::real::Real;

/// Relative discrepancy in decibels, `10 log10 |(reference - candidate) / reference|`.
///
/// Identical inputs give `-∞`.
pub fn discrepancy<T: Real>(reference: T, candidate: T) -> Result<T> {
    if !(reference > T::zero() && reference.is_finite()) {
        return Err(Error::domain("discrepancy", "reference", reference.as_f64(), "finite and > 0"));
    }
    if !candidate.is_finite() {
        return Err(Error::domain("discrepancy", "candidate", candidate.as_f64(), "finite"));
    }
    if candidate == reference {
        return Ok(T::neg_infinity());
    }
    Ok(T::lit(10.0) * ((reference - candidate) / reference).abs().log10())
}
