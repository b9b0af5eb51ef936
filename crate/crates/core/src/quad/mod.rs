//! Deterministic adaptive quadrature.
//!
//! Every oracle integral in the crate, and the Appell F1 kernel, goes through
//! [`integrate_finite`] or [`integrate_semi_infinite`]. The engine is a
//! 10/21-point Gauss-Kronrod pair driven by global adaptive bisection with
//! epsilon-algorithm extrapolation, so integrable algebraic singularities at
//! either endpoint converge without special handling by the caller.

mod adaptive;
mod epsilon;
mod kronrod;
pub(crate) mod tanh_sinh;

use crate::error::{Error, Result};
use crate::real::Real;

/// Variable change used to fold `[lo, ∞)` onto the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InfiniteMap {
    /// No map requested. Semi-infinite integration falls back to `Rational`.
    None,
    /// `x = lo + (1 - t) / t`, `dx = dt / t²`.
    #[default]
    Rational,
    /// `x = lo - ln t`, `dx = dt / t`.
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    pub infinite_map: InfiniteMap,
}

impl<T: Real> QuadratureSpec<T> {
    pub const MIN_SUBDIVISIONS: usize = 10;
    pub const MAX_SUBDIVISIONS: usize = 10_000;

    pub fn new(rel_tol: T, abs_tol: T, max_subdivisions: usize, infinite_map: InfiniteMap) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            infinite_map,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Relative-only tolerance: the absolute floor is the smallest normal
    /// number, so tiny integrals are still resolved to `rel_tol`.
    pub fn relative(rel_tol: T) -> Result<Self> {
        Self::new(rel_tol, T::min_positive_value(), 2000, InfiniteMap::Rational)
    }

    pub fn with_rel_tol(mut self, rel_tol: T) -> Result<Self> {
        self.rel_tol = rel_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Result<Self> {
        self.abs_tol = abs_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= T::lit(1e-14) && self.rel_tol <= T::lit(1e-3)) {
            return Err(Error::domain(
                "QuadratureSpec",
                "rel_tol",
                self.rel_tol.as_f64(),
                "1e-14 <= rel_tol <= 1e-3",
            ));
        }
        if !(self.abs_tol >= T::zero() && self.abs_tol.is_finite()) {
            return Err(Error::domain(
                "QuadratureSpec",
                "abs_tol",
                self.abs_tol.as_f64(),
                "finite and non-negative",
            ));
        }
        if !(Self::MIN_SUBDIVISIONS..=Self::MAX_SUBDIVISIONS).contains(&self.max_subdivisions) {
            return Err(Error::domain(
                "QuadratureSpec",
                "max_subdivisions",
                self.max_subdivisions as f64,
                "10 <= max_subdivisions <= 10000",
            ));
        }
        Ok(())
    }
}

impl<T: Real> Default for QuadratureSpec<T> {
    /// `rel_tol = 1e-10`, `abs_tol = 1e-14`, 2000 subdivisions, rational map.
    /// For `f32` the relative tolerance is raised to `100 ε`.
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-10).max(T::lit(100.0) * T::epsilon()).min(T::lit(1e-3)),
            abs_tol: T::lit(1e-14),
            max_subdivisions: 2000,
            infinite_map: InfiniteMap::Rational,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub evaluations: usize,
    /// `true` iff `error_estimate <= max(abs_tol, rel_tol * |value|)` and no
    /// abnormal termination was detected.
    pub converged: bool,
}

impl<T: Real> QuadratureResult<T> {
    /// Result for the union of two disjoint ranges.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self, context: &'static str) -> Result<T> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence {
                context,
                value: self.value.as_f64(),
                estimate: self.error_estimate.as_f64(),
            })
        }
    }
}

/// Integrates `f` over `[lo, hi]`.
///
/// `f` is never evaluated at the endpoints, so integrable endpoint
/// singularities are allowed.
pub fn integrate_finite<T, F>(f: F, lo: T, hi: T, spec: &QuadratureSpec<T>) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    spec.validate()?;
    if !lo.is_finite() {
        return Err(Error::domain("integrate_finite", "lo", lo.as_f64(), "finite"));
    }
    if !(hi.is_finite() && hi > lo) {
        return Err(Error::domain("integrate_finite", "hi", hi.as_f64(), "finite and > lo"));
    }
    Ok(adaptive::integrate(
        f,
        lo,
        hi,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_subdivisions,
    ))
}

/// Integrates `f` over `[lo, ∞)` after the variable change selected by
/// `spec.infinite_map`.
pub fn integrate_semi_infinite<T, F>(mut f: F, lo: T, spec: &QuadratureSpec<T>) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if !lo.is_finite() {
        return Err(Error::domain("integrate_semi_infinite", "lo", lo.as_f64(), "finite"));
    }
    match spec.infinite_map {
        InfiniteMap::None | InfiniteMap::Rational => integrate_finite(
            |t: T| {
                let x = lo + (T::one() - t) / t;
                // Divide twice so a vanishing f survives t² underflow.
                f(x) / t / t
            },
            T::zero(),
            T::one(),
            spec,
        ),
        InfiniteMap::Exp => integrate_finite(
            |t: T| {
                let x = lo - t.ln();
                f(x) / t
            },
            T::zero(),
            T::one(),
            spec,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default()
    }

    #[test]
    fn constant_on_unit_interval() {
        let r = integrate_finite(|_| 1.0, 0.0, 1.0, &spec()).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_sqrt_singularity_at_upper_endpoint() {
        let r = integrate_finite(|t: f64| 1.0 / (1.0 - t).sqrt(), 0.0, 1.0, &spec()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - 2.0).abs() < 2e-10, "{r:?}");
    }

    #[test]
    fn exponential_tail() {
        for map in [InfiniteMap::Rational, InfiniteMap::Exp, InfiniteMap::None] {
            let s = QuadratureSpec { infinite_map: map, ..spec() };
            let r = integrate_semi_infinite(|x: f64| (-x).exp(), 0.0, &s).unwrap();
            assert!(r.converged, "{map:?}: {r:?}");
            assert!((r.value - 1.0).abs() < 1e-10, "{map:?}: {r:?}");
        }
    }

    #[test]
    fn algebraic_singularity_and_slow_tail() {
        // ∫ dx / (√x (1+x)) = π
        let r = integrate_semi_infinite(|x: f64| 1.0 / (x.sqrt() * (1.0 + x)), 0.0, &spec()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - std::f64::consts::PI).abs() < 1e-9 * std::f64::consts::PI, "{r:?}");
    }

    #[test]
    fn rejects_bad_bounds_and_specs() {
        assert!(integrate_finite(|x: f64| x, 1.0, 1.0, &spec()).is_err());
        assert!(integrate_finite(|x: f64| x, 0.0, f64::INFINITY, &spec()).is_err());
        assert!(QuadratureSpec::<f64>::new(1e-16, 0.0, 100, InfiniteMap::None).is_err());
        assert!(QuadratureSpec::<f64>::new(1e-8, 0.0, 5, InfiniteMap::None).is_err());
        assert!(QuadratureSpec::<f64>::new(1e-2, 0.0, 100, InfiniteMap::None).is_err());
    }

    #[test]
    fn tight_budget_reports_non_convergence() {
        let s = QuadratureSpec::new(1e-12, 0.0, 10, InfiniteMap::Rational).unwrap();
        let r = integrate_finite(|x: f64| (1.0 / x).sin() / x.powf(0.9), 0.0, 1.0, &s).unwrap();
        assert!(!r.converged);
        assert!(r.require_converged("test").is_err());
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (x * 3.0).cos() * (-x * x).exp();
        let a = integrate_semi_infinite(f, 0.0, &spec()).unwrap();
        let b = integrate_semi_infinite(f, 0.0, &spec()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}
