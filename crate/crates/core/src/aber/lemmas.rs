//! Averages of `Q(√(2αγ))` and `Q²(√(2αγ))` over the Nakagami-m density in
//! closed form.
//!
//! With `b = m / (α γ̄)`:
//!
//! ```text
//! E[Q]  = ½ I_{m/(m+αγ̄)}(m, ½)
//! E[Q²] = ¼ I_{m/(m+αγ̄)}(m, ½) - R₂
//! R₂    = b^m/(4π) ∫₀^∞ I_{1/(b+2+p)}(½, m) / (√p (1+p) (b+1+p)^m) dp
//!       = b^m/(4π) Σₙ (1-m)ₙ B(n+m+1, ½) / (n! (n+½) B(½, m))
//!                  · F1(n+m+1; m, n+½; n+m+3/2; -b, -(1+b))
//! ```
//!
//! The series terminates after `n = m - 1` for integer `m`.

use std::f64::consts::PI;

use super::truncation::{TruncationMode, TruncationPolicy};
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadratureSpec};
use crate::real::Real;
use crate::specfun::{ln_beta, pochhammer, reg_inc_beta_split, Accuracy, AppellF1, AppellF1Family};

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("averaged Q", "alpha", alpha.as_f64(), "finite and > 0"))
    }
}

/// `I_{m/(m+αγ̄)}(m, ½)`, with the complement formed without cancellation.
pub fn beta_term<T: Real>(ch: &ChannelParams<T>, alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    let m = ch.m();
    let s = alpha * ch.mean_snr();
    let denom = m + s;
    reg_inc_beta_split(m / denom, s / denom, m, T::lit(0.5))
}

/// `E[Q(√(2αγ))] = ½ I_{m/(m+αγ̄)}(m, ½)`.
pub fn lemma2_avg_q<T: Real>(ch: &ChannelParams<T>, alpha: T) -> Result<T> {
    Ok(T::lit(0.5) * beta_term(ch, alpha)?)
}

/// `R₂` by direct quadrature of its integral representation.
pub fn r2_quadrature<T: Real>(ch: &ChannelParams<T>, alpha: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_alpha(alpha)?;
    let m = ch.m();
    let b = m / (alpha * ch.mean_snr());
    let half = T::lit(0.5);
    let inv_4pi = T::lit(0.25 / PI);
    // Integrand without its 1/√p factor.
    let smooth = |p: T| {
        let shifted = b + T::one() + p;
        let total = shifted + T::one();
        // I_{1/(b+2+p)}(½, m), complement (b+1+p)/(b+2+p)
        let inc = match reg_inc_beta_split(total.recip(), shifted / total, half, m) {
            Ok(v) => v,
            Err(_) => return T::nan(),
        };
        // (b / (b+1+p))^m
        let ratio = (-m * ((T::one() + p) / b).ln_1p()).exp();
        inv_4pi * inc * ratio / (T::one() + p)
    };
    // p = u² on [0, 1] removes the 1/√p endpoint singularity.
    let head = integrate_finite(|u: T| T::lit(2.0) * smooth(u * u), T::zero(), T::one(), spec)?;
    let tail = integrate_semi_infinite(|p: T| smooth(p) / p.sqrt(), T::one(), spec)?;
    head.combine(tail).require_converged("r2_quadrature")
}

/// Partial sum of the `R₂` series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R2Series<T> {
    pub value: T,
    /// Number of non-zero terms summed.
    pub terms_used: usize,
    /// Set when the adaptive mode hit the term cap without meeting its
    /// tolerance and the value was taken from [`r2_quadrature`] instead.
    pub fell_back: bool,
}

/// `R₂` from its Appell-F1 series at the default [`Accuracy`].
pub fn r2_series<T: Real>(ch: &ChannelParams<T>, alpha: T, trunc: &TruncationPolicy<T>) -> Result<R2Series<T>> {
    r2_series_with(ch, alpha, trunc, &Accuracy::default())
}

/// `R₂` series with an explicit accuracy for each F1 evaluation.
pub fn r2_series_with<T: Real>(
    ch: &ChannelParams<T>,
    alpha: T,
    trunc: &TruncationPolicy<T>,
    accuracy: &Accuracy<T>,
) -> Result<R2Series<T>> {
    check_alpha(alpha)?;
    trunc.validate()?;
    let m = ch.m();
    let b = m / (alpha * ch.mean_snr());
    let half = T::lit(0.5);
    let one_minus_m = T::one() - m;

    // ln(b^m / (4π B(½, m))): the n-independent part of every term. The
    // B(n+m+1, ½) of each term cancels the normalisation of its F1, so the
    // bare Euler integrals are used.
    let log_base = m * b.ln() - T::lit((4.0 * PI).ln()) - ln_beta(half, m)?;

    let family = AppellF1Family {
        base: AppellF1 {
            a: m + T::one(),
            b1: m,
            b2: half,
            c: m + T::lit(1.5),
            x: -b,
            y: -(T::one() + b),
        },
    };

    // For integer m the factor (1-m)_n vanishes from n = m on.
    let last_nonzero = if m == m.floor() {
        m.to_usize()
            .filter(|&n| n <= trunc.n_max && pochhammer(one_minus_m, n).value == T::zero())
    } else {
        None
    };
    let n_cap = match last_nonzero {
        Some(0) => {
            return Ok(R2Series {
                value: T::zero(),
                terms_used: 0,
                fell_back: false,
            })
        }
        Some(n) => n - 1,
        None => trunc.n_max,
    };

    // Fixed mode evaluates everything at once; adaptive mode works in
    // growing chunks so that early stops stay cheap.
    let mut chunk = match trunc.mode {
        TruncationMode::FixedTerms => n_cap,
        TruncationMode::Adaptive => n_cap.min(7),
    };
    loop {
        let integrals = family.euler_integrals_scaled(chunk, log_base, accuracy)?;

        let mut sum = T::zero();
        // (1-m)_n / n!, built up by the ratio (n - m) / n
        let mut rising_over_factorial = T::one();
        for (n, &j) in integrals.iter().enumerate() {
            let nf = T::lit(n as f64);
            if n > 0 {
                rising_over_factorial = rising_over_factorial * (nf - m) / nf;
            }
            let term = rising_over_factorial * j / (nf + half);
            if !term.is_finite() {
                return Err(Error::SeriesTerm {
                    term: n,
                    estimate: term.as_f64(),
                });
            }
            sum = sum + term;
            if trunc.mode == TruncationMode::Adaptive && term.abs() < trunc.term_tol * sum.abs() {
                return Ok(R2Series {
                    value: sum,
                    terms_used: n + 1,
                    fell_back: false,
                });
            }
        }
        if trunc.mode == TruncationMode::FixedTerms || last_nonzero.is_some() && chunk == n_cap {
            return Ok(R2Series {
                value: sum,
                terms_used: chunk + 1,
                fell_back: false,
            });
        }
        if chunk == n_cap {
            break;
        }
        chunk = (2 * chunk + 1).min(n_cap);
    }

    let value = r2_quadrature(ch, alpha, &QuadratureSpec::default())?;
    Ok(R2Series {
        value,
        terms_used: n_cap + 1,
        fell_back: true,
    })
}
