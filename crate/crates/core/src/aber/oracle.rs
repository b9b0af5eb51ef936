//! Reference values by direct quadrature of `∫₀^∞ g(γ) f_γ(γ) dγ`.
//!
//! The integration variable is `x = γ / γ̄`, so the density part
//! `m^m x^(m-1) e^(-mx) / Γ(m)` does not depend on the mean SNR.
//! Range pieces are combined with [`QuadratureResult::combine`].

use crate::channel::{ber_exact_unchecked, ber_expq_unchecked, ber_lu_unchecked, pdf_with_norm, ChannelParams, Modulation, QApproxVariant};
use crate::error::Result;
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadratureResult, QuadratureSpec};
use crate::real::Real;
use crate::specfun::{gauss_q, log_gamma};

/// Instantaneous BER model averaged by [`aber_oracle`].
#[derive(Debug, Clone, PartialEq)]
pub enum BerKind<T> {
    Exact,
    Lu,
    Expq(QApproxVariant<T>),
}

/// `E[g(γ)]` under the Nakagami-m density.
///
/// The range is split at `x = 1`. For `m < 1` the substitution
/// `x = u^(1/m)` on `[0, 1]` absorbs the singular `x^(m-1)` factor of the
/// density, leaving `m^(m-1)/Γ(m) e^(-mx) g(γ̄x) du`. (For `m > 1` the same
/// map would crowd the high-SNR region `x ~ 1/γ̄` into `u ~ γ̄^-m`, so the
/// head is integrated in `x` directly.) The tail goes through
/// [`integrate_semi_infinite`].
pub fn average_over_fading<T, G>(ch: &ChannelParams<T>, mut g: G, spec: &QuadratureSpec<T>) -> Result<QuadratureResult<T>>
where
    T: Real,
    G: FnMut(T) -> T,
{
    let m = ch.m();
    let mean = ch.mean_snr();
    let ln_norm = m * m.ln() - log_gamma(m)?;
    let head = if m < T::one() {
        let ln_head = ln_norm - m.ln();
        let inv_m = m.recip();
        integrate_finite(
            |u: T| {
                let x = (u.ln() * inv_m).exp();
                g(mean * x) * (ln_head - m * x).exp()
            },
            T::zero(),
            T::one(),
            spec,
        )?
    } else {
        integrate_finite(|x: T| g(mean * x) * pdf_with_norm(m, m, ln_norm, x), T::zero(), T::one(), spec)?
    };
    let tail = integrate_semi_infinite(
        |x: T| {
            let w = pdf_with_norm(m, m, ln_norm, x);
            if w == T::zero() {
                T::zero()
            } else {
                g(mean * x) * w
            }
        },
        T::one(),
        spec,
    )?;
    Ok(head.combine(tail))
}

/// Average BER by quadrature with the chosen instantaneous-BER kernel.
///
/// The result carries the error estimate and the convergence flag; a
/// non-converged result is returned as-is rather than as an error.
pub fn aber_oracle<T: Real>(
    ch: &ChannelParams<T>,
    modulation: &Modulation<T>,
    kind: &BerKind<T>,
    spec: &QuadratureSpec<T>,
) -> Result<QuadratureResult<T>> {
    match kind {
        BerKind::Exact => average_over_fading(ch, |g| ber_exact_unchecked(modulation, g), spec),
        BerKind::Lu => average_over_fading(ch, |g| ber_lu_unchecked(modulation, g), spec),
        BerKind::Expq(v) => average_over_fading(ch, |g| ber_expq_unchecked(modulation, v, g), spec),
    }
}

/// `E[Q(√(2αγ))]` by quadrature.
pub fn avg_q_oracle<T: Real>(ch: &ChannelParams<T>, alpha: T, spec: &QuadratureSpec<T>) -> Result<QuadratureResult<T>> {
    let two_alpha = T::lit(2.0) * alpha;
    average_over_fading(ch, |g| gauss_q((two_alpha * g).sqrt()), spec)
}

/// `E[Q²(√(2αγ))]` by quadrature.
pub fn avg_q2_oracle<T: Real>(ch: &ChannelParams<T>, alpha: T, spec: &QuadratureSpec<T>) -> Result<QuadratureResult<T>> {
    let two_alpha = T::lit(2.0) * alpha;
    average_over_fading(
        ch,
        |g| {
            let q = gauss_q((two_alpha * g).sqrt());
            q * q
        },
        spec,
    )
}
