use super::lemmas::{beta_term, r2_series_with, R2Series};
use super::truncation::TruncationPolicy;
use crate::channel::{mgf, ChannelParams, Modulation, QApproxTag, QApproxVariant};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::Accuracy;

/// Closed-form average BER together with the series bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm<T> {
    pub value: T,
    pub series: R2Series<T>,
}

/// Average BER of square M-QAM:
/// `(2c0 - c0²) I_{m/(m+c1γ̄)}(m, ½) + 4c0² R₂(c1)`.
pub fn aber_closed<T: Real>(ch: &ChannelParams<T>, modulation: &Modulation<T>, trunc: &TruncationPolicy<T>) -> Result<T> {
    aber_closed_detailed(ch, modulation, trunc, &Accuracy::default()).map(|c| c.value)
}

pub fn aber_closed_detailed<T: Real>(
    ch: &ChannelParams<T>,
    modulation: &Modulation<T>,
    trunc: &TruncationPolicy<T>,
    accuracy: &Accuracy<T>,
) -> Result<ClosedForm<T>> {
    let c0 = modulation.c0();
    let c1 = modulation.c1();
    let inc = beta_term(ch, c1)?;
    let series = r2_series_with(ch, c1, trunc, accuracy)?;
    let value = (T::lit(2.0) * c0 - c0 * c0) * inc + T::lit(4.0) * c0 * c0 * series.value;
    Ok(ClosedForm { value, series })
}

/// `c0 I + 4c0² R₂`: the same combination with `c0` in place of `2c0 - c0²`
/// as the coefficient of the incomplete-beta term.
///
/// Only agrees with the averaged BER when `c0 = 1`; no supported
/// constellation has that. Kept for diagnostics.
pub fn aber_closed_c0_form<T: Real>(
    ch: &ChannelParams<T>,
    modulation: &Modulation<T>,
    trunc: &TruncationPolicy<T>,
) -> Result<T> {
    let c0 = modulation.c0();
    let c1 = modulation.c1();
    let inc = beta_term(ch, c1)?;
    let series = r2_series_with(ch, c1, trunc, &Accuracy::default())?;
    Ok(c0 * inc + T::lit(4.0) * c0 * c0 * series.value)
}

/// Average of the nearest-neighbour approximation:
/// `2c0 Σ_{j=1}^{√M/2} I_{m/(m+c1(2j-1)²γ̄)}(m, ½)`.
pub fn aber_lu_closed<T: Real>(ch: &ChannelParams<T>, modulation: &Modulation<T>) -> Result<T> {
    let c1 = modulation.c1();
    let mut sum = T::zero();
    for j in 1..=modulation.lu_terms() {
        let odd = T::lit((2 * j - 1) as f64);
        sum = sum + beta_term(ch, c1 * odd * odd)?;
    }
    Ok(T::lit(2.0) * modulation.c0() * sum)
}

/// Average BER with `Q(x) ≈ Σ wᵢ e^{-rᵢx²}`, averaged through the MGF:
/// `4c0 Σ wᵢ M(-2c1rᵢ) - 4c0² Σᵢⱼ wᵢwⱼ M(-2c1(rᵢ+rⱼ))`.
pub fn aber_expq_closed<T: Real>(
    ch: &ChannelParams<T>,
    modulation: &Modulation<T>,
    variant: &QApproxVariant<T>,
) -> Result<T> {
    if variant.tag() == QApproxTag::Exact {
        return Err(Error::InvalidParameter(
            "the exact Q-function has no exponential-sum closed form; use the series or oracle".into(),
        ));
    }
    let c0 = modulation.c0();
    let two_c1 = T::lit(2.0) * modulation.c1();
    let terms = variant.coefficients();

    let mut linear = T::zero();
    for t in terms {
        linear = linear + t.weight * mgf(ch, -two_c1 * t.rate)?;
    }
    let mut quadratic = T::zero();
    for ti in terms {
        for tj in terms {
            quadratic = quadratic + ti.weight * tj.weight * mgf(ch, -two_c1 * (ti.rate + tj.rate))?;
        }
    }
    let four_c0 = T::lit(4.0) * c0;
    Ok(four_c0 * linear - four_c0 * c0 * quadratic)
}
