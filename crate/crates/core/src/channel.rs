//! Nakagami-m channel statistics, instantaneous M-QAM bit error rates and
//! exponential-sum approximations of the Gauss Q-function.
//!
//! SNR values here are linear power ratios. Decibel conversion belongs to
//! the presentation layer ([`db_to_linear`] is provided for it).

use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::{gauss_q, log_gamma};

/// `10^(db/10)`.
pub fn db_to_linear<T: Real>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

/// Nakagami-m fading: shape `m` and mean SNR `γ̄` (linear).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams<T> {
    m: T,
    mean_snr: T,
}

impl<T: Real> ChannelParams<T> {
    /// `m < 1` (hyper-Rayleigh) is allowed.
    pub fn new(m: T, mean_snr: T) -> Result<Self> {
        if !(m > T::zero() && m.is_finite()) {
            return Err(Error::domain("ChannelParams", "m", m.as_f64(), "finite and > 0"));
        }
        if !(mean_snr > T::zero() && mean_snr.is_finite()) {
            return Err(Error::domain(
                "ChannelParams",
                "mean_snr",
                mean_snr.as_f64(),
                "finite and > 0",
            ));
        }
        Ok(Self { m, mean_snr })
    }

    pub fn from_db(m: T, mean_snr_db: T) -> Result<Self> {
        Self::new(m, db_to_linear(mean_snr_db))
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn mean_snr(&self) -> T {
        self.mean_snr
    }

    /// Copy with a different mean SNR.
    pub fn with_mean_snr(&self, mean_snr: T) -> Result<Self> {
        Self::new(self.m, mean_snr)
    }
}

/// Square M-QAM with its BER constants
/// `c0 = (√M - 1) / (√M log2 M)` and `c1 = 3 log2 M / (2 (M - 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulation<T> {
    order: u32,
    c0: T,
    c1: T,
}

impl<T: Real> Modulation<T> {
    pub const SUPPORTED_ORDERS: [u32; 6] = [4, 16, 64, 256, 1024, 4096];

    pub fn qam(order: u32) -> Result<Self> {
        if !Self::SUPPORTED_ORDERS.contains(&order) {
            return Err(Error::InvalidParameter(format!(
                "QAM order {order} is not a supported square constellation (4, 16, 64, 256, 1024, 4096)"
            )));
        }
        let m = T::lit(f64::from(order));
        let root = m.sqrt();
        let bits = m.log2();
        let c0 = (root - T::one()) / (root * bits);
        let c1 = T::lit(3.0) * bits / (T::lit(2.0) * (m - T::one()));
        Ok(Self { order, c0, c1 })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn c0(&self) -> T {
        self.c0
    }

    pub fn c1(&self) -> T {
        self.c1
    }

    /// Number of terms `√M / 2` in the nearest-neighbour BER sum.
    pub fn lu_terms(&self) -> usize {
        // order is a power of 4, so the root is an exact even integer
        (f64::from(self.order).sqrt() as usize) / 2
    }
}

/// `w · exp(-r x²)` term of an exponential Q approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm<T> {
    pub weight: T,
    pub rate: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QApproxTag {
    Exact,
    ChianiTwoTerm,
    Custom,
}

/// Q-function model used by the exponential-approximation baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct QApproxVariant<T> {
    tag: QApproxTag,
    coefficients: Vec<ExpTerm<T>>,
}

impl<T: Real> QApproxVariant<T> {
    pub fn exact() -> Self {
        Self {
            tag: QApproxTag::Exact,
            coefficients: Vec::new(),
        }
    }

    /// `Q(x) ≈ e^{-x²/2}/12 + e^{-2x²/3}/4`.
    pub fn chiani() -> Self {
        Self {
            tag: QApproxTag::ChianiTwoTerm,
            coefficients: vec![
                ExpTerm {
                    weight: T::lit(1.0 / 12.0),
                    rate: T::lit(0.5),
                },
                ExpTerm {
                    weight: T::lit(0.25),
                    rate: T::lit(2.0 / 3.0),
                },
            ],
        }
    }

    pub fn custom(coefficients: Vec<ExpTerm<T>>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParameter(
                "exponential Q approximation needs at least one term".into(),
            ));
        }
        for term in &coefficients {
            if !(term.weight > T::zero() && term.weight.is_finite()) {
                return Err(Error::domain("QApproxVariant", "weight", term.weight.as_f64(), "finite and > 0"));
            }
            if !(term.rate > T::zero() && term.rate.is_finite()) {
                return Err(Error::domain("QApproxVariant", "rate", term.rate.as_f64(), "finite and > 0"));
            }
        }
        Ok(Self {
            tag: QApproxTag::Custom,
            coefficients,
        })
    }

    pub fn tag(&self) -> QApproxTag {
        self.tag
    }

    pub fn coefficients(&self) -> &[ExpTerm<T>] {
        &self.coefficients
    }

    pub fn label(&self) -> &'static str {
        match self.tag {
            QApproxTag::Exact => "exact",
            QApproxTag::ChianiTwoTerm => "chiani",
            QApproxTag::Custom => "custom",
        }
    }

    pub(crate) fn eval_unchecked(&self, x: T) -> T {
        match self.tag {
            QApproxTag::Exact => gauss_q(x),
            _ => self
                .coefficients
                .iter()
                .fold(T::zero(), |acc, t| acc + t.weight * (-t.rate * x * x).exp()),
        }
    }
}

fn check_snr<T: Real>(function: &'static str, snr: T) -> Result<()> {
    if snr >= T::zero() && !snr.is_nan() {
        Ok(())
    } else {
        Err(Error::domain(function, "snr", snr.as_f64(), ">= 0"))
    }
}

/// Instantaneous-SNR density `(m/γ̄)^m γ^(m-1) e^(-mγ/γ̄) / Γ(m)`.
pub fn pdf<T: Real>(ch: &ChannelParams<T>, snr: T) -> Result<T> {
    check_snr("pdf", snr)?;
    let m = ch.m;
    let rate = m / ch.mean_snr;
    if snr == T::zero() {
        return Ok(if m < T::one() {
            T::infinity()
        } else if m == T::one() {
            rate
        } else {
            T::zero()
        });
    }
    let ln_norm = m * rate.ln() - log_gamma(m)?;
    Ok(pdf_with_norm(m, rate, ln_norm, snr))
}

#[inline]
pub(crate) fn pdf_with_norm<T: Real>(m: T, rate: T, ln_norm: T, snr: T) -> T {
    (ln_norm + (m - T::one()) * snr.ln() - rate * snr).exp()
}

/// Moment generating function `E[e^{pγ}] = (1 - p γ̄ / m)^(-m)`.
pub fn mgf<T: Real>(ch: &ChannelParams<T>, p: T) -> Result<T> {
    let arg = p * ch.mean_snr / ch.m;
    if !(arg < T::one()) {
        return Err(Error::domain("mgf", "p", p.as_f64(), "p γ̄ / m < 1"));
    }
    Ok((-ch.m * (-arg).ln_1p()).exp())
}

/// `4 c0 Q(√(2 c1 γ)) - 4 c0² Q²(√(2 c1 γ))`.
pub fn ber_exact<T: Real>(modulation: &Modulation<T>, snr: T) -> Result<T> {
    check_snr("ber_exact", snr)?;
    Ok(ber_exact_unchecked(modulation, snr))
}

pub(crate) fn ber_exact_unchecked<T: Real>(modulation: &Modulation<T>, snr: T) -> T {
    let c0 = modulation.c0;
    let q = gauss_q((T::lit(2.0) * modulation.c1 * snr).sqrt());
    let four_c0 = T::lit(4.0) * c0;
    four_c0 * q - four_c0 * c0 * q * q
}

/// Nearest-neighbour approximation `4 c0 Σ_{j=1}^{√M/2} Q(√(2 c1 (2j-1)² γ))`.
///
/// Not a probability for `M > 4` at low SNR: the sum overcounts and can
/// exceed one.
pub fn ber_lu_approx<T: Real>(modulation: &Modulation<T>, snr: T) -> Result<T> {
    check_snr("ber_lu_approx", snr)?;
    Ok(ber_lu_unchecked(modulation, snr))
}

pub(crate) fn ber_lu_unchecked<T: Real>(modulation: &Modulation<T>, snr: T) -> T {
    let base = T::lit(2.0) * modulation.c1 * snr;
    let mut sum = T::zero();
    for j in 1..=modulation.lu_terms() {
        let odd = T::lit((2 * j - 1) as f64);
        sum = sum + gauss_q((base * odd * odd).sqrt());
    }
    T::lit(4.0) * modulation.c0 * sum
}

/// Exponential-sum Q approximation; `Exact` defers to [`gauss_q`].
pub fn q_exp_approx<T: Real>(variant: &QApproxVariant<T>, x: T) -> Result<T> {
    if !(x >= T::zero()) {
        return Err(Error::domain("q_exp_approx", "x", x.as_f64(), ">= 0"));
    }
    Ok(variant.eval_unchecked(x))
}

/// [`ber_exact`] with `Q` replaced by the given approximation.
pub(crate) fn ber_expq_unchecked<T: Real>(modulation: &Modulation<T>, variant: &QApproxVariant<T>, snr: T) -> T {
    let c0 = modulation.c0;
    let q = variant.eval_unchecked((T::lit(2.0) * modulation.c1 * snr).sqrt());
    let four_c0 = T::lit(4.0) * c0;
    four_c0 * q - four_c0 * c0 * q * q
}
