use super::check_positive;
use crate::error::Result;
use crate::real::Real;

/// `ln Γ(x)` for finite `x > 0`.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    check_positive("log_gamma", "x", x)?;
    Ok(x.ln_gamma_kernel())
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) - ln Γ(a + b)`.
pub fn ln_beta<T: Real>(a: T, b: T) -> Result<T> {
    check_positive("beta", "a", a)?;
    check_positive("beta", "b", b)?;
    Ok(a.ln_gamma_kernel() + b.ln_gamma_kernel() - (a + b).ln_gamma_kernel())
}

/// Euler beta function `B(a, b)`.
pub fn beta<T: Real>(a: T, b: T) -> Result<T> {
    ln_beta(a, b).map(T::exp)
}

/// Rising factorial with an overflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pochhammer<T> {
    pub value: T,
    /// Set when the product left the finite range; `value` is then ±∞.
    pub overflow: bool,
}

/// `(x)_n = x (x+1) ... (x+n-1)`, with `(x)_0 = 1`.
///
/// A factor that is exactly zero (non-positive integer `x` with `n > -x`)
/// yields an exact zero.
pub fn pochhammer<T: Real>(x: T, n: usize) -> Pochhammer<T> {
    let mut value = T::one();
    let mut k = T::zero();
    for _ in 0..n {
        let factor = x + k;
        if factor == T::zero() {
            return Pochhammer {
                value: T::zero(),
                overflow: false,
            };
        }
        value = value * factor;
        k = k + T::one();
    }
    Pochhammer {
        value,
        overflow: value.is_infinite(),
    }
}
