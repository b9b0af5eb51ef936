use super::check_positive;
use super::gamma::ln_beta;
use crate::error::{Error, Result};
use crate::real::Real;

const MAX_ITERATIONS: usize = 10_000;

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn reg_inc_beta<T: Real>(x: T, a: T, b: T) -> Result<T> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::domain("reg_inc_beta", "x", x.as_f64(), "0 <= x <= 1"));
    }
    reg_inc_beta_split(x, T::one() - x, a, b)
}

/// `I_x(a, b)` with the complement `1 - x` supplied by the caller.
///
/// Use this when `1 - x` is available without cancellation, e.g.
/// `x = m / (m + s)` and `1 - x = s / (m + s)`.
pub fn reg_inc_beta_split<T: Real>(x: T, one_minus_x: T, a: T, b: T) -> Result<T> {
    check_positive("reg_inc_beta", "a", a)?;
    check_positive("reg_inc_beta", "b", b)?;
    let y = one_minus_x;
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::domain("reg_inc_beta", "x", x.as_f64(), "0 <= x <= 1"));
    }
    if !(y >= T::zero() && y <= T::one()) || (x + y - T::one()).abs() > T::lit(4.0) * T::epsilon() {
        return Err(Error::domain(
            "reg_inc_beta",
            "one_minus_x",
            y.as_f64(),
            "consistent with 1 - x",
        ));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    if y == T::zero() {
        return Ok(T::one());
    }

    let ln_b = ln_beta(a, b)?;
    if x <= a / (a + b) {
        front_times_fraction(x, y, a, b, ln_b)
    } else {
        Ok(T::one() - front_times_fraction(y, x, b, a, ln_b)?)
    }
}

fn front_times_fraction<T: Real>(x: T, y: T, a: T, b: T, ln_b: T) -> Result<T> {
    let front = (a * x.ln() + b * y.ln() - ln_b).exp() / a;
    if front == T::zero() {
        return Ok(T::zero());
    }
    Ok(front * continued_fraction(x, a, b)?)
}

/// Modified Lentz evaluation of the standard incomplete-beta continued
/// fraction `1 / (1 + d1 / (1 + d2 / (1 + ...)))`.
fn continued_fraction<T: Real>(x: T, a: T, b: T) -> Result<T> {
    let tiny = T::min_positive_value() / T::epsilon();
    let eps = T::epsilon();
    let one = T::one();
    let two = one + one;

    let qab = a + b;
    let qap = a + one;
    let qam = a - one;

    let guard = |v: T| if v.abs() < tiny { tiny } else { v };

    let mut c = one;
    let mut d = guard(one - qab * x / qap).recip();
    let mut h = d;

    let mut m = one;
    for _ in 0..MAX_ITERATIONS {
        let m2 = two * m;

        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = guard(one + aa * d).recip();
        c = guard(one + aa / c);
        h = h * d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = guard(one + aa * d).recip();
        c = guard(one + aa / c);
        let delta = d * c;
        h = h * delta;

        if (delta - one).abs() <= eps {
            return Ok(h);
        }
        m = m + one;
    }
    Err(Error::NonConvergence {
        context: "reg_inc_beta continued fraction",
        value: h.as_f64(),
        estimate: f64::NAN,
    })
}
