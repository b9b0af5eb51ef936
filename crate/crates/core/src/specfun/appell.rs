//! Appell F1 via its Euler-type integral
//!
//! ```text
//! F1(a; b1, b2; c; x, y) = 1/B(a, c-a) ∫₀¹ t^(a-1) (1-t)^(c-a-1) (1-xt)^(-b1) (1-yt)^(-b2) dt
//! ```
//!
//! valid for `c > a > 0` and, as restricted here, `x, y <= 0`. When
//! `c - a < 1` the `(1-t)^(c-a-1)` singularity is absorbed by
//! `t = 1 - u^(1/(c-a))` (for `c - a = ½` this is `t = 1 - u²`), which turns
//! the weight into the constant `1/(c-a)`.

use super::gamma::ln_beta;
use super::{check_positive, Accuracy};
use crate::error::{Error, Result};
use crate::quad::tanh_sinh::{DeNode, DeRule, MAX_LEVEL};
use crate::quad::{integrate_finite, InfiniteMap, QuadratureSpec};
use crate::real::Real;

/// Parameters of `F1(a; b1, b2; c; x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppellF1<T> {
    pub a: T,
    pub b1: T,
    pub b2: T,
    pub c: T,
    pub x: T,
    pub y: T,
}

/// `F1(a; b1, b2; c; x, y)` at the default [`Accuracy`].
pub fn appell_f1<T: Real>(a: T, b1: T, b2: T, c: T, x: T, y: T) -> Result<T> {
    AppellF1 { a, b1, b2, c, x, y }.eval(&Accuracy::default())
}

impl<T: Real> AppellF1<T> {
    pub fn validate(&self) -> Result<()> {
        check_positive("appell_f1", "a", self.a)?;
        if !(self.c - self.a > T::zero()) || !self.c.is_finite() {
            return Err(Error::domain("appell_f1", "c", self.c.as_f64(), "c > a"));
        }
        if !self.b1.is_finite() {
            return Err(Error::domain("appell_f1", "b1", self.b1.as_f64(), "finite"));
        }
        if !self.b2.is_finite() {
            return Err(Error::domain("appell_f1", "b2", self.b2.as_f64(), "finite"));
        }
        if !(self.x <= T::zero()) || !self.x.is_finite() {
            return Err(Error::domain("appell_f1", "x", self.x.as_f64(), "finite and <= 0"));
        }
        if !(self.y <= T::zero()) || !self.y.is_finite() {
            return Err(Error::domain("appell_f1", "y", self.y.as_f64(), "finite and <= 0"));
        }
        Ok(())
    }

    pub fn eval(&self, accuracy: &Accuracy<T>) -> Result<T> {
        self.eval_scaled(T::zero(), accuracy)
    }

    /// Returns `exp(log_scale) · F1`, with the scale folded into the
    /// integrand so that neither factor has to be representable on its own.
    pub fn eval_scaled(&self, log_scale: T, accuracy: &Accuracy<T>) -> Result<T> {
        self.validate()?;
        if !log_scale.is_finite() {
            return Err(Error::domain("appell_f1", "log_scale", log_scale.as_f64(), "finite"));
        }
        let Self { a, b1, b2, c, x, y } = *self;
        let gap = c - a;
        let log_front = log_scale - ln_beta(a, gap)?;

        let spec = QuadratureSpec {
            rel_tol: accuracy.rel_tol.max(T::lit(1e-14)),
            abs_tol: scaled_floor(accuracy.abs_floor, log_scale),
            max_subdivisions: 2000,
            infinite_map: InfiniteMap::None,
        };

        let one = T::one();
        let shared = move |t: T| (a - one) * t.ln() - b1 * (-x * t).ln_1p() - b2 * (-y * t).ln_1p();

        let result = if gap < one {
            let k = gap.recip();
            let log_front = log_front - gap.ln();
            integrate_finite(
                move |u: T| {
                    // t = 1 - u^k without cancellation for u near 1.
                    let t = -(k * u.ln()).exp_m1();
                    (log_front + shared(t)).exp()
                },
                T::zero(),
                one,
                &spec,
            )?
        } else {
            let weight = gap - one;
            integrate_finite(
                move |t: T| {
                    let mut log_v = log_front + shared(t);
                    if weight != T::zero() {
                        log_v = log_v + weight * (-t).ln_1p();
                    }
                    log_v.exp()
                },
                T::zero(),
                one,
                &spec,
            )?
        };

        result.require_converged("appell_f1")
    }
}

/// The family `F1(a+n; b1, b2+n; c+n; x, y)` for `n = 0, 1, ...`.
///
/// Members share `c - a` and differ only by a factor `(t / (1 - yt))^n` in
/// the Euler integrand, so the whole family is integrated on one set of
/// tanh-sinh nodes. If that rule does not settle to the requested accuracy
/// each member is evaluated on its own by [`AppellF1::eval_scaled`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppellF1Family<T> {
    pub base: AppellF1<T>,
}

impl<T: Real> AppellF1Family<T> {
    pub fn member(&self, n: usize) -> AppellF1<T> {
        let nf = T::lit(n as f64);
        AppellF1 {
            a: self.base.a + nf,
            b2: self.base.b2 + nf,
            c: self.base.c + nf,
            ..self.base
        }
    }

    /// `exp(log_scale) · F1_n` for `n = 0..=n_max`.
    pub fn eval_scaled(&self, n_max: usize, log_scale: T, accuracy: &Accuracy<T>) -> Result<Vec<T>> {
        let gap = self.base.c - self.base.a;
        let mut out = self.euler_integrals_scaled(n_max, log_scale, accuracy)?;
        for (n, v) in out.iter_mut().enumerate() {
            *v = *v * (-ln_beta(self.base.a + T::lit(n as f64), gap)?).exp();
        }
        Ok(out)
    }

    /// `exp(log_scale) · B(a+n, c-a) · F1_n`, i.e. the bare Euler integrals
    /// `∫₀¹ t^(a+n-1) (1-t)^(c-a-1) (1-xt)^(-b1) (1-yt)^(-b2-n) dt`.
    pub fn euler_integrals_scaled(&self, n_max: usize, log_scale: T, accuracy: &Accuracy<T>) -> Result<Vec<T>> {
        self.base.validate()?;
        if !log_scale.is_finite() {
            return Err(Error::domain("appell_f1", "log_scale", log_scale.as_f64(), "finite"));
        }
        if let Some(v) = self.double_exponential(n_max, log_scale, accuracy) {
            return Ok(v);
        }
        let gap = self.base.c - self.base.a;
        (0..=n_max)
            .map(|n| {
                let member = self.member(n);
                let scale = log_scale + ln_beta(member.a, gap)?;
                member.eval_scaled(scale, accuracy).map_err(|e| match e {
                    Error::NonConvergence { estimate, .. } => Error::SeriesTerm { term: n, estimate },
                    other => other,
                })
            })
            .collect()
    }

    /// All members on shared tanh-sinh nodes; `None` if the levels do not
    /// settle or the integrand is not negligible at the ends of the range.
    fn double_exponential(&self, n_max: usize, log_scale: T, accuracy: &Accuracy<T>) -> Option<Vec<T>> {
        let AppellF1 { a, b1, b2, c, x, y } = self.base;
        let one = T::one();
        let rule = DeRule::shared();
        let count = n_max + 1;
        let floor = scaled_floor(accuracy.abs_floor, log_scale);
        let rel = accuracy.rel_tol.max(T::lit(1e-14));

        // w·f_n at one node, for every n, written into `out`.
        let contributions = |node: &DeNode, out: &mut [T]| {
            let t = T::lit(node.t);
            let log_f = log_scale
                + T::lit(node.ln_weight)
                + (a - one) * T::lit(node.ln_t)
                + (c - a - one) * T::lit(node.ln_one_minus_t)
                - b1 * (-x * t).ln_1p()
                - b2 * (-y * t).ln_1p();
            let ratio = t / (one - y * t);
            let mut v = log_f.exp();
            for o in out.iter_mut() {
                *o = v;
                v = v * ratio;
            }
        };

        // Level 0 is kept node by node to decide how much of the s-range
        // matters; later levels skip nodes beyond the negligible ends.
        let level0 = rule.level(0);
        let mut table = vec![T::zero(); level0.len() * count];
        for (i, node) in level0.iter().enumerate() {
            contributions(node, &mut table[i * count..(i + 1) * count]);
        }
        let mut sums = vec![T::zero(); count];
        for row in table.chunks(count) {
            for (s, &v) in sums.iter_mut().zip(row) {
                *s = *s + v;
            }
        }
        let negligible = |i: usize| {
            let row = &table[i * count..(i + 1) * count];
            row.iter().zip(&sums).all(|(&v, &total)| v <= T::lit(1e-4) * rel * total.abs() || v <= floor)
        };
        let last = level0.len() - 1;
        if !negligible(0) || !negligible(last) {
            return None;
        }
        let mut lo = 0;
        while lo + 1 < last && negligible(lo + 1) {
            lo += 1;
        }
        let mut hi = last;
        while hi > lo + 1 && negligible(hi - 1) {
            hi -= 1;
        }
        let (s_lo, s_hi) = (level0[lo].s, level0[hi].s);

        let mut scratch = vec![T::zero(); count];
        let mut history: Vec<Vec<T>> = Vec::with_capacity(MAX_LEVEL + 1);
        for level in 0..=MAX_LEVEL {
            if level > 0 {
                for node in rule.level(level).iter().filter(|n| n.s > s_lo && n.s < s_hi) {
                    contributions(node, &mut scratch);
                    for (s, &v) in sums.iter_mut().zip(&scratch) {
                        *s = *s + v;
                    }
                }
            }
            let h = T::lit(rule.step(level));
            let current: Vec<T> = sums.iter().map(|&s| s * h).collect();
            if current.iter().any(|v| !v.is_finite()) {
                return None;
            }
            if level >= 2 {
                let (p1, p2) = (&history[level - 1], &history[level - 2]);
                let settled = (0..count).all(|n| {
                    let cur = current[n];
                    de_error(cur, p1[n], p2[n]) <= (rel * cur.abs()).max(floor)
                });
                if settled {
                    return Some(current);
                }
            }
            history.push(current);
        }
        None
    }
}

/// Error estimate for a double-exponential sequence of halved steps.
///
/// Each halving roughly doubles the number of correct digits, so with
/// relative differences `d1 = |I_L - I_{L-1}|` and `d2 = |I_L - I_{L-2}|`
/// the error of `I_L` is about `d1^(ln d1 / ln d2)`, and no smaller than
/// `d1²`. Without evidence of that regime (`d1 >= d2`, or `d2` not small)
/// the estimate is `d1` itself.
fn de_error<T: Real>(current: T, prev1: T, prev2: T) -> T {
    let scale = current.abs();
    let d1 = (current - prev1).abs();
    if d1 == T::zero() || scale == T::zero() {
        return d1;
    }
    let d2 = (current - prev2).abs();
    let (r1, r2) = (d1 / scale, d2 / scale);
    if !(r1 < r2 && r2 < T::lit(0.1)) {
        return d1;
    }
    let quadratic = (r1.ln() * r1.ln() / r2.ln()).exp();
    quadratic.max(r1 * r1).min(r1) * scale
}

fn scaled_floor<T: Real>(abs_floor: T, log_scale: T) -> T {
    let v = (abs_floor.ln() + log_scale).exp();
    if v.is_finite() {
        v
    } else {
        T::max_value()
    }
}
