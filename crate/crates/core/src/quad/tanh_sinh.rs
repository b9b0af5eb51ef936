//! Tanh-sinh (double-exponential) nodes on `[0, 1]`.
//!
//! `t = 1 / (1 + e^(-u))` with `u = π sinh s`, so `dt/ds = π cosh s · t (1 - t)`.
//! Nodes are stored with `ln t` and `ln(1 - t)` computed directly from `u`,
//! which lets callers evaluate endpoint-singular integrands in log space
//! without ever forming `1 - t` by subtraction.
//!
//! Levels are nested: level 0 holds `s = k h₀`, level `l > 0` holds the odd
//! multiples of `h₀ / 2^l`. The trapezoidal estimate at level `L` is
//! `h_L Σ_{l <= L} Σ_nodes w f`. Nodes within a level are sorted by `s`.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy)]
pub(crate) struct DeNode {
    pub s: f64,
    pub t: f64,
    pub ln_t: f64,
    pub ln_one_minus_t: f64,
    /// `ln(dt/ds)`.
    pub ln_weight: f64,
}

#[derive(Debug)]
pub(crate) struct DeRule {
    levels: Vec<Vec<DeNode>>,
}

const H0: f64 = 1.0;
/// Half-width of the `s` range; `t` and `1 - t` at the edges are about `e^(-86)`.
const S_MAX: f64 = 4.0;
pub(crate) const MAX_LEVEL: usize = 8;

fn node(s: f64) -> DeNode {
    let u = std::f64::consts::PI * s.sinh();
    // ln(1 / (1 + e^-v)) without overflow for either sign of v.
    let log_logistic = |v: f64| if v >= 0.0 { -(-v).exp().ln_1p() } else { v - v.exp().ln_1p() };
    let ln_t = log_logistic(u);
    let ln_one_minus_t = log_logistic(-u);
    DeNode {
        s,
        t: ln_t.exp(),
        ln_t,
        ln_one_minus_t,
        ln_weight: (std::f64::consts::PI * s.cosh()).ln() + ln_t + ln_one_minus_t,
    }
}

impl DeRule {
    fn build() -> Self {
        let mut levels = Vec::with_capacity(MAX_LEVEL + 1);
        let k0 = (S_MAX / H0).round() as i64;
        levels.push((-k0..=k0).map(|k| node(k as f64 * H0)).collect());
        for l in 1..=MAX_LEVEL {
            let h = H0 / (1u64 << l) as f64;
            let kmax = (S_MAX / h).round() as i64;
            levels.push((-kmax..=kmax).filter(|k| k % 2 != 0).map(|k| node(k as f64 * h)).collect());
        }
        Self { levels }
    }

    pub fn shared() -> &'static DeRule {
        static RULE: OnceLock<DeRule> = OnceLock::new();
        RULE.get_or_init(DeRule::build)
    }

    pub fn level(&self, l: usize) -> &[DeNode] {
        &self.levels[l]
    }

    pub fn step(&self, l: usize) -> f64 {
        H0 / (1u64 << l) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(f: impl Fn(&DeNode) -> f64, level: usize) -> f64 {
        let rule = DeRule::shared();
        let sum: f64 = (0..=level).flat_map(|l| rule.level(l).iter()).map(|n| f(n) * n.ln_weight.exp()).sum();
        sum * rule.step(level)
    }

    #[test]
    fn complements_are_consistent() {
        for l in 0..=MAX_LEVEL {
            for n in DeRule::shared().level(l) {
                let total = n.ln_t.exp() + n.ln_one_minus_t.exp();
                assert!((total - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn endpoint_singular_integrals() {
        // ∫ t^-½ (1-t)^-½ dt = π
        let v = integrate(|n| (-0.5 * n.ln_t - 0.5 * n.ln_one_minus_t).exp(), 5);
        assert!((v - std::f64::consts::PI).abs() < 1e-13);
        // ∫ ln t dt = -1
        let v = integrate(|n| n.ln_t, 5);
        assert!((v + 1.0).abs() < 1e-13);
    }
}
