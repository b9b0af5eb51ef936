//! Wynn epsilon-algorithm table used to extrapolate the sequence of partial
//! integrals produced while bisecting towards an endpoint singularity.

use crate::real::Real;

const CAPACITY: usize = 52;
const MAX_EXTRAPOLATIONS: usize = 50;

pub(crate) struct EpsilonTable<T> {
    entries: [T; CAPACITY],
    len: usize,
    last_three: [T; 3],
    calls: usize,
}

impl<T: Real> EpsilonTable<T> {
    pub fn new() -> Self {
        Self {
            entries: [T::zero(); CAPACITY],
            len: 0,
            last_three: [T::zero(); 3],
            calls: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn push(&mut self, value: T) {
        if self.len < CAPACITY {
            self.entries[self.len] = value;
            self.len += 1;
        }
    }

    /// Runs one extrapolation step and returns `(estimate, error)`.
    pub fn extrapolate(&mut self) -> (T, T) {
        let eps = T::epsilon();
        let five_eps = T::lit(5.0) * eps;
        let big = T::max_value();
        let tab = &mut self.entries;

        let n = self.len - 1;
        let current = tab[n];
        let mut result = current;
        let mut abserr = big;

        if n < 2 {
            return (current, five_eps * current.abs());
        }

        let newelm = n / 2;
        let n_orig = n;
        let mut n_final = n;

        tab[n + 2] = tab[n];
        tab[n] = big;

        for i in 0..newelm {
            let mut res = tab[n - 2 * i + 2];
            let e0 = tab[n - 2 * i - 2];
            let e1 = tab[n - 2 * i - 1];
            let e2 = res;

            let e1abs = e1.abs();
            let delta2 = e2 - e1;
            let err2 = delta2.abs();
            let tol2 = e2.abs().max(e1abs) * eps;
            let delta3 = e1 - e0;
            let err3 = delta3.abs();
            let tol3 = e1abs.max(e0.abs()) * eps;

            if err2 <= tol2 && err3 <= tol3 {
                // e0, e1, e2 agree to machine accuracy.
                let absolute = err2 + err3;
                let relative = five_eps * res.abs();
                return (res, absolute.max(relative));
            }

            let e3 = tab[n - 2 * i];
            tab[n - 2 * i] = e1;
            let delta1 = e1 - e3;
            let err1 = delta1.abs();
            let tol1 = e1abs.max(e3.abs()) * eps;

            if err1 <= tol1 || err2 <= tol2 || err3 <= tol3 {
                n_final = 2 * i;
                break;
            }

            let ss = (delta1.recip() + delta2.recip()) - delta3.recip();
            if (ss * e1).abs() <= T::lit(1e-4) {
                n_final = 2 * i;
                break;
            }

            res = e1 + ss.recip();
            tab[n - 2 * i] = res;
            let error = err2 + (res - e2).abs() + err3;
            if error <= abserr {
                abserr = error;
                result = res;
            }
        }

        let limexp = MAX_EXTRAPOLATIONS - 1;
        if n_final == limexp {
            n_final = 2 * (limexp / 2);
        }

        if n_orig % 2 == 1 {
            for i in 0..=newelm {
                tab[1 + 2 * i] = tab[2 * i + 3];
            }
        } else {
            for i in 0..=newelm {
                tab[2 * i] = tab[2 * i + 2];
            }
        }
        if n_orig != n_final {
            for i in 0..=n_final {
                tab[i] = tab[n_orig - n_final + i];
            }
        }
        self.len = n_final + 1;

        if self.calls < 3 {
            self.last_three[self.calls] = result;
            abserr = big;
        } else {
            abserr = (result - self.last_three[2]).abs()
                + (result - self.last_three[1]).abs()
                + (result - self.last_three[0]).abs();
            self.last_three[0] = self.last_three[1];
            self.last_three[1] = self.last_three[2];
            self.last_three[2] = result;
        }
        self.calls += 1;

        (result, abserr.max(five_eps * result.abs()))
    }
}
