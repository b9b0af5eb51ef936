//! Globally adaptive bisection with epsilon-algorithm extrapolation.
//!
//! The control flow follows QUADPACK's QAGS: panels are bisected in order of
//! their error estimate; once the largest error sits on a panel of the
//! deepest bisection level (the signature of an endpoint singularity), the
//! remaining "large" panels are refined and the running total is fed to the
//! epsilon table.

use super::epsilon::EpsilonTable;
use super::kronrod::gk21;
use super::QuadratureResult;
use crate::real::Real;

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    level: u32,
}

struct Workspace<T> {
    panels: Vec<Panel<T>>,
    max_level: u32,
}

impl<T: Real> Workspace<T> {
    fn largest(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.panels.iter().enumerate().skip(1) {
            if p.error > self.panels[best].error {
                best = i;
            }
        }
        best
    }

    fn largest_large(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, p) in self.panels.iter().enumerate() {
            if p.level < self.max_level && best.is_none_or(|b| p.error > self.panels[b].error) {
                best = Some(i);
            }
        }
        best
    }

    fn sum(&self) -> T {
        self.panels.iter().fold(T::zero(), |acc, p| acc + p.value)
    }
}

fn subinterval_too_small<T: Real>(a1: T, a2: T, b2: T) -> bool {
    let e = T::epsilon();
    let u = T::min_positive_value();
    let tmp = (T::one() + T::lit(100.0) * e) * (a2.abs() + T::lit(1000.0) * u);
    a1.abs() <= tmp && b2.abs() <= tmp
}

enum Stop {
    /// Plain sum of panels with the summed error.
    Summed,
    /// Extrapolated value.
    Extrapolated,
}

pub(crate) fn integrate<T, F>(
    mut f: F,
    a: T,
    b: T,
    abs_tol: T,
    rel_tol: T,
    limit: usize,
) -> QuadratureResult<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let mut evaluations = 0usize;
    let mut g = |x: T| {
        evaluations += 1;
        f(x)
    };

    let first = gk21(&mut g, a, b);
    let tolerance = abs_tol.max(rel_tol * first.value.abs());
    let hundred_eps = T::lit(100.0) * T::epsilon();

    let finish = |value: T, error: T, evaluations: usize, suspicious: bool| {
        let converged = value.is_finite()
            && error.is_finite()
            && !suspicious
            && error <= abs_tol.max(rel_tol * value.abs());
        QuadratureResult {
            value,
            error_estimate: error,
            evaluations,
            converged,
        }
    };

    if first.error <= hundred_eps * first.abs_value && first.error > tolerance {
        // Roundoff dominates on the very first panel.
        return finish(first.value, first.error, evaluations, true);
    }
    if (first.error <= tolerance && first.error != first.asc_value) || first.error == T::zero() {
        return finish(first.value, first.error, evaluations, false);
    }
    if limit <= 1 {
        return finish(first.value, first.error, evaluations, true);
    }

    let mut ws = Workspace {
        panels: vec![Panel {
            a,
            b,
            value: first.value,
            error: first.error,
            level: 0,
        }],
        max_level: 0,
    };

    let mut table = EpsilonTable::new();
    table.push(first.value);

    let mut area = first.value;
    let mut errsum = first.error;
    let mut res_ext = first.value;
    let mut err_ext = T::max_value();
    let mut correction = T::zero();
    let mut ertest = T::zero();
    let mut error_over_large = T::zero();
    let mut ktmin = 0usize;
    let mut roundoff1 = 0usize;
    let mut roundoff2 = 0usize;
    let mut roundoff3 = 0usize;
    let mut error_type = 0u8;
    let mut error_type2 = false;
    let mut extrapolate = false;
    let mut no_extrapolation = false;
    let positive = first.value.abs() >= (T::one() - T::lit(50.0) * T::epsilon()) * first.abs_value;

    let mut iteration = 1usize;
    let mut next = 0usize;
    let mut stop = Stop::Extrapolated;

    while iteration < limit {
        let parent = ws.panels[next];
        let level = parent.level + 1;
        let a1 = parent.a;
        let b1 = T::lit(0.5) * (parent.a + parent.b);
        let a2 = b1;
        let b2 = parent.b;

        iteration += 1;

        let left = gk21(&mut g, a1, b1);
        let right = gk21(&mut g, a2, b2);
        let area12 = left.value + right.value;
        let error12 = left.error + right.error;
        let last_error = parent.error;

        errsum = errsum + error12 - parent.error;
        area = area + area12 - parent.value;
        let tolerance = abs_tol.max(rel_tol * area.abs());

        if left.asc_value != left.error && right.asc_value != right.error {
            let delta = parent.value - area12;
            if delta.abs() <= T::lit(1e-5) * area12.abs() && error12 >= T::lit(0.99) * parent.error {
                if extrapolate {
                    roundoff2 += 1;
                } else {
                    roundoff1 += 1;
                }
            }
            if iteration > 10 && error12 > parent.error {
                roundoff3 += 1;
            }
        }
        if roundoff1 + roundoff2 >= 10 || roundoff3 >= 20 {
            error_type = 2;
        }
        if roundoff2 >= 5 {
            error_type2 = true;
        }
        if subinterval_too_small(a1, a2, b2) {
            error_type = 4;
        }

        ws.panels[next] = Panel {
            a: a1,
            b: b1,
            value: left.value,
            error: left.error,
            level,
        };
        ws.panels.push(Panel {
            a: a2,
            b: b2,
            value: right.value,
            error: right.error,
            level,
        });
        if level > ws.max_level {
            ws.max_level = level;
        }

        if errsum <= tolerance {
            stop = Stop::Summed;
            break;
        }
        if error_type != 0 {
            break;
        }
        if iteration >= limit - 1 {
            error_type = 1;
            break;
        }

        if iteration == 2 {
            error_over_large = errsum;
            ertest = tolerance;
            table.push(area);
            next = ws.largest();
            continue;
        }
        if no_extrapolation {
            next = ws.largest();
            continue;
        }

        error_over_large = error_over_large - last_error;
        if level < ws.max_level {
            error_over_large = error_over_large + error12;
        }

        if !extrapolate {
            next = ws.largest();
            if ws.panels[next].level < ws.max_level {
                continue;
            }
            extrapolate = true;
        }

        if !error_type2 && error_over_large > ertest {
            if let Some(i) = ws.largest_large() {
                next = i;
                continue;
            }
        }

        table.push(area);
        let (reseps, abseps) = table.extrapolate();
        ktmin += 1;
        if ktmin > 5 && err_ext < T::lit(1e-3) * errsum {
            error_type = 5;
        }
        if abseps < err_ext {
            ktmin = 0;
            err_ext = abseps;
            res_ext = reseps;
            correction = error_over_large;
            ertest = abs_tol.max(rel_tol * reseps.abs());
            if err_ext <= ertest {
                break;
            }
        }

        if table.len() == 1 {
            no_extrapolation = true;
        }
        if error_type == 5 {
            break;
        }

        next = ws.largest();
        extrapolate = false;
        error_over_large = errsum;
    }

    if let Stop::Summed = stop {
        return finish(ws.sum(), errsum, evaluations, false);
    }
    if err_ext == T::max_value() {
        return finish(ws.sum(), errsum, evaluations, error_type != 0);
    }

    let mut suspicious = false;
    if error_type != 0 || error_type2 {
        if error_type2 {
            err_ext = err_ext + correction;
        }
        suspicious = true;
        if res_ext != T::zero() && area != T::zero() {
            if err_ext / res_ext.abs() > errsum / area.abs() {
                return finish(ws.sum(), errsum, evaluations, true);
            }
        } else if err_ext > errsum {
            return finish(ws.sum(), errsum, evaluations, true);
        } else if area == T::zero() {
            return finish(res_ext, err_ext, evaluations, true);
        }
    }

    let max_area = res_ext.abs().max(area.abs());
    if !positive && max_area < T::lit(0.01) * first.abs_value {
        return finish(res_ext, err_ext, evaluations, suspicious);
    }
    let ratio = res_ext / area;
    if ratio < T::lit(0.01) || ratio > T::lit(100.0) || errsum > area.abs() {
        suspicious = true;
    }
    finish(res_ext, err_ext, evaluations, suspicious)
}
