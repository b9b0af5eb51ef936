//! Wall-time gain of the closed form over quadrature at matched precision.
//!
//! Both sides are asked for five significant digits. The closed form runs
//! its special functions at 1e-6 relative accuracy. The oracle starts at a
//! relative tolerance of 1e-3 and is tightened by decades until its value
//! agrees with the next tighter run to five significant digits; the
//! loosest such tolerance is timed. Timings are medians over repetitions,
//! with closed-form and oracle batches interleaved so drift affects both
//! equally. Everything runs on the calling thread.

use std::hint::black_box;
use std::time::Instant;

use nakagami_aber::aber::aber_closed_detailed;
use nakagami_aber::specfun::Accuracy;
use nakagami_aber::{aber_oracle, BerKind, ChannelParams, Error, Modulation, QuadratureSpec, TruncationPolicy};

use crate::error::{CliError, CliResult};

pub const MIN_REPETITIONS: usize = 10;
/// Relative agreement that counts as "the same to five significant digits".
pub const FIVE_DIGITS: f64 = 5e-6;
const CLOSED_REL_ACCURACY: f64 = 1e-6;
const ORACLE_START_TOL: f64 = 1e-3;
const ORACLE_MIN_TOL: f64 = 1e-12;
/// Calls per timed batch, so one sample is well above timer resolution.
const BATCH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub snr_db: f64,
    pub n_terms: usize,
    pub t_closed_ns: f64,
    pub t_oracle_ns: f64,
    /// `t_oracle / t_closed`; above 1 means the closed form is faster.
    pub epsilon_t: f64,
    pub oracle_rel_tol: f64,
    pub closed_value: f64,
    pub oracle_value: f64,
}

fn oracle_value(ch: &ChannelParams<f64>, md: &Modulation<f64>, tol: f64) -> nakagami_aber::Result<f64> {
    let spec = QuadratureSpec::relative(tol)?;
    aber_oracle(ch, md, &BerKind::Exact, &spec)?.require_converged("aber_oracle")
}

/// Loosest oracle tolerance (1e-3, 1e-4, ...) whose value agrees with the
/// next tighter one to five significant digits.
pub fn oracle_tolerance(ch: &ChannelParams<f64>, md: &Modulation<f64>) -> CliResult<f64> {
    let mut tol = ORACLE_START_TOL;
    let mut value = oracle_value(ch, md, tol)?;
    while tol > ORACLE_MIN_TOL {
        let tighter = tol / 10.0;
        let next = oracle_value(ch, md, tighter)?;
        if (value - next).abs() <= FIVE_DIGITS * next.abs() {
            return Ok(tol);
        }
        tol = tighter;
        value = next;
    }
    Err(CliError::Numerical(Error::NonConvergence {
        context: "oracle five-digit stability",
        value,
        estimate: f64::NAN,
    }))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

fn time_batch<F: FnMut() -> nakagami_aber::Result<f64>>(f: &mut F) -> nakagami_aber::Result<f64> {
    let start = Instant::now();
    for _ in 0..BATCH {
        black_box(f()?);
    }
    Ok(start.elapsed().as_nanos() as f64 / BATCH as f64)
}

/// Benchmark one grid point for each truncation in `terms`.
pub fn bench_point(
    m: f64,
    md: &Modulation<f64>,
    snr_db: f64,
    terms: &[usize],
    repetitions: usize,
) -> CliResult<Vec<BenchRow>> {
    if repetitions < MIN_REPETITIONS {
        return Err(CliError::Usage(format!(
            "--repetitions {repetitions}: at least {MIN_REPETITIONS} are needed for a median"
        )));
    }
    let ch = ChannelParams::from_db(m, snr_db).map_err(|e| CliError::Usage(e.to_string()))?;
    let accuracy = Accuracy::new(CLOSED_REL_ACCURACY, 1e-300)?;
    let tol = oracle_tolerance(&ch, md)?;
    let spec = QuadratureSpec::relative(tol)?;
    let oracle_value = oracle_value(&ch, md, tol)?;
    let mut oracle = || aber_oracle(&ch, md, &BerKind::Exact, &spec).map(|r| r.value);

    let mut rows = Vec::with_capacity(terms.len());
    for &n in terms {
        let trunc = TruncationPolicy::fixed(n).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut closed = || aber_closed_detailed(&ch, md, &trunc, &accuracy).map(|c| c.value);
        let closed_value = closed()?;
        // Warm caches and lazily built tables outside the measurement.
        time_batch(&mut closed)?;
        time_batch(&mut oracle)?;
        let mut t_closed = Vec::with_capacity(repetitions);
        let mut t_oracle = Vec::with_capacity(repetitions);
        for _ in 0..repetitions {
            t_closed.push(time_batch(&mut closed)?);
            t_oracle.push(time_batch(&mut oracle)?);
        }
        let (t_closed_ns, t_oracle_ns) = (median(t_closed), median(t_oracle));
        rows.push(BenchRow {
            snr_db,
            n_terms: n,
            t_closed_ns,
            t_oracle_ns,
            epsilon_t: t_oracle_ns / t_closed_ns,
            oracle_rel_tol: tol,
            closed_value,
            oracle_value,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn too_few_repetitions_is_a_usage_error() {
        let md = Modulation::qam(4).unwrap();
        assert!(matches!(bench_point(1.0, &md, 0.0, &[0], 1), Err(CliError::Usage(_))));
    }

    #[test]
    fn oracle_tolerance_is_five_digit_stable() {
        let md = Modulation::qam(256).unwrap();
        let ch = ChannelParams::from_db(0.6, 10.0).unwrap();
        let tol = oracle_tolerance(&ch, &md).unwrap();
        let v = oracle_value(&ch, &md, tol).unwrap();
        let reference = oracle_value(&ch, &md, 1e-12).unwrap();
        assert!(((v - reference) / reference).abs() < 1e-5);
    }
}
