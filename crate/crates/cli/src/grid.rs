//! SNR grids and method lists built from the command-line flags.

use nakagami_aber::{AberMethod, ExpTerm, Modulation, QApproxVariant, QuadratureSpec, TruncationPolicy};

use crate::args::{MethodKind, ModelArgs};
use crate::error::{CliError, CliResult};

pub const DEFAULT_TERMS: usize = 5;
pub const DEFAULT_ORACLE_REL_TOL: f64 = 1e-10;

/// `start:stop:step` in dB, stop inclusive.
pub fn parse_range(spec: &str) -> CliResult<Vec<f64>> {
    let usage = || CliError::Usage(format!("--snr-db-range `{spec}`: expected start:stop:step"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| usage()))
        .collect::<CliResult<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(usage());
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || start >= stop || step <= 0.0 {
        return Err(CliError::Usage(format!(
            "--snr-db-range `{spec}`: need finite start < stop and step > 0"
        )));
    }
    // Tolerate the rounding in (stop - start) / step when stop lies on the grid.
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| round_db(start + k as f64 * step)).collect())
}

/// Snap grid points to 1e-9 dB so `0.1 * 3` prints as `0.3`.
fn round_db(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// The SNR points selected by `--snr-db` or `--snr-db-range`.
pub fn snr_points(model: &ModelArgs) -> CliResult<Vec<f64>> {
    match (&model.snr_db, &model.snr_db_range) {
        (Some(db), None) if db.is_finite() => Ok(vec![*db]),
        (Some(db), None) => Err(CliError::Usage(format!("--snr-db {db} is not finite"))),
        (None, Some(range)) => parse_range(range),
        (None, None) => Err(CliError::Usage("one of --snr-db or --snr-db-range is required".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--snr-db and --snr-db-range are exclusive".into())),
    }
}

pub fn shape(model: &ModelArgs) -> CliResult<f64> {
    let m = model.m.ok_or_else(|| CliError::Usage("--m is required".into()))?;
    if !(m > 0.0 && m.is_finite()) {
        return Err(CliError::Usage(format!("--m {m}: must be finite and > 0")));
    }
    Ok(m)
}

pub fn modulation(model: &ModelArgs) -> CliResult<Modulation<f64>> {
    let order = model.modulation.ok_or_else(|| CliError::Usage("--mod is required".into()))?;
    Modulation::qam(order).map_err(|e| CliError::Usage(e.to_string()))
}

/// `w1:r1,w2:r2,...`
pub fn parse_expq(spec: &str) -> CliResult<QApproxVariant<f64>> {
    let usage = || CliError::Usage(format!("--expq `{spec}`: expected w1:r1,w2:r2,..."));
    let terms = spec
        .split(',')
        .map(|pair| {
            let (w, r) = pair.split_once(':').ok_or_else(usage)?;
            Ok(ExpTerm {
                weight: w.trim().parse().map_err(|_| usage())?,
                rate: r.trim().parse().map_err(|_| usage())?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    QApproxVariant::custom(terms).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn oracle_spec(model: &ModelArgs) -> CliResult<QuadratureSpec<f64>> {
    QuadratureSpec::relative(model.rel_tol.unwrap_or(DEFAULT_ORACLE_REL_TOL)).map_err(|e| CliError::Usage(e.to_string()))
}

/// Closed-form truncation policies: one per `--terms` entry, or the adaptive
/// policy when `--adaptive-tol` is given.
pub fn truncations(model: &ModelArgs) -> CliResult<Vec<TruncationPolicy<f64>>> {
    let policies = match model.adaptive_tol {
        Some(tol) => vec![TruncationPolicy::adaptive(tol)],
        None if model.terms.is_empty() => vec![TruncationPolicy::fixed(DEFAULT_TERMS)],
        None => model.terms.iter().map(|&n| TruncationPolicy::fixed(n)).collect(),
    };
    policies
        .into_iter()
        .map(|p| p.map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

/// Expand `--method` into concrete methods; `default` applies when no
/// method flag was given. Duplicates (same label) are dropped.
pub fn methods(model: &ModelArgs, default: &[MethodKind]) -> CliResult<Vec<AberMethod<f64>>> {
    let kinds = if model.method.is_empty() { default } else { &model.method[..] };
    let mut out: Vec<AberMethod<f64>> = Vec::new();
    for kind in kinds {
        let expanded = match kind {
            MethodKind::Closed => truncations(model)?.into_iter().map(AberMethod::Closed).collect(),
            MethodKind::Lu => vec![AberMethod::LuClosed],
            MethodKind::Oracle => vec![AberMethod::Oracle(oracle_spec(model)?)],
            MethodKind::Expq => {
                let variant = match &model.expq {
                    Some(spec) => parse_expq(spec)?,
                    None => QApproxVariant::chiani(),
                };
                vec![AberMethod::ExpqClosed(variant)]
            }
        };
        for method in expanded {
            if !out.iter().any(|m| m.label() == method.label()) {
                out.push(method);
            }
        }
    }
    Ok(out)
}

/// Whether the method averages the exact instantaneous BER, so its value is a
/// probability. The nearest-neighbour and exponential approximations can
/// exceed 1 at low SNR.
pub fn is_exact_kernel(method: &AberMethod<f64>) -> bool {
    matches!(method, AberMethod::Closed(_) | AberMethod::Oracle(_))
}

/// Reject values outside the output contract.
pub fn check_value(method: &AberMethod<f64>, snr_db: f64, value: f64) -> CliResult<()> {
    let upper_ok = !is_exact_kernel(method) || value <= 1.0;
    if value.is_finite() && value >= 0.0 && upper_ok {
        Ok(())
    } else {
        Err(CliError::InvalidResult(format!(
            "{} at {snr_db} dB produced {value:e}, outside the valid range",
            method.label()
        )))
    }
}
