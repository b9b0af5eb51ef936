use std::time::Instant;

use nakagami_aber::aber::aber_closed_c0_form;
use nakagami_aber::{discrepancy, AberMethod, ChannelParams, Modulation};
use rayon::prelude::*;

use crate::args::{AberArgs, BenchArgs, MethodKind, OutputArgs, SelftestArgs, SweepArgs};
use crate::bench::{bench_point, BenchRow};
use crate::csv;
use crate::error::{CliError, CliResult};
use crate::grid;
use crate::plot::{self, Figure, Series};
use crate::selftest;

pub const SWEEP_HEADER: [&str; 5] = ["snr_db", "method", "value", "terms", "wall_time_ns"];
pub const DISCREPANCY_HEADER: [&str; 3] = ["snr_db", "candidate_method", "epsilon_db"];
pub const BENCH_HEADER: [&str; 5] = ["snr_db", "n_terms", "t_closed_ns", "t_oracle_ns", "epsilon_t"];

/// One evaluated grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub method: String,
    pub value: f64,
    pub terms: usize,
    pub wall_time_ns: u128,
}

fn channel(m: f64, snr_db: f64) -> CliResult<ChannelParams<f64>> {
    ChannelParams::from_db(m, snr_db).map_err(|e| CliError::Usage(e.to_string()))
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} worker threads: {e}")))
}

fn by_snr_then_label<T>(key: impl Fn(&T) -> (f64, &str)) -> impl Fn(&T, &T) -> std::cmp::Ordering {
    move |a, b| {
        let (sa, la) = key(a);
        let (sb, lb) = key(b);
        sa.total_cmp(&sb).then_with(|| la.cmp(lb))
    }
}

pub fn evaluate_sweep(
    m: f64,
    md: &Modulation<f64>,
    snrs: &[f64],
    methods: &[AberMethod<f64>],
    jobs: usize,
) -> CliResult<Vec<SweepRow>> {
    let tasks: Vec<(f64, &AberMethod<f64>)> = snrs
        .iter()
        .flat_map(|&db| methods.iter().map(move |method| (db, method)))
        .collect();
    let mut rows = pool(jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|&(snr_db, method)| {
                let ch = channel(m, snr_db)?;
                let start = Instant::now();
                let estimate = method.evaluate(&ch, md)?;
                let wall_time_ns = start.elapsed().as_nanos();
                grid::check_value(method, snr_db, estimate.value)?;
                Ok(SweepRow {
                    snr_db,
                    method: method.label(),
                    value: estimate.value,
                    terms: estimate.terms,
                    wall_time_ns,
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })?;
    rows.sort_by(by_snr_then_label(|r: &SweepRow| (r.snr_db, r.method.as_str())));
    Ok(rows)
}

/// One row of a discrepancy study: `epsilon_db` is `-inf` when the candidate
/// reproduces the reference exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyRow {
    pub snr_db: f64,
    pub candidate: String,
    pub epsilon_db: f64,
}

pub fn evaluate_discrepancy(
    m: f64,
    md: &Modulation<f64>,
    snrs: &[f64],
    candidates: &[AberMethod<f64>],
    reference: &AberMethod<f64>,
    jobs: usize,
) -> CliResult<Vec<DiscrepancyRow>> {
    let per_point = pool(jobs)?.install(|| {
        snrs.par_iter()
            .map(|&snr_db| {
                let ch = channel(m, snr_db)?;
                let reference_value = reference.evaluate(&ch, md)?.value;
                grid::check_value(reference, snr_db, reference_value)?;
                candidates
                    .iter()
                    .map(|candidate| {
                        let value = candidate.evaluate(&ch, md)?.value;
                        grid::check_value(candidate, snr_db, value)?;
                        Ok(DiscrepancyRow {
                            snr_db,
                            candidate: candidate.label(),
                            epsilon_db: discrepancy(reference_value, value)?,
                        })
                    })
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()
    })?;
    let mut rows: Vec<DiscrepancyRow> = per_point.into_iter().flatten().collect();
    rows.sort_by(by_snr_then_label(|r: &DiscrepancyRow| (r.snr_db, r.candidate.as_str())));
    Ok(rows)
}

fn write_plot(output: &OutputArgs, figure: Figure<'_>, series: &[Series]) -> CliResult<()> {
    if let Some(path) = &output.emit_plot {
        std::fs::write(path, plot::script(&figure, series)).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

/// Group `(label, x, y)` triples into series, in order of first appearance.
fn series_from(points: impl IntoIterator<Item = (String, f64, f64)>) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for (label, x, y) in points {
        match out.iter_mut().find(|s| s.label == label) {
            Some(s) => s.points.push((x, y)),
            None => out.push(Series {
                label,
                points: vec![(x, y)],
            }),
        }
    }
    out
}

pub fn run_aber(args: &AberArgs) -> CliResult<()> {
    let model = &args.model;
    if model.snr_db_range.is_some() {
        return Err(CliError::Usage("aber evaluates one point; use --snr-db (or the sweep command)".into()));
    }
    let m = grid::shape(model)?;
    let md = grid::modulation(model)?;
    let snrs = grid::snr_points(model)?;
    let snr_db = snrs[0];
    let ch = channel(m, snr_db)?;
    let methods = grid::methods(model, &[MethodKind::Closed])?;
    for method in &methods {
        let estimate = method.evaluate(&ch, &md)?;
        grid::check_value(method, snr_db, estimate.value)?;
        let error_estimate = estimate.error_estimate.map_or_else(|| "-".to_string(), csv::float);
        println!(
            "{} value={} terms={} error_estimate={}",
            method.label(),
            csv::float(estimate.value),
            estimate.terms,
            error_estimate
        );
    }
    if args.diagnostic {
        for trunc in grid::truncations(model)? {
            let reference = AberMethod::Closed(trunc).evaluate(&ch, &md)?.value;
            let c0_form = aber_closed_c0_form(&ch, &md, &trunc)?;
            println!(
                "{}[c0 coefficient] value={} relative_difference={}",
                trunc.label(),
                csv::float(c0_form),
                csv::float(((c0_form - reference) / reference).abs())
            );
        }
    }
    Ok(())
}

pub fn run_sweep(args: &SweepArgs) -> CliResult<()> {
    let model = &args.model;
    let m = grid::shape(model)?;
    let md = grid::modulation(model)?;
    let snrs = grid::snr_points(model)?;
    let methods = grid::methods(model, &[MethodKind::Closed, MethodKind::Lu, MethodKind::Oracle])?;
    let rows = evaluate_sweep(m, &md, &snrs, &methods, args.output.jobs)?;

    let no_timing = args.output.no_timing;
    let text = csv::table(
        &SWEEP_HEADER,
        rows.iter().map(|r| {
            vec![
                csv::float(r.snr_db),
                r.method.clone(),
                csv::float(r.value),
                r.terms.to_string(),
                if no_timing { "0".to_string() } else { r.wall_time_ns.to_string() },
            ]
        }),
    );
    csv::emit(args.output.out.as_deref(), &text)?;
    let title = format!("Average BER, m = {m}, {}-QAM", md.order());
    write_plot(
        &args.output,
        Figure {
            title: &title,
            xlabel: "mean SNR (dB)",
            ylabel: "average BER",
            log_y: true,
            image: "sweep.png",
        },
        &series_from(rows.iter().map(|r| (r.method.clone(), r.snr_db, r.value))),
    )
}

pub fn run_discrepancy(args: &SweepArgs) -> CliResult<()> {
    let model = &args.model;
    let m = grid::shape(model)?;
    let md = grid::modulation(model)?;
    let snrs = grid::snr_points(model)?;
    let candidates = grid::methods(model, &[MethodKind::Closed, MethodKind::Lu])?;
    let reference = AberMethod::Oracle(grid::oracle_spec(model)?);
    let rows = evaluate_discrepancy(m, &md, &snrs, &candidates, &reference, args.output.jobs)?;

    let text = csv::table(
        &DISCREPANCY_HEADER,
        rows.iter()
            .map(|r| vec![csv::float(r.snr_db), r.candidate.clone(), csv::float(r.epsilon_db)]),
    );
    csv::emit(args.output.out.as_deref(), &text)?;
    let title = format!("Discrepancy against quadrature, m = {m}, {}-QAM", md.order());
    write_plot(
        &args.output,
        Figure {
            title: &title,
            xlabel: "mean SNR (dB)",
            ylabel: "epsilon (dB)",
            log_y: false,
            image: "discrepancy.png",
        },
        &series_from(rows.iter().map(|r| (r.candidate.clone(), r.snr_db, r.epsilon_db))),
    )
}

pub fn run_bench(args: &BenchArgs) -> CliResult<()> {
    let model = &args.model;
    if !model.method.is_empty() || model.adaptive_tol.is_some() {
        return Err(CliError::Usage(
            "bench always times the fixed-N closed form against the oracle; drop --method/--adaptive-tol".into(),
        ));
    }
    let m = grid::shape(model)?;
    let md = grid::modulation(model)?;
    let snrs = grid::snr_points(model)?;
    let terms: Vec<usize> = if model.terms.is_empty() { (0..=5).collect() } else { model.terms.clone() };
    if args.repetitions < crate::bench::MIN_REPETITIONS {
        return Err(CliError::Usage(format!(
            "--repetitions {}: at least {} are needed",
            args.repetitions,
            crate::bench::MIN_REPETITIONS
        )));
    }

    // Single-threaded on purpose: concurrent work would distort the timings.
    let mut rows: Vec<BenchRow> = Vec::new();
    for &snr_db in &snrs {
        rows.extend(bench_point(m, &md, snr_db, &terms, args.repetitions)?);
    }

    let no_timing = args.output.no_timing;
    let timing = |x: f64| if no_timing { "0".to_string() } else { csv::float(x) };
    let text = csv::table(
        &BENCH_HEADER,
        rows.iter().map(|r| {
            vec![
                csv::float(r.snr_db),
                r.n_terms.to_string(),
                timing(r.t_closed_ns),
                timing(r.t_oracle_ns),
                timing(r.epsilon_t),
            ]
        }),
    );
    csv::emit(args.output.out.as_deref(), &text)?;
    let title = format!("Time gain of the closed form, m = {m}, {}-QAM", md.order());
    write_plot(
        &args.output,
        Figure {
            title: &title,
            xlabel: "mean SNR (dB)",
            ylabel: "t_oracle / t_closed",
            log_y: false,
            image: "bench.png",
        },
        &series_from(rows.iter().map(|r| (format!("N = {}", r.n_terms), r.snr_db, r.epsilon_t))),
    )
}

pub fn run_selftest(args: &SelftestArgs) -> CliResult<()> {
    if args.list {
        for g in selftest::GROUPS {
            println!("{:<12} {}", g.name, g.description);
        }
        return Ok(());
    }
    let groups: Vec<&selftest::Group> = if args.group.is_empty() {
        selftest::GROUPS.iter().collect()
    } else {
        args.group
            .iter()
            .map(|name| {
                selftest::find(name)
                    .ok_or_else(|| CliError::Usage(format!("unknown self-test group `{name}` (see --list)")))
            })
            .collect::<CliResult<_>>()?
    };

    let mut failed = 0;
    for g in groups {
        match (g.run)() {
            Ok(report) => {
                let verdict = if report.passed() { "PASS" } else { "FAIL" };
                failed += usize::from(!report.passed());
                println!(
                    "{verdict} {:<12} worst={:.3e} tolerance={:.0e} points={}",
                    g.name, report.worst, report.tolerance, report.points
                );
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {:<12} error: {e}", g.name);
            }
        }
    }
    if failed > 0 {
        Err(CliError::SelftestFailed(failed))
    } else {
        Ok(())
    }
}
