//! Acceptance criteria, one test per criterion. Each prints a single
//! `ACCEPTANCE <id> PASS|FAIL ...` line (bypassing the test harness's output
//! capture) with the measured worst case and the pinned tolerance, then
//! asserts. Criteria known to be out of reach are not relaxed; they fail.

use std::io::Write;
use std::time::Instant;

use nakagami_aber::aber::{
    aber_closed, aber_closed_c0_form, aber_lu_closed, aber_oracle, avg_q2_oracle, avg_q_oracle, beta_term,
    lemma2_avg_q, r2_quadrature, r2_series, BerKind,
};
use nakagami_aber::quad::integrate_finite;
use nakagami_aber::specfun::{appell_f1, gauss_q, reg_inc_beta};
use nakagami_aber::{discrepancy, ChannelParams, Modulation, QuadratureSpec, TruncationPolicy};
use nakagami_aber_cli::bench::bench_point;

const GRID_M: [f64; 4] = [0.6, 1.0, 2.5, 4.1];
const GRID_SNR_DB: [f64; 5] = [-5.0, 0.0, 10.0, 20.0, 30.0];
const GRID_ORDERS: [u32; 4] = [4, 16, 256, 4096];

/// Relative tolerance of every quadrature reference in this file.
const ORACLE_REL_TOL: f64 = 1e-12;

fn report(id: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "ACCEPTANCE {id} {verdict} {detail}");
    let _ = out.flush();
}

fn oracle_spec() -> QuadratureSpec<f64> {
    QuadratureSpec::relative(ORACLE_REL_TOL).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn grid() -> Vec<(f64, f64, u32)> {
    let mut points = Vec::new();
    for m in GRID_M {
        for db in GRID_SNR_DB {
            for order in GRID_ORDERS {
                points.push((m, db, order));
            }
        }
    }
    points
}

fn setup(m: f64, db: f64, order: u32) -> (ChannelParams<f64>, Modulation<f64>) {
    (ChannelParams::from_db(m, db).unwrap(), Modulation::qam(order).unwrap())
}

/// Worst value of `err` over the criterion-1 grid, with its location.
fn worst_over_grid(mut err: impl FnMut(&ChannelParams<f64>, &Modulation<f64>) -> f64) -> (f64, String) {
    let mut worst = (0.0f64, String::new());
    for (m, db, order) in grid() {
        let (ch, md) = setup(m, db, order);
        let e = err(&ch, &md);
        let e = if e.is_nan() { f64::INFINITY } else { e };
        if e >= worst.0 {
            worst = (e, format!("m={m} snr={db}dB M={order}"));
        }
    }
    worst
}

#[test]
fn criterion_01_lemma2_identity() {
    const TOL: f64 = 1e-8;
    const MAX_SECONDS: f64 = 30.0;
    let spec = oracle_spec();
    let start = Instant::now();
    let (worst, at) = worst_over_grid(|ch, md| {
        let oracle = avg_q_oracle(ch, md.c1(), &spec).unwrap().require_converged("oracle").unwrap();
        rel(lemma2_avg_q(ch, md.c1()).unwrap(), oracle)
    });
    let secs = start.elapsed().as_secs_f64();
    let pass = worst <= TOL && secs < MAX_SECONDS;
    report(
        "1",
        pass,
        &format!("lemma2 vs quadrature: worst rel {worst:.3e} at {at} (tol {TOL:e}); runtime {secs:.2}s (< {MAX_SECONDS}s)"),
    );
    assert!(pass);
}

#[test]
fn criterion_02_lemma3_identity() {
    const TOL: f64 = 1e-7;
    const MAX_SECONDS: f64 = 60.0;
    let spec = oracle_spec();
    let start = Instant::now();
    let (worst, at) = worst_over_grid(|ch, md| {
        let c1 = md.c1();
        let oracle = avg_q2_oracle(ch, c1, &spec).unwrap().require_converged("oracle").unwrap();
        let identity = 0.25 * beta_term(ch, c1).unwrap() - r2_quadrature(ch, c1, &spec).unwrap();
        rel(identity, oracle)
    });
    let secs = start.elapsed().as_secs_f64();
    let pass = worst <= TOL && secs < MAX_SECONDS;
    report(
        "2",
        pass,
        &format!("(I/4 - R2) vs quadrature of Q²: worst rel {worst:.3e} at {at} (tol {TOL:e}); runtime {secs:.2}s (< {MAX_SECONDS}s)"),
    );
    assert!(pass);
}

#[test]
fn criterion_03_series_truncation_error() {
    // Known to fail: with non-integer m the series terms decay only
    // algebraically at high SNR, so five terms do not reach 1e-6 · I/4.
    const TOL_FACTOR: f64 = 1e-6;
    const MAX_SECONDS: f64 = 60.0;
    const TRUNCATIONS: [usize; 5] = [0, 1, 2, 3, 5];
    let spec = oracle_spec();
    let c1 = Modulation::<f64>::qam(256).unwrap().c1();
    let start = Instant::now();
    let mut monotone = true;
    let mut worst_ratio = (0.0f64, String::new());
    for m in [0.6, 4.1] {
        for db in [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0] {
            let ch = ChannelParams::from_db(m, db).unwrap();
            let reference = r2_quadrature(&ch, c1, &spec).unwrap();
            let errors: Vec<f64> = TRUNCATIONS
                .iter()
                .map(|&n| (r2_series(&ch, c1, &TruncationPolicy::fixed(n).unwrap()).unwrap().value - reference).abs())
                .collect();
            monotone &= errors.windows(2).all(|w| w[1] <= w[0]);
            let ratio = errors[4] / (0.25 * beta_term(&ch, c1).unwrap());
            if ratio >= worst_ratio.0 {
                worst_ratio = (ratio, format!("m={m} snr={db}dB"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = monotone && worst_ratio.0 <= TOL_FACTOR && secs < MAX_SECONDS;
    report(
        "3",
        pass,
        &format!(
            "R2 series error nonincreasing in N: {monotone}; N=5 error / (I/4): worst {:.3e} at {} (tol {TOL_FACTOR:e}); runtime {secs:.2}s (< {MAX_SECONDS}s)",
            worst_ratio.0, worst_ratio.1
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_04_integer_m_termination() {
    const TOL: f64 = 1e-8;
    let spec = oracle_spec();
    let adaptive = TruncationPolicy::adaptive(1e-14).unwrap();
    let mut terminated = true;
    let mut worst = (0.0f64, String::new());
    for m in [1.0, 2.0, 3.0] {
        for db in GRID_SNR_DB {
            for order in GRID_ORDERS {
                let (ch, md) = setup(m, db, order);
                let series = r2_series(&ch, md.c1(), &adaptive).unwrap();
                // Terms n = 0..=m-1 are non-zero; (1-m)_n vanishes from n = m on.
                terminated &= series.terms_used == m as usize && !series.fell_back;
                let long = r2_series(&ch, md.c1(), &TruncationPolicy::fixed(20).unwrap()).unwrap();
                terminated &= long.terms_used == m as usize && long.value == series.value;
                let e = rel(series.value, r2_quadrature(&ch, md.c1(), &spec).unwrap());
                if e >= worst.0 {
                    worst = (e, format!("m={m} snr={db}dB M={order}"));
                }
            }
        }
    }
    let pass = terminated && worst.0 <= TOL;
    report(
        "4",
        pass,
        &format!(
            "series stops at n = m-1 for m in {{1,2,3}}: {terminated}; worst rel vs quadrature {:.3e} at {} (tol {TOL:e})",
            worst.0, worst.1
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_closed_form_end_to_end() {
    // Known to fail for non-integer m below 4: see criterion 3.
    const TOL: f64 = 1e-6;
    let spec = oracle_spec();
    let trunc = TruncationPolicy::fixed(5).unwrap();
    let (worst, at) = worst_over_grid(|ch, md| {
        let oracle = aber_oracle(ch, md, &BerKind::Exact, &spec).unwrap().require_converged("oracle").unwrap();
        rel(aber_closed(ch, md, &trunc).unwrap(), oracle)
    });

    // The c0-coefficient variant must be rejected by the same oracle at γ̄ → 0.
    let mut c0_form_rejected = true;
    let mut c0_form_best = f64::INFINITY;
    for order in [16, 256, 4096] {
        let ch = ChannelParams::new(1.0, 1e-10).unwrap();
        let md = Modulation::qam(order).unwrap();
        let oracle = aber_oracle(&ch, &md, &BerKind::Exact, &spec).unwrap().require_converged("oracle").unwrap();
        let e = rel(aber_closed_c0_form(&ch, &md, &trunc).unwrap(), oracle);
        c0_form_best = c0_form_best.min(e);
        c0_form_rejected &= e > TOL;
    }

    let pass = worst <= TOL && c0_form_rejected;
    report(
        "5",
        pass,
        &format!(
            "closed(N=5) vs oracle: worst rel {worst:.3e} at {at} (tol {TOL:e}); c0-coefficient form rejected at γ̄=1e-10 for M>4: {c0_form_rejected} (smallest rel error {c0_form_best:.3e})"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_nearest_neighbour_exactness() {
    const TOL: f64 = 1e-8;
    let spec = oracle_spec();
    let (worst, at) = worst_over_grid(|ch, md| {
        let oracle = aber_oracle(ch, md, &BerKind::Lu, &spec).unwrap().require_converged("oracle").unwrap();
        rel(aber_lu_closed(ch, md).unwrap(), oracle)
    });
    let pass = worst <= TOL;
    report(
        "6",
        pass,
        &format!("nearest-neighbour closed form vs its quadrature: worst rel {worst:.3e} at {at} (tol {TOL:e})"),
    );
    assert!(pass);
}

#[test]
fn criterion_07_single_term_beats_nearest_neighbour() {
    let spec = oracle_spec();
    let md = Modulation::qam(256).unwrap();
    let trunc = TruncationPolicy::fixed(0).unwrap();
    let mut all = true;
    let mut smallest_gap = (f64::INFINITY, 0.0);
    for k in 0..=15 {
        let db = k as f64;
        let ch = ChannelParams::from_db(0.6, db).unwrap();
        let reference = aber_oracle(&ch, &md, &BerKind::Exact, &spec).unwrap().require_converged("oracle").unwrap();
        let eps_closed = discrepancy(reference, aber_closed(&ch, &md, &trunc).unwrap()).unwrap();
        let eps_lu = discrepancy(reference, aber_lu_closed(&ch, &md).unwrap()).unwrap();
        all &= eps_closed < eps_lu;
        if eps_lu - eps_closed < smallest_gap.0 {
            smallest_gap = (eps_lu - eps_closed, db);
        }
    }
    report(
        "7",
        all,
        &format!(
            "ε(closed N=0) < ε(lu) at every point of 0..15 dB (m=0.6, M=256): {all}; smallest margin {:.2} dB at {} dB",
            smallest_gap.0, smallest_gap.1
        ),
    );
    assert!(all);
}

#[test]
fn criterion_08_time_gain_direction() {
    const REPETITIONS: usize = 31;
    const MIN_GAIN: f64 = 1.0;
    let md = Modulation::qam(256).unwrap();
    let terms: Vec<usize> = (0..=5).collect();
    let mut worst = (f64::INFINITY, String::new());
    let mut accurate = true;
    for k in 0..=6 {
        let db = 5.0 * k as f64;
        for row in bench_point(0.6, &md, db, &terms, REPETITIONS).unwrap() {
            // Both sides must deliver five significant digits.
            accurate &= rel(row.closed_value, row.oracle_value) <= 1e-5 || row.n_terms < 5;
            if row.epsilon_t < worst.0 {
                worst = (row.epsilon_t, format!("{db} dB, N={}", row.n_terms));
            }
        }
    }
    let pass = worst.0 >= MIN_GAIN && accurate;
    report(
        "8",
        pass,
        &format!(
            "ε_t = t_oracle/t_closed at 5-digit precision, m=0.6, M=256, 0..30 dB, N=0..5: smallest {:.2} at {} (need >= {MIN_GAIN}); N=5 agrees with oracle to 1e-5: {accurate}",
            worst.0, worst.1
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_special_function_floor() {
    const LEMMA1_TOL: f64 = 1e-9;
    const REFLECTION_TOL: f64 = 1e-12;
    const APPELL_TOL: f64 = 1e-10;
    let spec = oracle_spec();

    let lemma1 = [0.1, 0.5, 1.0, 2.0, 4.0]
        .into_iter()
        .map(|z: f64| {
            let integral = integrate_finite(
                |theta: f64| (-z * z / (2.0 * theta.sin().powi(2))).exp(),
                0.0,
                std::f64::consts::FRAC_PI_2,
                &spec,
            )
            .unwrap()
            .require_converged("lemma1")
            .unwrap();
            rel(integral / std::f64::consts::PI, gauss_q(z))
        })
        .fold(0.0f64, f64::max);

    // Randomised but reproducible: a fixed-seed xorshift stream.
    let mut state = 0x9e37_79b9_7f4a_7c15_u64;
    let mut uniform = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut reflection = 0.0f64;
    for _ in 0..1000 {
        let x = 1e-4 + (1.0 - 2e-4) * uniform();
        let a = 0.05 + 30.0 * uniform();
        let b = 0.05 + 30.0 * uniform();
        let sum = reg_inc_beta(x, a, b).unwrap() + reg_inc_beta(1.0 - x, b, a).unwrap();
        reflection = reflection.max((sum - 1.0).abs());
    }

    let appell = rel(appell_f1(1.0, 1.0, 1.0, 2.0, -1.0, -2.0).unwrap(), 1.5f64.ln());

    let pass = lemma1 <= LEMMA1_TOL && reflection <= REFLECTION_TOL && appell <= APPELL_TOL;
    report(
        "9",
        pass,
        &format!(
            "Q contour integral worst rel {lemma1:.3e} (tol {LEMMA1_TOL:e}); incomplete-beta reflection worst {reflection:.3e} over 1000 draws (tol {REFLECTION_TOL:e}); F1(1;1,1;2;-1,-2) vs ln(3/2) rel {appell:.3e} (tol {APPELL_TOL:e})"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_low_snr_limits() {
    const TOL: f64 = 1e-4;
    let ch = ChannelParams::new(1.0, 1e-10).unwrap();
    let md = Modulation::qam(4).unwrap();
    let closed = aber_closed(&ch, &md, &TruncationPolicy::fixed(5).unwrap()).unwrap();
    let oracle = aber_oracle(&ch, &md, &BerKind::Exact, &oracle_spec())
        .unwrap()
        .require_converged("oracle")
        .unwrap();
    let lu = aber_lu_closed(&ch, &md).unwrap();
    let errors = [(closed - 0.4375).abs(), (oracle - 0.4375).abs(), (lu - 0.5).abs()];
    let pass = errors.iter().all(|&e| e <= TOL);
    report(
        "10",
        pass,
        &format!(
            "γ̄=1e-10, M=4: closed {closed:.8} oracle {oracle:.8} (→ 0.4375), lu {lu:.8} (→ 0.5); worst deviation {:.3e} (tol {TOL:e})",
            errors.iter().cloned().fold(0.0, f64::max)
        ),
    );
    assert!(pass);
}
