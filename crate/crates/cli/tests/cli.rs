use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nakagami-aber"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parse `name value=... ...` lines printed by `aber`.
fn value_of(line: &str) -> f64 {
    line.split_whitespace()
        .find_map(|f| f.strip_prefix("value="))
        .expect("value field")
        .parse()
        .unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

#[test]
fn lu_rayleigh_qpsk_point() {
    let out = run(&["aber", "--m", "1", "--mod", "4", "--snr-db", "0", "--method", "lu"]);
    assert_eq!(out.status.code(), Some(0));
    let v = value_of(stdout(&out).lines().next().unwrap());
    assert!((v - 0.146_446_609_406_726_24).abs() < 1e-12, "{v}");
}

#[test]
fn closed_matches_oracle_on_a_single_point() {
    let out = run(&[
        "aber", "--m", "0.6", "--mod", "256", "--snr-db", "10", "--method", "closed,oracle", "--terms", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let values: Vec<f64> = text.lines().map(value_of).collect();
    assert!(text.lines().next().unwrap().starts_with("closed(N=5) "));
    let oracle_line = text.lines().nth(1).unwrap();
    assert!(oracle_line.starts_with("oracle ") && !oracle_line.ends_with("error_estimate=-"));
    assert!(((values[0] - values[1]) / values[1]).abs() < 1e-6);
}

#[test]
fn low_snr_limit_point() {
    let out = run(&["aber", "--m", "1", "--mod", "4", "--snr-db", "-100", "--method", "closed", "--terms", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = value_of(stdout(&out).lines().next().unwrap());
    assert!((v - 0.4375).abs() < 1e-4, "{v}");
}

#[test]
fn diagnostic_prints_both_coefficients() {
    let out = run(&["aber", "--m", "1", "--mod", "16", "--snr-db", "-30", "--diagnostic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].contains("c0 coefficient"));
    assert!(((value_of(lines[0]) - value_of(lines[1])) / value_of(lines[0])).abs() > 0.1);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["aber", "--m", "0", "--mod", "4", "--snr-db", "0"],
        &["aber", "--m", "-1", "--mod", "4", "--snr-db", "0"],
        &["aber", "--m", "1", "--mod", "8", "--snr-db", "0"],
        &["aber", "--m", "1", "--mod", "4"],
        &["aber", "--m", "1", "--mod", "4", "--snr-db", "0", "--method", "nope"],
        &["aber", "--m", "1", "--mod", "4", "--snr-db", "0", "--terms", "201"],
        &["aber", "--m", "1", "--mod", "4", "--snr-db", "0", "--terms", "3", "--adaptive-tol", "1e-9"],
        &["aber", "--m", "1", "--mod", "4", "--snr-db", "0", "--method", "expq", "--expq", "1"],
        &["sweep", "--m", "1", "--mod", "4", "--snr-db-range", "5:0:1"],
        &["sweep", "--m", "1", "--mod", "4", "--snr-db-range", "0:5:1", "--jobs", "0"],
        &["bench", "--m", "0.6", "--mod", "256", "--snr-db", "0", "--repetitions", "1"],
        &["selftest", "--group", "nope"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn io_failures_exit_4() {
    let out = run(&["sweep", "--m", "1", "--mod", "4", "--snr-db", "0", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["sweep", "--config", "/nonexistent/config.txt"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn non_convergence_exits_3() {
    // 1e-14 is the tightest accepted oracle tolerance; it is out of reach here.
    let out = run(&["aber", "--m", "0.6", "--mod", "4096", "--snr-db", "30", "--method", "oracle", "--rel-tol", "1e-14"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_rows_are_sorted_and_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep", "--m", "4.1", "--mod", "256", "--snr-db-range", "0:30:1", "--method", "closed,lu,oracle", "--terms",
        "0", "--out", path.to_str().unwrap(), "--jobs", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(header, ["snr_db", "method", "value", "terms", "wall_time_ns"]);
    assert_eq!(rows.len(), 93);
    for pair in rows.windows(2) {
        let a: f64 = pair[0][0].parse().unwrap();
        let b: f64 = pair[1][0].parse().unwrap();
        assert!(a < b || (a == b && pair[0][1] < pair[1][1]));
    }
    for method in ["closed(N=0)", "lu", "oracle"] {
        let values: Vec<f64> = rows.iter().filter(|r| r[1] == method).map(|r| r[2].parse().unwrap()).collect();
        assert_eq!(values.len(), 31);
        assert!(values.windows(2).all(|w| w[1] <= w[0]), "{method}");
        assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
    }
    for row in &rows {
        assert_eq!(row.len(), 5);
        assert!(row[3].parse::<usize>().is_ok() && row[4].parse::<u128>().is_ok());
    }
}

#[test]
fn no_timing_output_is_byte_identical_across_runs_and_job_counts() {
    let args = |jobs: &'static str| {
        vec![
            "sweep", "--m", "0.6", "--mod", "64", "--snr-db-range", "-5:20:2.5", "--method", "closed,lu,oracle,expq",
            "--terms", "0,3", "--no-timing", "--jobs", jobs,
        ]
    };
    let a = run(&args("1"));
    let b = run(&args("1"));
    let c = run(&args("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    // 11 points × 5 methods (two truncations), plus header.
    assert_eq!(stdout(&a).lines().count(), 56);
}

#[test]
fn lu_may_exceed_one_at_low_snr_but_closed_may_not() {
    let out = run(&["sweep", "--m", "0.6", "--mod", "256", "--snr-db-range", "-40:-30:10", "--method", "closed,lu"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&out));
    for row in rows {
        let v: f64 = row[2].parse().unwrap();
        if row[1] == "lu" {
            assert!(v > 1.0, "nearest-neighbour limit for 256-QAM is c0·√M > 1");
        } else {
            assert!(v <= 1.0);
        }
    }
}

#[test]
fn discrepancy_sentinel_and_ordering() {
    let out = run(&[
        "discrepancy", "--m", "0.6", "--mod", "256", "--snr-db-range", "0:15:1", "--method", "closed,lu,oracle",
        "--terms", "0,5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["snr_db", "candidate_method", "epsilon_db"]);
    assert_eq!(rows.len(), 16 * 4);
    for point in rows.chunks(4) {
        let eps = |label: &str| -> f64 {
            let cell = &point.iter().find(|r| r[1] == label).unwrap()[2];
            if cell == "-inf" {
                f64::NEG_INFINITY
            } else {
                cell.parse().unwrap()
            }
        };
        assert_eq!(eps("oracle"), f64::NEG_INFINITY);
        assert!(eps("closed(N=0)") < eps("lu"));
        assert!(eps("closed(N=5)") <= eps("closed(N=0)"));
    }
}

#[test]
fn bench_csv_schema() {
    let out = run(&[
        "bench", "--m", "0.6", "--mod", "256", "--snr-db", "10", "--terms", "0,2", "--repetitions", "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["snr_db", "n_terms", "t_closed_ns", "t_oracle_ns", "epsilon_t"]);
    assert_eq!(rows.len(), 2);
    for row in rows {
        let t_closed: f64 = row[2].parse().unwrap();
        let t_oracle: f64 = row[3].parse().unwrap();
        let gain: f64 = row[4].parse().unwrap();
        assert!(t_closed > 0.0 && t_oracle > 0.0);
        assert!((gain - t_oracle / t_closed).abs() <= 1e-12 * gain);
    }
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# defaults\nm = 0.6\nmod = 256\nsnr-db-range = 0:2:1\nmethod = closed,lu\nno-timing = true\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_config = run(&["sweep", "--config", cfg]);
    let explicit = run(&[
        "sweep", "--m", "0.6", "--mod", "256", "--snr-db-range", "0:2:1", "--method", "closed,lu", "--no-timing",
    ]);
    assert_eq!(from_config.status.code(), Some(0));
    assert_eq!(from_config.stdout, explicit.stdout);

    let overridden = run(&["sweep", "--config", cfg, "--mod", "4", "--method", "lu"]);
    let expected = run(&["sweep", "--m", "0.6", "--mod", "4", "--snr-db-range", "0:2:1", "--method", "lu", "--no-timing"]);
    assert_eq!(overridden.stdout, expected.stdout);

    std::fs::write(dir.path().join("bad.cfg"), "colour = blue\n").unwrap();
    let bad = run(&["sweep", "--config", dir.path().join("bad.cfg").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn emit_plot_writes_a_script_with_inlined_data() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("plot.py");
    let out = run(&[
        "discrepancy", "--m", "0.6", "--mod", "256", "--snr-db-range", "0:4:2", "--method", "closed,oracle",
        "--terms", "0", "--emit-plot", script.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&script).unwrap();
    assert!(text.contains("import matplotlib"));
    assert!(text.contains("\"closed(N=0)\""));
    // The oracle's -inf self-discrepancy cannot be plotted and is left out.
    assert!(!text.contains("inf"));
    assert!(Path::new(&script).exists());
}

#[test]
fn custom_expq_variant() {
    let chiani = run(&["aber", "--m", "2", "--mod", "16", "--snr-db", "10", "--method", "expq"]);
    let custom = run(&[
        "aber", "--m", "2", "--mod", "16", "--snr-db", "10", "--method", "expq", "--expq",
        "0.08333333333333333:0.5,0.25:0.6666666666666666",
    ]);
    assert_eq!(chiani.status.code(), Some(0));
    assert_eq!(custom.status.code(), Some(0));
    let a = value_of(stdout(&chiani).lines().next().unwrap());
    let b = value_of(stdout(&custom).lines().next().unwrap());
    assert!(stdout(&chiani).starts_with("expq(chiani)"));
    assert!(stdout(&custom).starts_with("expq(custom)"));
    assert!(((a - b) / a).abs() < 1e-14);
}

#[test]
fn selftest_list_filter_and_full_run() {
    let list = run(&["selftest", "--list"]);
    assert_eq!(list.status.code(), Some(0));
    let names: Vec<String> = stdout(&list).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    for group in ["lemma1", "lemma2", "lemma3", "reflection", "termination", "sandwich"] {
        assert!(names.iter().any(|n| n == group), "{group}");
    }

    let one = run(&["selftest", "--group", "lemma2"]);
    assert_eq!(one.status.code(), Some(0));
    let text = stdout(&one);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS lemma2"));

    let all = run(&["selftest"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(stdout(&all).lines().filter(|l| l.starts_with("PASS")).count(), names.len());
}
