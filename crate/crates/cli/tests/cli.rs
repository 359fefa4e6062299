//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dicke-pair"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parse a CSV body into (header, rows of f64 where possible).
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header line")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let idx = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("column {name} in {header:?}"));
    rows.iter().map(|r| r[idx].parse().unwrap()).collect()
}

#[test]
fn geom_prints_both_conventions() {
    let out = run(&["geom", "--r12", "0.06", "--theta", "1.570796"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("omega12 = 13.107"), "{text}");
    assert!(text.contains("gamma12 = 0.9717"), "{text}");
    assert!(text.contains("26.21"), "missing doubled convention: {text}");
}

#[test]
fn pure_preset_fig2_n1_reaches_unit_concurrence_at_bell_time() {
    let out = run(&["pure", "--preset", "fig2-n1"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    let t = column(&header, &rows, "t");
    let conc = column(&header, &rows, "concurrence");

    let (imax, cmax) =
        conc.iter().enumerate().fold(
            (0, 0.0f64),
            |acc, (i, &c)| if c > acc.1 { (i, c) } else { acc },
        );
    assert!((cmax - 1.0).abs() < 1e-6, "peak concurrence {cmax}");

    // the peak sits at an odd multiple of π/Ω12 up to one grid step
    let omega12 = 10.0 / 0.75f64.sqrt();
    let bell = std::f64::consts::PI / omega12;
    let step = t[1] - t[0];
    let nearest = (t[imax] / bell).round();
    assert!(
        (t[imax] - nearest * bell).abs() <= step,
        "peak at t = {} not near a Bell time",
        t[imax]
    );
}

#[test]
fn master_preset_fig11_concurrence_settles_on_steady_value() {
    let out = run(&["master", "--preset", "fig11"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    let conc = column(&header, &rows, "concurrence_wootters");
    let fid = column(&header, &rows, "fidelity");
    let cx = column(&header, &rows, "concurrence_x");
    let last = conc.last().unwrap();
    assert!((last - 0.0188).abs() < 1e-4, "C limit {last}");
    assert!((fid.last().unwrap() - 0.5017).abs() < 1e-3);
    // X-state bound along the whole series
    for (a, b) in cx.iter().zip(conc.iter()) {
        assert!(a <= &(b + 1e-9));
    }
}

#[test]
fn steady_closed_and_numeric_agree() {
    let out = run(&[
        "steady",
        "--omega0",
        "10",
        "--omega12",
        "26.22",
        "--gamma12",
        "0.97",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    let diffs = column(&header, &rows, "abs_diff");
    for d in diffs {
        assert!(d < 1e-9, "closed/numeric deviation {d}");
    }
    let names: Vec<String> = rows.iter().map(|r| r[0].clone()).collect();
    let conc_row = names
        .iter()
        .position(|n| n == "steady_concurrence")
        .unwrap();
    let value: f64 = rows[conc_row][1].parse().unwrap();
    assert!((value - 0.0188).abs() < 1e-4);
}

#[test]
fn sweep_localizes_threshold_crossing() {
    let out = run(&[
        "sweep",
        "--omega0",
        "1",
        "--omega12",
        "26.22",
        "--gamma12",
        "0.97",
        "--sweep",
        "omega0=9:11:81",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    let omega0 = column(&header, &rows, "omega0");
    let value = column(&header, &rows, "steady_concurrence");
    let above = column(&header, &rows, "above_threshold");

    // value > 0 exactly when flagged above threshold
    for (v, a) in value.iter().zip(above.iter()) {
        assert_eq!(*v > 0.0, *a == 1.0);
    }
    // the flip brackets the analytic threshold 2 sqrt(|U12|)
    let threshold = 2.0 * 0.97f64.hypot(26.22).sqrt();
    let flip = above
        .windows(2)
        .position(|w| w[0] == 1.0 && w[1] == 0.0)
        .unwrap();
    assert!(omega0[flip] <= threshold && threshold <= omega0[flip + 1]);
}

#[test]
fn two_axis_sweep_has_full_grid() {
    let out = run(&[
        "sweep",
        "--omega0",
        "1",
        "--sweep",
        "omega0=1:5:5",
        "--sweep",
        "omega12=0:20:3",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 15);
    let omega12 = column(&header, &rows, "omega12");
    assert_eq!(&omega12[..3], &[0.0, 10.0, 20.0]);
}

#[test]
fn byte_identical_output_for_identical_configs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, _) in [(&a, 0), (&b, 1)] {
        let out = bin()
            .args(["pure", "--preset", "fig3a", "--out"])
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn json_mirrors_csv_schema_with_metadata() {
    let out = run(&[
        "fidelity",
        "--omega0",
        "10",
        "--omega12",
        "26.22",
        "--gamma12",
        "0.97",
        "--tmax",
        "2",
        "--samples",
        "21",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["metadata"]["mode"], "fidelity");
    assert_eq!(doc["metadata"]["params"]["omega12"], 26.22);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 21);
    assert_eq!(doc["rows"][0]["t"], 0.0);
    assert_eq!(doc["rows"][0]["fidelity"], 0.5);
}

#[test]
fn config_file_fills_gaps_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "omega0 = 5\nomega12 = 26.22\ngamma12 = 0.97\ntmax = 2 # short\nsamples = 11\n",
    )
    .unwrap();
    let out = bin()
        .args(["master", "--omega0", "10", "--format", "json", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["metadata"]["params"]["omega0"], 10.0); // flag wins
    assert_eq!(doc["metadata"]["tmax"], 2.0); // file fills
    assert_eq!(doc["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn relative_out_paths_use_the_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "pure",
            "--omega0",
            "10",
            "--omega12",
            "10",
            "--tmax",
            "1",
            "--samples",
            "5",
            "--out",
            "series.csv",
        ])
        .env("DICKE_PAIR_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("series.csv").exists());
}

#[test]
fn conflicting_parameter_sources_exit_2() {
    let out = run(&["pure", "--omega0", "10", "--omega12", "5", "--r12", "0.06"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("conflicting parameter sources"), "{err}");

    let out = run(&["master", "--preset", "fig11", "--omega0", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_preset_exits_2() {
    let out = run(&["pure", "--preset", "fig99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreachable_tolerance_exits_3_with_diagnostic() {
    let out = run(&[
        "master",
        "--omega0",
        "10",
        "--omega12",
        "26.22",
        "--gamma12",
        "0.97",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("error:"), "{err}");
}

#[test]
fn missing_parameters_exit_2() {
    let out = run(&["pure"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_all_modes() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for mode in ["geom", "pure", "master", "steady", "sweep", "fidelity"] {
        assert!(text.contains(mode), "missing {mode} in help");
    }
}

#[test]
fn every_preset_runs_end_to_end() {
    use dicke_pair::PresetKind;
    let start = std::time::Instant::now();
    for preset in dicke_pair::figure_presets() {
        let mode = match preset.kind {
            PresetKind::Pure => "pure",
            PresetKind::Master => "master",
            PresetKind::Fidelity => "fidelity",
        };
        let out = run(&[mode, "--preset", preset.name]);
        assert!(out.status.success(), "{} failed", preset.name);
        let (_, rows) = parse_csv(&stdout(&out));
        assert_eq!(rows.len(), preset.n_samples, "{} row count", preset.name);
        assert!(
            start.elapsed().as_secs() < 10 * 11,
            "presets too slow: {:?}",
            start.elapsed()
        );
    }
}

#[test]
fn geom_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("geom.conf");
    std::fs::write(&cfg, "r12 = 0.078\n").unwrap();
    let out = bin().args(["geom", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("omega12 = 5.741"), "{text}");
}
