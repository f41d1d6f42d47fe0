//! End-to-end checks of the tridrop binary: exit codes, warnings, file
//! outputs, and byte-level reproducibility of reruns from config snapshots.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn tridrop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tridrop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn equilibria_reports_both_branches() {
    let out = tridrop(&["equilibria", "--alpha0", "0.7853981633974483"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("primary"), "{text}");
    assert!(text.contains("secondary"), "{text}");
    assert!(text.contains("y = 0.333333333"), "{text}");
    assert!(text.contains("[center]"), "{text}");
    assert!(text.contains("[saddle]"), "{text}");
}

#[test]
fn equilibria_warns_near_the_exchange_angle() {
    let out = tridrop(&["equilibria", "--alpha0", "1.391"]);
    assert!(out.status.success());
    let err = stderr(&out);
    assert!(err.contains("warning"), "{err}");
    assert!(err.contains("near-degenerate"), "{err}");

    let quiet = tridrop(&["equilibria", "--alpha0", "1.2"]);
    assert!(stderr(&quiet).is_empty(), "{}", stderr(&quiet));
}

#[test]
fn degrees_switch_rescales_angle_inputs() {
    let rad = tridrop(&["equilibria", "--alpha0", "0.7853981633974483"]);
    let deg = tridrop(&["--degrees", "equilibria", "--alpha0", "45"]);
    assert!(deg.status.success(), "{}", stderr(&deg));
    // same y to printed precision; alpha echoes differ in the last digits
    let line = |o: &Output| {
        stdout(o)
            .lines()
            .find(|l| l.contains("primary"))
            .unwrap()
            .to_owned()
    };
    assert_eq!(
        line(&rad).split("contact").next().unwrap(),
        line(&deg).split("contact").next().unwrap()
    );
}

#[test]
fn domain_errors_exit_with_code_two() {
    let out = tridrop(&["equilibria", "--alpha0", "-0.5"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let out = tridrop(&["equilibria", "--alpha0", "1.7"]);
    assert_eq!(out.status.code(), Some(2));

    let out = tridrop(&["sessile", "--l", "1", "--k", "1", "--out", "/tmp/unused"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("rejected"), "{}", stderr(&out));
}

#[test]
fn manifold_refuses_near_singular_angles() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "manifold",
        "--alpha0",
        "0.870",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("singularity"), "{}", stderr(&out));
    assert!(!dir.path().join("manifold.json").exists());
}

#[test]
fn manifold_writes_series_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "manifold",
        "--alpha0",
        "1.2",
        "--order",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let series: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "manifold.json")).unwrap();
    assert!(series["y_center"].as_f64().unwrap() > 0.0);
    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "report.json")).unwrap();
    assert_eq!(report["order"], 4);
    assert_eq!(report["singular-alphas"].as_array().unwrap().len(), 3);
}

#[test]
fn simulate_axial_orbit_skips_the_section() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "simulate",
        "--alpha0",
        "1.2",
        "--phi",
        "0",
        "--t-end",
        "5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(!dir.path().join("section.csv").exists());
    let run: serde_json::Value = serde_json::from_slice(&read(dir.path(), "run.json")).unwrap();
    assert_eq!(run["section-count"], 0);
    assert!(run["section-note"]
        .as_str()
        .unwrap()
        .contains("section skipped"));
    assert_eq!(run["escape"], "bounded");
    assert!(dir.path().join("trajectory.csv").exists());
    assert!(dir.path().join("embedding.csv").exists());
}

#[test]
fn simulate_records_escape_events_for_outside_starts() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "simulate", "--alpha0", "1.2",
        "--x", "0", "--w", "0", "--y", "3.0", "--z", "0",
        "--t-end", "40", "--stride", "100",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let run: serde_json::Value = serde_json::from_slice(&read(dir.path(), "run.json")).unwrap();
    assert_eq!(run["escape"], "escaped-stretched");
    let events = run["events"].as_array().unwrap();
    assert!(
        events.iter().any(|e| e["kind"] == "escape"),
        "{events:?}"
    );
}

#[test]
fn simulate_rejects_partial_explicit_states() {
    let out = tridrop(&[
        "simulate",
        "--alpha0",
        "1.2",
        "--x",
        "0.1",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("all four"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn sweep_lists_presets_without_output_files() {
    let out = tridrop(&["sweep", "--list-presets"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["pi4", "dagger", "2pi5", "a145"] {
        assert!(text.contains(name), "{text}");
    }
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn sweep_writes_summary_and_per_angle_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "sweep",
        "--preset",
        "pi4",
        "--t-end",
        "20",
        "--stride",
        "50",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = String::from_utf8(read(dir.path(), "summary.csv")).unwrap();
    let rows = summary.lines().count() - 1;
    assert!(rows >= 4, "{summary}");
    for i in 0..rows {
        assert!(dir.path().join(format!("trajectory_{i:02}.csv")).exists());
    }
    let run: serde_json::Value = serde_json::from_slice(&read(dir.path(), "run.json")).unwrap();
    assert_eq!(run["trajectory-files"].as_array().unwrap().len(), rows);
    let config: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "config.json")).unwrap();
    let alpha0 = config["alpha0"].as_f64().unwrap();
    assert!((alpha0 - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
}

#[test]
fn sweep_requires_exactly_one_angle_source() {
    let out = tridrop(&["sweep", "--preset", "pi4", "--alpha0", "1.2", "--out", "/tmp/u"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tridrop(&["sweep", "--out", "/tmp/u"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tridrop(&["sweep", "--preset", "nope", "--out", "/tmp/u"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sessile_classifies_the_low_wavenumber_modes() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "sessile",
        "--alpha",
        "1.396",
        "--l",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("class = bouncing"));
    let trace = String::from_utf8(read(dir.path(), "com_trace.csv")).unwrap();
    assert!(trace.lines().nth(1).unwrap().ends_with("bouncing"));

    let out = tridrop(&["sessile", "--l", "3", "--epsilon", "0", "--out",
        dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("class = stationary"));
}

#[test]
fn sessile_warns_on_large_amplitudes() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "sessile", "--l", "2", "--epsilon", "0.2",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"), "{}", stderr(&out));
}

#[test]
fn sessile_accepts_one_profile_source_at_most() {
    let out = tridrop(&[
        "sessile", "--l", "0", "--xi-const", "1.0", "--xi-cosine", "0.5,2",
        "--out", "/tmp/unused",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at most one"), "{}", stderr(&out));
}

#[test]
fn snapshot_reruns_are_byte_identical() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "simulate",
        "--alpha0",
        "0.7853981633974483",
        "--phi",
        "0.6",
        "--t-end",
        "10",
        "--stride",
        "10",
        "--out",
        d1.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let config = d1.path().join("config.json");
    let out = tridrop(&[
        "--config",
        config.to_str().unwrap(),
        "simulate",
        "--out",
        d2.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    for name in ["trajectory.csv", "section.csv", "embedding.csv", "run.json"] {
        assert_eq!(
            read(d1.path(), name),
            read(d2.path(), name),
            "{name} differs between original and snapshot rerun"
        );
    }
}

#[test]
fn sampled_profile_is_embedded_in_the_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("profile.csv");
    fs::write(&csv, "s,xi\n0.0,0.2\n0.7,0.9\n1.2,0.4\n").unwrap();
    let d1 = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "sessile", "--alpha", "1.3", "--l", "1", "--xi-csv",
        csv.to_str().unwrap(), "--out", d1.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    fs::remove_file(&csv).unwrap();

    let d2 = tempfile::tempdir().unwrap();
    let out = tridrop(&[
        "--config",
        d1.path().join("config.json").to_str().unwrap(),
        "sessile",
        "--out",
        d2.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(read(d1.path(), "com_trace.csv"), read(d2.path(), "com_trace.csv"));
}

#[test]
fn flags_override_config_file_values() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("cfg.json");
    fs::write(&config, "{\"alpha0\": 1.2}").unwrap();
    let out = tridrop(&[
        "--config",
        config.to_str().unwrap(),
        "equilibria",
        "--alpha0",
        "0.7853981633974483",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("y = 0.333333333"), "{}", stdout(&out));
}

#[test]
fn missing_required_flags_name_the_flag() {
    let out = tridrop(&["equilibria"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--alpha0"), "{}", stderr(&out));
    let out = tridrop(&["bifurcation"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--out"), "{}", stderr(&out));
}
