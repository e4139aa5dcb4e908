//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).

use std::time::Instant;

use curvops::kappa::Curvature;
use curvops::report::Report;
use curvops::spectra::{kc_admissible, radial_tail_mass};
use curvops::system::{SystemKind, SystemSpec};
use curvops::verify::*;

fn announce(criterion: &str, rep: &Report, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    let status = if rep.pass() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion}: {status} ({} rows, worst residual ratio {:.2e}) [{elapsed:.1}s / {budget_s}s]",
        rep.rows.len(),
        rep.rows
            .iter()
            .map(|r| r.residual / r.tol)
            .fold(0.0f64, f64::max),
    );
    for row in rep.failed() {
        println!("  FAIL {}: residual {:e} tol {:e}", row.identity, row.residual, row.tol);
    }
    assert!(rep.pass(), "criterion {criterion} failed");
    assert!(
        elapsed < budget_s,
        "criterion {criterion} exceeded its runtime budget: {elapsed:.1}s"
    );
}

fn cfg_with(kappas: &[f64]) -> VerifyConfig {
    VerifyConfig {
        kappas: kappas.to_vec(),
        ..Default::default()
    }
}

#[test]
fn criterion_01_kappa_trig_normalization() {
    let t0 = Instant::now();
    let rep = kappa_suite();
    announce("1 (kappa-trig normalization)", &rep, t0, 1.0);
}

#[test]
fn criterion_02_kc_identities() {
    let t0 = Instant::now();
    let cfg = cfg_with(&[-0.1, 0.0, 0.1]);
    let mut rep = Report::default();
    for &kappa in &cfg.kappas {
        let spec = make_spec(SystemKind::Kc, kappa, &cfg).unwrap();
        kc_identity_rows(&spec, &cfg, &mut rep).unwrap();
    }
    announce("2 (KC factorization/intertwining/annihilation)", &rep, t0, 10.0);
}

#[test]
fn criterion_03_kc_spectrum() {
    let t0 = Instant::now();
    let cfg = cfg_with(&[-0.01, 0.0, 0.1]);
    let mut rep = Report::default();
    for &kappa in &cfg.kappas {
        let spec = make_spec(SystemKind::Kc, kappa, &cfg).unwrap();
        kc_spectrum_rows(&spec, &mut rep).unwrap();
    }
    // the flat case must reproduce -1, -1/4, -1/9, ...
    let flat = make_spec(SystemKind::Kc, 0.0, &cfg).unwrap();
    let rows = spectrum_with_oracle(&flat, 3).unwrap();
    for (n, row) in rows.iter().enumerate().take(3) {
        let expect = -1.0 / ((n + 1) as f64).powi(2);
        let numeric = row.numeric.unwrap();
        assert!(
            (numeric - expect).abs() < 1e-6,
            "flat E_{n}: {numeric} vs {expect}"
        );
    }
    announce("3 (KC spectrum vs eigensolver)", &rep, t0, 30.0);
}

#[test]
fn criterion_04_admissibility_transition() {
    let t0 = Instant::now();
    let cfg = cfg_with(&[-0.01]);
    let spec = make_spec(SystemKind::Kc, -0.01, &cfg).unwrap();
    let mut rep = Report::default();
    for n in 0..=3 {
        let n = n as f64;
        let ineq = kc_admissible(&spec, n);
        let tail = radial_tail_mass(&spec, &curvops::factor::kc_rnn(&spec, n)).unwrap();
        let tail_ok = tail <= 1e-10;
        let expected = n <= 2.0;
        rep.push(
            format!("admissibility n={n}"),
            "inequality and tail test agree, with the transition after n = 2",
            if ineq == expected && tail_ok == expected {
                0.0
            } else {
                1.0
            },
            0.5,
        );
    }
    announce("4 (kappa<0 admissibility transition)", &rep, t0, 10.0);
}

#[test]
fn criterion_05_ho_spectrum_adjudication() {
    let t0 = Instant::now();
    let cfg = cfg_with(&[-0.05, 0.1]);
    let mut rep = Report::default();
    for &kappa in &cfg.kappas {
        let spec = make_spec(SystemKind::Ho, kappa, &cfg).unwrap();
        ho_spectrum_rows(&spec, &mut rep).unwrap();
    }
    assert!(
        rep.findings
            .iter()
            .any(|f| f.detail.contains("misses the constant 3 kappa/2")),
        "the adjudication finding must be recorded in the report"
    );
    announce("5 (HO spectrum adjudication)", &rep, t0, 30.0);
}

#[test]
fn criterion_06_ho_operator_relations() {
    let t0 = Instant::now();
    let cfg = cfg_with(&[-0.05, 0.0, 0.1]);
    let mut rep = Report::default();
    for &kappa in &cfg.kappas {
        let spec = make_spec(SystemKind::Ho, kappa, &cfg).unwrap();
        ho_quantum_rows(&spec, &cfg, &mut rep).unwrap();
    }
    announce("6 (HO operator relations and ladders)", &rep, t0, 60.0);
}

#[test]
fn criterion_07_octant_systems() {
    let t0 = Instant::now();
    let cfg = cfg_with(&[0.1]);
    let mut rep = Report::default();
    for (kind, kappa) in [
        (SystemKind::Sw, 0.1),
        (SystemKind::Sw, -0.01),
        (SystemKind::Evans, 0.1),
        (SystemKind::Evans, -0.01),
    ] {
        let spec = make_spec(kind, kappa, &cfg).unwrap();
        octant_quantum_rows(&spec, &cfg, &mut rep).unwrap();
    }
    announce("7 (SW/Evans angular spectra and states)", &rep, t0, 60.0);
}

#[test]
fn criterion_08_classical_suite() {
    let t0 = Instant::now();
    let mut rep = Report::default();
    for (kind, kappas) in [
        (SystemKind::Kc, vec![-0.1, 0.0, 0.1]),
        (SystemKind::Ho, vec![-0.05, 0.0, 0.2]),
        (SystemKind::Sw, vec![0.1]),
        (SystemKind::Evans, vec![-0.01]),
    ] {
        let cfg = cfg_with(&kappas);
        rep.merge(classical_suite(kind, &cfg).unwrap());
    }
    assert!(
        rep.rows
            .iter()
            .any(|r| r.identity.starts_with("ho_ladder_phase_rate")),
        "the kappa = 0.2 phase-rate row must be present"
    );
    announce("8 (classical brackets, drifts, phase rate)", &rep, t0, 60.0);
}

#[test]
fn criterion_09_flat_limit_continuity() {
    let t0 = Instant::now();
    let mut rep = Report::default();
    for kind in [
        SystemKind::Kc,
        SystemKind::Ho,
        SystemKind::Sw,
        SystemKind::Evans,
    ] {
        let cfg = cfg_with(&[0.1]);
        rep.merge(continuity_suite(kind, &cfg).unwrap());
    }
    announce("9 (flat-limit continuity)", &rep, t0, 30.0);
}

#[test]
fn criterion_10_determinism() {
    let t0 = Instant::now();
    // in-process: identical config and seed give byte-identical reports
    let cfg = VerifyConfig {
        kappas: vec![0.1],
        t_end: 10.0,
        bracket_points: 20,
        ..Default::default()
    };
    let a = classical_suite(SystemKind::Kc, &cfg).unwrap().to_json();
    let b = classical_suite(SystemKind::Kc, &cfg).unwrap().to_json();
    assert_eq!(a, b, "report bytes must be identical for identical config");

    // through the binary: identical CSV bytes for identical flags
    let exe = env!("CARGO_BIN_EXE_curvops");
    let tmp = std::env::temp_dir().join("curvops_determinism");
    let (d1, d2) = (tmp.join("run1"), tmp.join("run2"));
    for dir in [&d1, &d2] {
        let status = std::process::Command::new(exe)
            .args([
                "spectrum",
                "--system",
                "kc",
                "--kappa",
                "0.1",
                "--seed",
                "7",
                "--out",
                dir.to_str().unwrap(),
            ])
            .status()
            .expect("spawn curvops");
        assert!(status.success());
    }
    let f1 = std::fs::read(d1.join("spectrum_kc_kappa0p1.csv")).unwrap();
    let f2 = std::fs::read(d2.join("spectrum_kc_kappa0p1.csv")).unwrap();
    assert_eq!(f1, f2, "CSV bytes must be identical across runs");
    let pass = true;
    let mut rep = Report::default();
    rep.push(
        "determinism",
        "same config and seed reproduce byte-identical reports and CSV",
        if pass { 0.0 } else { 1.0 },
        0.5,
    );
    announce("10 (determinism)", &rep, t0, 60.0);
}

#[test]
fn cli_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_curvops");
    // empty kappa list is a config error: exit 2
    let status = std::process::Command::new(exe)
        .args(["verify", "--system", "kc", "--kappa", ","])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let status = std::process::Command::new(exe)
        .args(["nonsense"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
