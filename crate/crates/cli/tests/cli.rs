//! End-to-end runs of the `meanlik` binary: CSV schema, pinned rows, exit
//! codes and the `fit` report.

use std::path::PathBuf;
use std::process::{Command, Output};

use meanlik::output::HEADER;
use meanlik::sweep::parallel_sweep;
use meanlik_core::compare::{sweep, theta_grid, SimConfig};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meanlik")).args(args).output().expect("spawn meanlik")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("meanlik-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const GOLDEN_HEADER: &str =
    "model,comparison,x,n,n_rep,seed,mse_mle,mse_alt,r,r_lo,r_hi,pmc,pmc_lo,pmc_hi,pileup_pos,pileup_neg";

fn assert_csv(text: &str, expected_row: &str) {
    assert!(!text.contains('\r'), "CR in output");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(GOLDEN_HEADER));
    assert_eq!(HEADER.join(","), GOLDEN_HEADER);
    assert!(text.lines().any(|l| l == expected_row), "row {expected_row:?} not found in\n{text}");
    for line in text.lines().skip(1).filter(|l| !l.starts_with('#')) {
        assert_eq!(line.split(',').count(), HEADER.len(), "{line}");
    }
}

// Pinned rows were cross-checked against independent computations: binomial
// enumeration with scipy, gamma-density quadrature for the exponential rows,
// and angle-density quadrature of the bivariate normal for the n = 2 rows.

#[test]
fn binomial_schema_and_row() {
    let text = stdout(&["binomial", "--n", "10"]);
    assert_csv(&text, "binomial,mele_vs_mle,0.5,10,,,0.025,0.0173611111111,1.44,,,0.876953125,,,,");
    assert_csv(&text, "binomial,bayes_vs_mle,0.3,10,,,0.021,0.0191383219955,1.09727488152,,,0.4815914464,,,,");
    assert!(text.contains("# efficiency_interval n=10 mele_vs_mle (0.138126567772, 0.861873432228)"));
}

#[test]
fn exponential_schema_and_row() {
    let text = stdout(&["exponential", "--n", "10"]);
    assert_csv(&text, "exponential,mele_vs_mle,10,10,,,0.1,0.21875,0.457142857143,,,0.397955607168,,,,");
    assert_csv(&text, "exponential,bayes_vs_mle,10,10,,,0.1,0.135802469136,0.736363636364,,,0.474750527479,,,,");
    let small = stdout(&["exponential", "--n", "2"]);
    assert_eq!(small.lines().count(), 2, "n = 2 has a Bayes row only:\n{small}");
}

#[test]
fn ma1_exact2_schema_and_row() {
    let text = stdout(&["ma1-exact2"]);
    assert_csv(&text, "ma1_exact2,mele_vs_mle,0.5,2,,,0.742756179182,0.229316094549,3.23900588244,,,0.830388099167,,,,");
    assert_eq!(text.lines().count(), 1 + 2 * 41);
}

#[test]
fn ma1_sim_schema_row_and_determinism() {
    let args = ["ma1-sim", "--n", "10", "--n-rep", "30", "--grid-step", "0.5"];
    let text = stdout(&args);
    assert_csv(
        &text,
        "ma1_sim,mele_vs_mle,0,10,30,19990401,0.257294972599,0.119365771059,2.15551719991,1.33464526573,3.48126541068,0.7,0.424694781752,0.975305218248,0.0666666666667,0.0333333333333",
    );
    assert_eq!(text, stdout(&args), "same flags, same bytes");
    let threaded = stdout(&["ma1-sim", "--n", "10", "--n-rep", "30", "--grid-step", "0.5", "--threads", "3"]);
    assert_eq!(text, threaded, "thread count must not change results");
    let reseeded = stdout(&["ma1-sim", "--n", "10", "--n-rep", "30", "--grid-step", "0.5", "--seed", "1"]);
    assert_ne!(text, reseeded);
}

#[test]
fn parallel_sweep_equals_sequential_sweep() {
    let cfg = SimConfig { thetas: theta_grid(0.25).unwrap(), n: 12, n_rep: 40, ..SimConfig::default() };
    let seq = sweep(&cfg).unwrap();
    for threads in [1, 2, 4] {
        assert_eq!(parallel_sweep(&cfg, threads).unwrap(), seq);
    }
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("exp.csv", "");
    let out = run(&["exponential", "--n", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(GOLDEN_HEADER) && text.ends_with('\n'));
}

#[test]
fn fit_reports() {
    let bin = scratch("bin.txt", "3 10\n");
    let text = stdout(&["fit", bin.to_str().unwrap(), "--model", "binomial"]);
    assert!(text.contains("mle             0.3\n"), "{text}");
    assert!(text.contains("mele            0.333333333333\n"), "{text}");
    assert!(text.contains("bayes           0.309523809524\n"), "{text}");

    let exp = scratch("exp.txt", "1\n2\n3\n1.5\n2.5\n");
    let csv = stdout(&["fit", exp.to_str().unwrap(), "--model", "exponential", "--csv"]);
    assert_eq!(csv, "model,n,mle,mele,bayes,mle_on_boundary\nexponential,5,2,3.33333333333,2.5,false\n");

    let ma = scratch("ma.txt", "1\n-1\n");
    let text = stdout(&["fit", ma.to_str().unwrap(), "--model", "ma1"]);
    assert!(text.contains("mle             1\n"), "{text}");
    assert!(text.contains("mle_on_boundary true\n"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["binomial", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["ma1-sim", "--n-rep", "5"]).status.code(), Some(1));
    assert_eq!(run(&["ma1-sim", "--grid-step", "0.3"]).status.code(), Some(1));
    assert_eq!(run(&["ma1-exact2", "--grid-step", "0.7"]).status.code(), Some(1));

    let bad = scratch("bad.txt", "1.0\n2.0\nnot-a-number\n");
    let out = run(&["fit", bad.to_str().unwrap(), "--model", "exponential"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let short = scratch("short.txt", "0.4\n");
    assert_eq!(run(&["fit", short.to_str().unwrap(), "--model", "ma1"]).status.code(), Some(2));
    assert_eq!(run(&["fit", "/nonexistent/meanlik.txt", "--model", "ma1"]).status.code(), Some(2));
}
