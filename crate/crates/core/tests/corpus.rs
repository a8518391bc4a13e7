mod common;

use tracerank::cli::corpus::{run_entry, NAMES};
use tracerank::cli::{parse_job, EXIT_OK};

fn entry(name: &str) {
    let job = common::job(name);
    let (report, code) = run_entry(&job);
    assert_eq!(code, EXIT_OK, "{report}");
}

#[test]
fn trefoil() {
    entry("trefoil");
}

#[test]
fn fig8_x0() {
    entry("fig8-X0");
}

#[test]
fn fig8_y0() {
    entry("fig8-Y0");
}

#[test]
fn m003_x0() {
    entry("m003-X0");
}

#[test]
fn m003_y0() {
    entry("m003-Y0");
}

#[test]
fn k8_20_x0() {
    entry("k8_20-X0");
}

#[test]
fn ptb_xeps_c() {
    entry("ptb-Xeps-C");
}

#[test]
fn ptb_xeps_q() {
    entry("ptb-Xeps-Q");
}

#[test]
fn print_parse_print_is_stable() {
    for name in NAMES {
        let once = common::job(name).to_text();
        let twice = parse_job(&once).unwrap().to_text();
        assert_eq!(once, twice, "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["fig8-Y0", "m003-X0", "ptb-Xeps-C"] {
        let job = common::job(name);
        assert_eq!(run_entry(&job), run_entry(&job), "{name}");
    }
}
