//! The bundled example jobs, each carrying its expected results.

use super::job::parse_job;
use super::{expectation_report, run_expectations, Job, Session};
use crate::error::Result;

pub const NAMES: [&str; 8] = [
    "trefoil",
    "fig8-X0",
    "fig8-Y0",
    "m003-X0",
    "m003-Y0",
    "k8_20-X0",
    "ptb-Xeps-C",
    "ptb-Xeps-Q",
];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "trefoil" => include_str!("../../corpus/trefoil.job"),
        "fig8-X0" => include_str!("../../corpus/fig8-X0.job"),
        "fig8-Y0" => include_str!("../../corpus/fig8-Y0.job"),
        "m003-X0" => include_str!("../../corpus/m003-X0.job"),
        "m003-Y0" => include_str!("../../corpus/m003-Y0.job"),
        "k8_20-X0" => include_str!("../../corpus/k8_20-X0.job"),
        "ptb-Xeps-C" => include_str!("../../corpus/ptb-Xeps-C.job"),
        "ptb-Xeps-Q" => include_str!("../../corpus/ptb-Xeps-Q.job"),
        _ => return None,
    })
}

pub fn load(name: &str) -> Option<Result<Job>> {
    source(name).map(parse_job)
}

/// Runs one entry against its expectations: report text and exit code.
pub fn run_entry(job: &Job) -> (String, i32) {
    let mut s = Session::new(job);
    let checks = run_expectations(&mut s);
    expectation_report(job.name.as_deref().unwrap_or("job"), &checks)
}
