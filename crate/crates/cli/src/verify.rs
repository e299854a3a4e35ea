use std::fmt::Write as _;

use serde::Serialize;

use dandelin::suite::{run_suite, PropertyOutcome, SuiteConfig};
use dandelin::SuiteReport;

use crate::args::{ReportFormat, VerifyArgs};
use crate::error::CliError;
use crate::output::{emit, json_bytes};

#[derive(Serialize)]
struct PropertyDoc<'a> {
    name: &'a str,
    passed: usize,
    checked: usize,
    max_deviation: f64,
    tolerance: f64,
    status: &'a str,
    first_failure: Option<&'a str>,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    generator: &'a str,
    seed: u64,
    trials: usize,
    tol: f64,
    status: &'a str,
    properties: Vec<PropertyDoc<'a>>,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Infinite deviations mark instances that could not be built.
fn deviation(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

pub fn render_text(report: &SuiteReport) -> String {
    let mut s = String::new();
    let cfg = &report.config;
    let _ = writeln!(
        s,
        "splitmix64 seed {} trials {} tol {:e}",
        cfg.seed, cfg.trials, cfg.tol
    );
    let _ = writeln!(
        s,
        "{:<26} {:>11}  {:>12}  {:>9}  status",
        "property", "passed", "max dev", "tol"
    );
    for p in &report.properties {
        let _ = writeln!(
            s,
            "{:<26} {:>11}  {:>12.3e}  {:>9.0e}  {}",
            p.name,
            format!("{}/{}", p.passed, p.checked),
            p.max_deviation,
            p.tolerance,
            status(p.all_passed())
        );
        if let Some(f) = &p.first_failure {
            let _ = writeln!(s, "  first failure: {f}");
        }
    }
    let _ = writeln!(s, "overall: {}", status(report.all_passed()));
    s
}

fn render_json(report: &SuiteReport) -> Result<Vec<u8>, CliError> {
    let properties = report
        .properties
        .iter()
        .map(|p: &PropertyOutcome| PropertyDoc {
            name: p.name,
            passed: p.passed,
            checked: p.checked,
            max_deviation: deviation(p.max_deviation),
            tolerance: p.tolerance,
            status: status(p.all_passed()),
            first_failure: p.first_failure.as_deref(),
        })
        .collect();
    json_bytes(&ReportDoc {
        generator: "splitmix64",
        seed: report.config.seed,
        trials: report.config.trials,
        tol: report.config.tol,
        status: status(report.all_passed()),
        properties,
    })
}

/// Runs the suite and writes the report; returns whether every property passed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Parameter(format!(
            "--tol must be positive and finite, got {}",
            args.tol
        )));
    }
    let trials = usize::try_from(args.trials)
        .map_err(|_| CliError::Parameter(format!("--trials {} is too large", args.trials)))?;
    let report = run_suite(&SuiteConfig {
        trials,
        seed: args.seed,
        tol: args.tol,
    });
    let bytes = match args.format {
        ReportFormat::Text => render_text(&report).into_bytes(),
        ReportFormat::Json => render_json(&report)?,
    };
    emit(args.out.as_deref(), &bytes)?;
    Ok(report.all_passed())
}
