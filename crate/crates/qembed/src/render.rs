//! Fixed-width text rendering of the JSON records.

use std::fmt::Write;

use crate::format::{CheckRecord, ReportRecord, Status};

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
    }
}

fn residual(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3e}")
    } else {
        "inf".to_string()
    }
}

pub fn check_row(c: &CheckRecord) -> String {
    format!(
        "  {:<34} {:<6} {:>12}",
        c.check,
        status(c.status),
        residual(c.max_residual)
    )
}

pub fn report(r: &ReportRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} [{}]", r.subject, status(r.status));
    let _ = writeln!(
        out,
        "  {:<34} {:<6} {:>12}",
        "check", "status", "max_residual"
    );
    for c in &r.checks {
        let _ = writeln!(out, "{}", check_row(c));
    }
    out
}

pub fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}
