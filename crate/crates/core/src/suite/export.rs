use std::fmt::Write as _;
use std::path::Path;

use super::config::Format;
use super::{Status, SuiteReport};
use crate::error::Result;

/// Pretty JSON with object keys sorted, newline-terminated.
pub fn to_json(report: &SuiteReport) -> Result<String> {
    // Value maps are BTreeMaps, so a round trip through Value sorts keys
    let value = serde_json::to_value(report)?;
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

/// One row per check: `checkId, paperRef, inputs, expected, computed, status`.
/// The expected column carries its provenance in brackets.
pub fn to_csv(report: &SuiteReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["checkId", "paperRef", "inputs", "expected", "computed", "status"])?;
    for c in &report.checks {
        let expected = format!("{} [{}]", c.expected, c.provenance.as_str());
        w.write_record([
            c.check_id.as_str(),
            c.paper_ref.as_str(),
            c.inputs.as_str(),
            expected.as_str(),
            c.computed.as_str(),
            c.status.as_str(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let _ = write!(out, "{tag} {} ({})", c.check_id, c.inputs);
        if let Some(ms) = c.elapsed {
            let _ = write!(out, " {ms}ms");
        }
        out.push('\n');
        if c.status != Status::Pass {
            let _ = writeln!(out, "     expected [{}]: {}", c.provenance.as_str(), c.expected);
            let _ = writeln!(out, "     computed: {}", c.computed);
        }
    }
    let s = &report.summary;
    let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
    out
}

pub fn render(report: &SuiteReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Text => Ok(to_text(report)),
    }
}

pub fn export(report: &SuiteReport, format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, render(report, format)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{CheckRecord, Provenance, Summary, SuiteConfig};
    use super::*;

    fn report(status: Status) -> SuiteReport {
        SuiteReport {
            config: SuiteConfig::default(),
            checks: vec![CheckRecord {
                check_id: "5-catalog.two-paths[N=1,d=2]".into(),
                paper_ref: "substituted Wronskians".into(),
                inputs: "N=1, d=2".into(),
                expected: "X0^(0)*X1^(1) - X0^(1)*X1^(0)".into(),
                computed: "X0^(0)*X1^(1)".into(),
                provenance: Provenance::IndependentComputation,
                status,
                elapsed: None,
            }],
            summary: Summary::default(),
        }
    }

    #[test]
    fn json_keys_sorted() {
        let s = to_json(&report(Status::Pass)).unwrap();
        let check = s.find("\"checkId\"").unwrap();
        assert!(check < s.find("\"computed\"").unwrap());
        assert!(s.find("\"computed\"").unwrap() < s.find("\"expected\"").unwrap());
        assert!(!s.contains("elapsed"));
    }

    #[test]
    fn csv_columns() {
        let s = to_csv(&report(Status::Pass)).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), "checkId,paperRef,inputs,expected,computed,status");
        assert!(lines.next().unwrap().ends_with(",pass"));
    }

    #[test]
    fn text_shows_failing_polynomials() {
        let s = to_text(&report(Status::Fail));
        assert!(s.contains("FAIL 5-catalog.two-paths[N=1,d=2]"));
        assert!(s.contains("expected [independent-computation]: X0^(0)*X1^(1) - X0^(1)*X1^(0)"));
        assert!(s.contains("computed: X0^(0)*X1^(1)"));
    }
}
