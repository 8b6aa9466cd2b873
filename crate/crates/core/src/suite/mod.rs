//! Batch verification: every check of the library run from one config,
//! collected into a deterministic report.

mod checks;
mod config;
mod export;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use config::{Format, IntRange, SuiteConfig};
pub use export::{export, render, to_csv, to_json, to_text};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped(resource)")]
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped(resource)",
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A formula evaluated independently of the computation.
    ClosedForm,
    /// A second algorithm computing the same quantity.
    IndependentComputation,
    /// An identity or structural property checked instance by instance.
    Structural,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::IndependentComputation => "independent-computation",
            Provenance::Structural => "structural",
        }
    }
}

pub(crate) struct Outcome {
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub check_id: String,
    pub paper_ref: String,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub provenance: Provenance,
    pub status: Status,
    /// Wall time in milliseconds, absent when timings are off.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    /// 0 all pass, 1 any failure, 3 nothing failed but something was skipped.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.skipped > 0 {
            3
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Ids of the checks a config expands to, without running them.
pub fn check_ids(cfg: &SuiteConfig) -> Vec<String> {
    let mut ids: Vec<String> = checks::stages(cfg).into_iter().flatten().map(|c| c.id).collect();
    ids.sort();
    ids
}

/// Runs the stages in order; checks inside a stage run concurrently and are
/// sorted by id afterwards. Resource-limit errors become skips, any other
/// error a failure.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut records = Vec::new();
    for stage in checks::stages(cfg) {
        let mut done: Vec<CheckRecord> = stage
            .into_par_iter()
            .map(|c| {
                let start = Instant::now();
                let result = (c.run)(&cfg.limits);
                let elapsed = cfg.record_timings.then(|| start.elapsed().as_millis() as u64);
                let (expected, computed, status) = match result {
                    Ok(o) => (o.expected, o.computed, if o.passed { Status::Pass } else { Status::Fail }),
                    Err(e) if e.is_resource_limit() => ("-".into(), e.to_string(), Status::Skipped),
                    Err(e) => ("-".into(), format!("error: {e}"), Status::Fail),
                };
                CheckRecord {
                    check_id: c.id,
                    paper_ref: c.paper_ref.to_string(),
                    inputs: c.inputs,
                    expected,
                    computed,
                    provenance: c.provenance,
                    status,
                    elapsed,
                }
            })
            .collect();
        done.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        records.extend(done);
    }
    let mut summary = Summary::default();
    for r in &records {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    Ok(SuiteReport {
        config: cfg.clone(),
        checks: records,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;

    fn small() -> SuiteConfig {
        SuiteConfig {
            n: IntRange::single(1),
            d: IntRange::new(1, 2),
            k: IntRange::new(0, 1),
            instances: 5,
            record_timings: false,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let a = run_suite(&small()).unwrap();
        assert_eq!(a.exit_code(), 0, "{:?}", a.failures().collect::<Vec<_>>());
        let b = run_suite(&small()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.checks.len(), check_ids(&small()).len());
    }

    #[test]
    fn tiny_box_skips() {
        let cfg = SuiteConfig {
            limits: Limits {
                max_box: 1,
                ..Limits::default()
            },
            ..small()
        };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.summary.fail, 0, "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.summary.skipped > 0);
        assert_eq!(r.exit_code(), 3);
        let perp = r
            .checks
            .iter()
            .find(|c| c.check_id == "4-harmonic.perp-dim[d=2,k=1]")
            .unwrap();
        assert_eq!(perp.status, Status::Skipped);
    }

    #[test]
    fn exit_codes() {
        let mut r = run_suite(&SuiteConfig {
            d: IntRange::single(1),
            k: IntRange::single(0),
            ..small()
        })
        .unwrap();
        assert_eq!(r.exit_code(), 0);
        r.summary.skipped = 1;
        assert_eq!(r.exit_code(), 3);
        r.summary.fail = 1;
        assert_eq!(r.exit_code(), 1);
    }
}
