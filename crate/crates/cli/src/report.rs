//! The serialized run report and its JSON and TSV renderings.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A fact reported for the record; never counted as a pass or a failure.
    Recorded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValuationBound {
    pub name: String,
    /// Smallest certified absolute `p`-adic precision.
    pub precision: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub witnesses: BTreeMap<String, Value>,
    pub valuation_bounds: Vec<ValuationBound>,
    pub checks: Vec<Check>,
    pub timings: Timings,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            status: Status::Pass,
            witnesses: BTreeMap::new(),
            valuation_bounds: Vec::new(),
            checks: Vec::new(),
            timings: Timings { elapsed_ms: 0 },
        }
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.to_string(), status, detail: detail.into() });
    }

    pub fn record(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), status: Status::Recorded, detail: detail.into() });
    }

    pub fn witness(&mut self, key: &str, value: impl Serialize) {
        self.witnesses.insert(key.to_string(), serde_json::to_value(value).expect("witnesses serialize"));
    }

    pub fn bound(&mut self, name: &str, precision: i64) {
        self.valuation_bounds.push(ValuationBound { name: name.to_string(), precision });
    }

    /// Fails if any check failed; recorded checks do not affect the status.
    pub fn finish(&mut self) {
        let failed = self.checks.iter().any(|c| c.status == Status::Fail);
        self.status = if failed { Status::Fail } else { Status::Pass };
    }

    pub fn passed_checks(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: Option<RunConfig>,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn empty() -> Self {
        Report { schema_version: SCHEMA_VERSION, config: None, suites: Vec::new() }
    }

    pub fn failed(&self) -> bool {
        self.suites.iter().any(|s| s.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("suite\tstatus\tchecks_passed\tchecks_total\telapsed_ms\n");
        for s in &self.suites {
            let status = serde_json::to_value(s.status).expect("status serializes");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                s.suite,
                status.as_str().unwrap_or_default(),
                s.passed_checks(),
                s.checks.len(),
                s.timings.elapsed_ms
            ));
        }
        out
    }

    /// Reads a saved run; a missing file is an empty run.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        match fs::read_to_string(path) {
            Ok(text) => Ok(serde_json::from_str(&text)?),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::empty()),
            Err(e) => Err(e.into()),
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::empty();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["suites"].as_array().unwrap().len(), 0);
        assert_eq!(r.to_tsv().lines().count(), 1);
    }

    #[test]
    fn recorded_checks_do_not_fail() {
        let mut s = SuiteReport::new("x");
        s.check("exact", true, "");
        s.record("sign", "-1");
        s.finish();
        assert_eq!(s.status, Status::Pass);
        assert_eq!(s.passed_checks(), 1);
        s.check("broken", false, "");
        s.finish();
        assert_eq!(s.status, Status::Fail);
    }
}
