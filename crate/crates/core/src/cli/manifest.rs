//! Batch mode: a JSON manifest of named entries, one output file each.
//!
//! ```json
//! {
//!   "entries": [
//!     { "name": "base", "compute": { "query": { "mu": [1], "nu": [1], "insertions": [] } } },
//!     { "name": "curve", "verify": { "suite": "spectral-curve", "k": 1, "r": 2, "q": 1 } }
//!   ]
//! }
//! ```

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::compute::{compute_cached, Method};
use super::verify::{run_verify, VerifyRequest};
use super::{write_json, CmdResult, Failure, EXIT_FAIL, EXIT_OK};
use crate::error::Error;
use crate::query::HurwitzQuery;
use crate::report::Status;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeRequest {
    pub query: HurwitzQuery,
    #[serde(default)]
    pub method: Method,
}

/// Exactly one of `compute` and `verify` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compute: Option<ComputeRequest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyRequest>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let m: Manifest = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            let ok_name = !e.name.is_empty()
                && e.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
            if !ok_name {
                return Err(Error::InvalidInput(format!(
                    "entry name {:?} must be non-empty [A-Za-z0-9_-]",
                    e.name
                )));
            }
            if !seen.insert(e.name.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate entry name {:?}", e.name)));
            }
            match (&e.compute, &e.verify) {
                (Some(c), None) => c.query.insertions.validate()?,
                (None, Some(_)) => {}
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "entry {:?} needs exactly one of compute and verify",
                        e.name
                    )))
                }
            }
        }
        Ok(())
    }
}

fn run_entry(e: &ManifestEntry, cache_dir: Option<&Path>) -> Result<(serde_json::Value, Status), Failure> {
    if let Some(c) = &e.compute {
        let result = compute_cached(&c.query, c.method, cache_dir)?;
        return Ok((serde_json::to_value(result)?, Status::Pass));
    }
    let req = e.verify.as_ref().expect("validated");
    // sweeps inside a manifest run on the entry's own worker
    let report = run_verify(req, 1)?;
    let status = report.status;
    Ok((serde_json::to_value(report)?, status))
}

pub(crate) fn run_manifest(
    file: &Path,
    out_dir: &Path,
    jobs: usize,
    cache_dir: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let text = fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
    let manifest = Manifest::parse(&text)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let results: Vec<_> = pool.install(|| {
        manifest
            .entries
            .par_iter()
            .map(|e| run_entry(e, cache_dir))
            .collect()
    });
    let mut summary = Vec::new();
    let mut code = EXIT_OK;
    for (entry, result) in manifest.entries.iter().zip(results) {
        let (value, status) = result?;
        let path = out_dir.join(format!("{}.json", entry.name));
        let body = serde_json::to_string_pretty(&value)? + "\n";
        fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        if status == Status::Fail {
            code = EXIT_FAIL;
        }
        summary.push(json!({ "name": entry.name, "file": path, "status": status }));
    }
    write_json(out, &json!({ "entries": summary }))?;
    Ok(code)
}
