//! Flat-file cache of computed values, one JSON file per query and method.

use std::fs;
use std::path::{Path, PathBuf};

use num::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::compute::Method;
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational};
use crate::query::HurwitzQuery;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    query: HurwitzQuery,
    method: Method,
    value: String,
}

fn path_for(dir: &Path, q: &HurwitzQuery, method: Method) -> PathBuf {
    let key = serde_json::to_string(&(q, method)).expect("plain data");
    let digest = Sha256::digest(key.as_bytes());
    dir.join(format!("{digest:x}.json"))
}

/// A cached value, if present and recorded for exactly this query.
pub fn lookup(dir: &Path, q: &HurwitzQuery, method: Method) -> Option<BigRational> {
    let text = fs::read_to_string(path_for(dir, q, method)).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    if &entry.query != q || entry.method != method {
        return None;
    }
    parse_rational(&entry.value).ok()
}

pub fn store(dir: &Path, q: &HurwitzQuery, method: Method, value: &BigRational) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let entry = Entry {
        query: q.clone(),
        method,
        value: format_rational(value),
    };
    let path = path_for(dir, q, method);
    let text = serde_json::to_string_pretty(&entry)?;
    fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))
}
