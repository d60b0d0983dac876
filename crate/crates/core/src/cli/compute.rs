use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use num::BigRational;
use serde::{Deserialize, Serialize};

use super::cache;
use super::Failure;
use crate::exactmath::format_rational;
use crate::fock::{connected_from_disconnected, FockEngine};
use crate::query::HurwitzQuery;
use crate::tropical::hurwitz_tropical;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fock,
    Tropical,
    /// Both engines, which must agree.
    #[default]
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Fock => "fock",
            Method::Tropical => "tropical",
            Method::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeOutput {
    pub query: HurwitzQuery,
    pub value: String,
    pub method: Method,
    pub elapsed_ms: u64,
}

fn fock_value(q: &HurwitzQuery) -> BigRational {
    let mut engine = FockEngine::new();
    if q.connected {
        connected_from_disconnected(q, |b| engine.disconnected(b))
    } else {
        engine.disconnected(q)
    }
}

/// Value of `q` by `method`; `auto` fails with [`Failure::Mismatch`] when
/// the engines disagree.
pub fn compute(q: &HurwitzQuery, method: Method) -> Result<BigRational, Failure> {
    q.insertions.validate()?;
    match method {
        Method::Fock => Ok(fock_value(q)),
        Method::Tropical => Ok(hurwitz_tropical(q)),
        Method::Auto => {
            let f = fock_value(q);
            let t = hurwitz_tropical(q);
            if f != t {
                return Err(Failure::Mismatch(format!(
                    "fock = {}, tropical = {} for {}",
                    format_rational(&f),
                    format_rational(&t),
                    serde_json::to_string(q)?
                )));
            }
            Ok(f)
        }
    }
}

pub(crate) fn compute_cached(q: &HurwitzQuery, method: Method, cache_dir: Option<&Path>) -> Result<ComputeOutput, Failure> {
    let start = Instant::now();
    let value = match cache_dir.and_then(|d| cache::lookup(d, q, method)) {
        Some(v) => v,
        None => {
            let v = compute(q, method)?;
            if let Some(dir) = cache_dir {
                cache::store(dir, q, method, &v)?;
            }
            v
        }
    };
    Ok(ComputeOutput {
        query: q.clone(),
        value: format_rational(&value),
        method,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
