//! Cover files: one JSON document per query listing every cover and the
//! total.

use std::fs;
use std::path::Path;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use super::enumerate::{for_each_cover, TropCover};
use crate::error::{Error, Result};
use crate::exactmath::rational::{format_rational, parse_rational};
use crate::query::HurwitzQuery;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub query: HurwitzQuery,
    pub covers: Vec<CoverRecord>,
    pub total: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverRecord {
    pub vertices: Vec<VertexRecord>,
    pub nu_matching: Vec<NuMatch>,
    pub weight: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub genus: u32,
    #[serde(rename = "in")]
    pub incoming: Vec<InStrand>,
    pub out_weights: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InStrand {
    pub weight: u32,
    pub from: String,
}

/// A leftover strand and the 1-based index of the `ν` part it ends on.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuMatch {
    pub strand: String,
    pub nu: usize,
}

impl From<&TropCover> for CoverRecord {
    fn from(c: &TropCover) -> Self {
        CoverRecord {
            vertices: c
                .vertices
                .iter()
                .map(|v| VertexRecord {
                    genus: v.genus,
                    incoming: v
                        .incoming
                        .iter()
                        .map(|s| InStrand {
                            weight: s.weight,
                            from: s.origin.label(),
                        })
                        .collect(),
                    out_weights: v.out_weights.clone(),
                })
                .collect(),
            nu_matching: c
                .nu_matching
                .iter()
                .map(|(o, j)| NuMatch {
                    strand: o.label(),
                    nu: j + 1,
                })
                .collect(),
            weight: format_rational(&c.weight),
        }
    }
}

pub fn cover_file(q: &HurwitzQuery) -> CoverFile {
    let mut covers = Vec::new();
    let mut total = BigRational::zero();
    for_each_cover(q, |c| {
        total += &c.weight;
        covers.push(CoverRecord::from(&c));
    });
    CoverFile {
        query: q.clone(),
        covers,
        total: format_rational(&total),
    }
}

pub fn write_cover_file(file: &CoverFile, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(file)?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// Writes the cover file for `q` and returns the total.
pub fn export_covers(q: &HurwitzQuery, path: &Path) -> Result<BigRational> {
    let file = cover_file(q);
    write_cover_file(&file, path)?;
    parse_rational(&file.total)
}

/// Re-reads a cover file, sums the cover weights and compares with the
/// recorded total. Returns `(sum, recorded total)`.
pub fn check_cover_file(path: &Path) -> Result<(BigRational, BigRational)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: CoverFile = serde_json::from_str(&text)?;
    let mut sum = BigRational::zero();
    for c in &file.covers {
        sum += parse_rational(&c.weight)?;
    }
    Ok((sum, parse_rational(&file.total)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::hurwitz_tropical;

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let q = HurwitzQuery::new(
            "2,2".parse().unwrap(),
            "1,1".parse().unwrap(),
            "1:3,1:2".parse().unwrap(),
            false,
        );
        let path = dir.path().join("covers.json");
        let total = export_covers(&q, &path).unwrap();
        assert_eq!(total, hurwitz_tropical(&q));
        let (sum, recorded) = check_cover_file(&path).unwrap();
        assert_eq!(sum, recorded);
        assert_eq!(sum, total);
    }

    #[test]
    fn base_case_and_inadmissible() {
        let q = HurwitzQuery::new("2".parse().unwrap(), "2".parse().unwrap(), Default::default(), true);
        let f = cover_file(&q);
        assert_eq!(f.covers.len(), 1);
        assert_eq!(f.total, "1/2");
        assert_eq!(f.covers[0].nu_matching[0].strand, "mu:1");
        let bad = HurwitzQuery::new("3".parse().unwrap(), "5".parse().unwrap(), "1:2".parse().unwrap(), false);
        let f = cover_file(&bad);
        assert!(f.covers.is_empty());
        assert_eq!(f.total, "0/1");
    }

    #[test]
    fn labels() {
        let q = HurwitzQuery::new("3".parse().unwrap(), "1,1".parse().unwrap(), "1:2".parse().unwrap(), true);
        let f = cover_file(&q);
        let v = &f.covers[0].vertices[0];
        assert_eq!(v.incoming[0].from, "mu:1");
        assert_eq!(f.covers[0].nu_matching[0].strand, "v:1.1");
        let json = serde_json::to_value(&f).unwrap();
        assert!(json["covers"][0]["vertices"][0].get("in").is_some());
    }
}
