use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Partition;

/// One vertex insertion: leak `k` and completed-cycle order `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, u32)", into = "(i64, u32)")]
pub struct Insertion {
    pub k: i64,
    pub r: u32,
}

impl From<(i64, u32)> for Insertion {
    fn from((k, r): (i64, u32)) -> Self {
        Insertion { k, r }
    }
}

impl From<Insertion> for (i64, u32) {
    fn from(i: Insertion) -> Self {
        (i.k, i.r)
    }
}

/// Insertions in left-to-right order; the first entry sits next to `μ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InsertionList(pub Vec<Insertion>);

impl InsertionList {
    pub fn new(entries: Vec<Insertion>) -> Self {
        InsertionList(entries)
    }

    /// `s` copies of `(k, r)`.
    pub fn uniform(k: i64, r: u32, s: usize) -> Self {
        InsertionList(vec![Insertion { k, r }; s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Insertion> {
        self.0.iter()
    }

    pub fn total_leak(&self) -> i64 {
        self.0.iter().map(|i| i.k).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.0.iter().any(|i| i.r == 0) {
            return Err(Error::InvalidInput("insertion order r must be positive".into()));
        }
        Ok(())
    }
}

impl fmt::Display for InsertionList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|i| format!("{}:{}", i.k, i.r)).collect();
        write!(f, "{}", items.join(","))
    }
}

/// `"k:r,k:r,…"`; the empty string is the empty list.
impl FromStr for InsertionList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(InsertionList::default());
        }
        let mut out = Vec::new();
        for item in s.split(',') {
            let (k, r) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("insertion {item:?} is not k:r")))?;
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad leak in {item:?}")))?;
            let r: u32 = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad order in {item:?}")))?;
            out.push(Insertion { k, r });
        }
        let list = InsertionList(out);
        list.validate()?;
        Ok(list)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HurwitzQuery {
    pub mu: Partition,
    pub nu: Partition,
    pub insertions: InsertionList,
    #[serde(default)]
    pub connected: bool,
}

impl HurwitzQuery {
    pub fn new(mu: Partition, nu: Partition, insertions: InsertionList, connected: bool) -> Self {
        HurwitzQuery {
            mu,
            nu,
            insertions,
            connected,
        }
    }

    /// Degree balance `Σμ = Σν + Σk`.
    pub fn is_admissible(&self) -> bool {
        self.mu.size() as i64 == self.nu.size() as i64 + self.insertions.total_leak()
    }

    /// `g` with `Σ(r_i − 1) = 2g − 2 + ℓ(μ) + ℓ(ν)`, when it is a
    /// non-negative integer.
    pub fn genus(&self) -> Option<u32> {
        let lhs: i64 = self.insertions.iter().map(|i| i.r as i64 - 1).sum();
        let twice = lhs + 2 - self.mu.len() as i64 - self.nu.len() as i64;
        if twice < 0 || twice % 2 != 0 {
            None
        } else {
            Some((twice / 2) as u32)
        }
    }

    pub fn with_connected(&self, connected: bool) -> Self {
        HurwitzQuery {
            connected,
            ..self.clone()
        }
    }
}
