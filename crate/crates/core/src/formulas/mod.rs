//! Genus-zero one-part and two-part orbifold numbers: closed formulas,
//! recursions and the conversion to the normalization of the vacuum
//! expectations.
//!
//! Values here are `lh`, related to the connected value `h` of the query
//! `μ`, `ν = (q^d)`, `b` copies of `(k, r)` by `lh = h / d!`.

mod normalization;
mod one_part;
mod two_part;

pub use normalization::Normalization;
pub use one_part::{one_part_closed, one_part_recursion, OnePartTable};
pub use two_part::{two_part_closed, two_part_recursion, TwoPartTable};

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::exactmath::Partition;
use crate::query::{HurwitzQuery, InsertionList};

/// Leak `k`, completed-cycle order `r` and orbifold part `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbifoldParams {
    pub k: u32,
    pub r: u32,
    pub q: u32,
}

impl OrbifoldParams {
    pub fn new(k: u32, r: u32, q: u32) -> Result<Self> {
        if k == 0 || r == 0 || q == 0 {
            return Err(Error::InvalidInput(format!(
                "k, r, q must be positive, got ({k}, {r}, {q})"
            )));
        }
        Ok(OrbifoldParams { k, r, q })
    }

    /// `A = k / r`.
    pub fn a(&self) -> BigRational {
        BigRational::new(BigInt::from(self.k), BigInt::from(self.r))
    }

    /// `B = q(r − 1) + k`.
    pub fn b_step(&self) -> u64 {
        self.q as u64 * (self.r as u64 - 1) + self.k as u64
    }

    /// `b` with `m = B b + q`, if it is a non-negative integer.
    pub fn one_part_branch(&self, m: u64) -> Option<u64> {
        let q = self.q as u64;
        if m < q || !(m - q).is_multiple_of(self.b_step()) {
            return None;
        }
        Some((m - q) / self.b_step())
    }

    /// `b = (l + m) / B`, if integral.
    pub fn two_part_branch(&self, l: u64, m: u64) -> Option<u64> {
        let s = l + m;
        if !s.is_multiple_of(self.b_step()) {
            return None;
        }
        Some(s / self.b_step())
    }

    /// The connected query `μ`, `ν = (q^d)`, `b` insertions `(k, r)` with
    /// `d = (|μ| − b k) / q`.
    pub fn query(&self, mu: Partition, b: u64) -> Option<HurwitzQuery> {
        let total = mu.size() as i64 - (b * self.k as u64) as i64;
        if total <= 0 || total % self.q as i64 != 0 {
            return None;
        }
        let d = (total / self.q as i64) as usize;
        let nu = Partition::new(vec![self.q; d]).ok()?;
        Some(HurwitzQuery::new(
            mu,
            nu,
            InsertionList::uniform(self.k as i64, self.r, b as usize),
            true,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants() {
        let p = OrbifoldParams::new(2, 4, 1).unwrap();
        assert_eq!(p.a(), BigRational::new(1.into(), 2.into()));
        assert_eq!(p.b_step(), 5);
        assert_eq!(p.one_part_branch(11), Some(2));
        assert_eq!(p.one_part_branch(10), None);
        assert_eq!(p.two_part_branch(3, 7), Some(2));
        assert!(OrbifoldParams::new(0, 2, 1).is_err());
    }

    #[test]
    fn orbifold_query() {
        let p = OrbifoldParams::new(1, 2, 1).unwrap();
        let q = p.query("3".parse().unwrap(), 1).unwrap();
        assert_eq!(q.nu.parts(), &[1, 1]);
        assert_eq!(q.insertions.len(), 1);
        assert!(q.connected);
        assert_eq!(q.genus(), Some(0));
    }
}
