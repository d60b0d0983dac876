//! Piecewise polynomiality and wall crossing on the leaky resonance
//! arrangement.

mod linalg;
mod poly;
mod wall_crossing;

pub use linalg::solve;
pub use poly::{
    cross_wall_mismatch, degree_bound, fit_chamber_polynomial, fit_values, lattice_walk, monomials,
    verify_polynomiality, verify_wall_failure, Chart, ChamberPoly, PolynomialityCase,
};
pub use wall_crossing::{
    chamber_points, verify_wall_crossing, wall_crossing_rhs, wall_crossing_terms, MiddleFactor,
    SignRule, WallCrossingConvention, WallCrossingTerm,
};

use std::collections::HashMap;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Partition;
use crate::query::{HurwitzQuery, Insertion, InsertionList};
use crate::tropical::hurwitz_tropical;

/// A lattice point `(x, k)` of `Σx_i = Σk_j`. Positive `x_i` are parts of
/// `μ`, negative ones are parts of `−ν`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResonancePoint {
    pub x: Vec<i64>,
    pub k: Vec<i64>,
}

impl ResonancePoint {
    pub fn new(x: Vec<i64>, k: Vec<i64>) -> Result<Self> {
        if x.iter().sum::<i64>() != k.iter().sum::<i64>() {
            return Err(Error::InvalidInput(format!(
                "point {x:?}, {k:?} is off the hyperplane Σx = Σk"
            )));
        }
        Ok(ResonancePoint { x, k })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn s(&self) -> usize {
        self.k.len()
    }

    /// `(μ, ν)` from the signs of `x`; zero entries are rejected.
    pub fn profiles(&self) -> Result<(Partition, Partition)> {
        if self.x.contains(&0) {
            return Err(Error::InvalidInput("x has a zero entry".into()));
        }
        let mu = self.x.iter().filter(|&&v| v > 0).map(|&v| v as u32).collect();
        let nu = self.x.iter().filter(|&&v| v < 0).map(|&v| (-v) as u32).collect();
        Ok((Partition::new(mu)?, Partition::new(nu)?))
    }
}

/// `W_IJ : Σ_{i∈I} x_i = Σ_{j∈J} k_j` with 0-based index sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wall {
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
}

impl Wall {
    /// `Σ_{I} x − Σ_{J} k`.
    pub fn form(&self, p: &ResonancePoint) -> i64 {
        self.i_set.iter().map(|&i| p.x[i]).sum::<i64>() - self.j_set.iter().map(|&j| p.k[j]).sum::<i64>()
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// All walls of the arrangement in `H_{n,s}`, one per complementary pair.
pub fn walls(n: usize, s: usize) -> Vec<Wall> {
    let mut out = Vec::new();
    let total = n + s;
    for i_set in subsets(n) {
        for j_set in subsets(s) {
            let i_set = i_set.clone();
            let size = i_set.len() + j_set.len();
            if size == 0 || size == total {
                continue;
            }
            // keep the representative whose complement is larger in the
            // (|I|+|J|, I, J) order
            let ic: Vec<usize> = (0..n).filter(|i| !i_set.contains(i)).collect();
            let jc: Vec<usize> = (0..s).filter(|j| !j_set.contains(j)).collect();
            if (size, &i_set, &j_set) > (total - size, &ic, &jc) {
                continue;
            }
            out.push(Wall { i_set, j_set });
        }
    }
    out
}

/// Walls of the uniform-leak slice `k_1 = … = k_s`: `Σ_{I} x = j k`,
/// represented with `J = {0, …, j−1}`.
pub fn uniform_walls(n: usize, s: usize) -> Vec<Wall> {
    let mut out = Vec::new();
    for i_set in subsets(n) {
        for j in 0..=s {
            let i_set = i_set.clone();
            if (i_set.is_empty() && j == 0) || (i_set.len() == n && j == s) {
                continue;
            }
            let ic: Vec<usize> = (0..n).filter(|i| !i_set.contains(i)).collect();
            if (i_set.len(), j, &i_set) > (n - i_set.len(), s - j, &ic) {
                continue;
            }
            out.push(Wall {
                i_set,
                j_set: (0..j).collect(),
            });
        }
    }
    out
}

/// Signs of all wall forms; [`Error::OnWall`] if one vanishes.
pub fn chamber_signature(p: &ResonancePoint, walls: &[Wall]) -> Result<Vec<i8>> {
    walls
        .iter()
        .map(|w| match w.form(p).signum() {
            0 => Err(Error::OnWall),
            s => Ok(s as i8),
        })
        .collect()
}

/// The connected query at `p` with insertions `(k_j, r_j)`.
pub fn query_at(g: u32, r_list: &[u32], p: &ResonancePoint) -> Result<HurwitzQuery> {
    if r_list.len() != p.s() {
        return Err(Error::InvalidInput(format!(
            "{} orders for {} leaks",
            r_list.len(),
            p.s()
        )));
    }
    let lhs: i64 = r_list.iter().map(|&r| r as i64 - 1).sum();
    if lhs != 2 * g as i64 - 2 + p.n() as i64 {
        return Err(Error::InvalidInput(format!(
            "Σ(r−1) = {lhs} does not match 2g−2+n for g = {g}, n = {}",
            p.n()
        )));
    }
    let (mu, nu) = p.profiles()?;
    let ins = p
        .k
        .iter()
        .zip(r_list)
        .map(|(&k, &r)| Insertion { k, r })
        .collect();
    Ok(HurwitzQuery::new(mu, nu, InsertionList::new(ins), true))
}

pub fn hurwitz_at(g: u32, r_list: &[u32], p: &ResonancePoint) -> Result<BigRational> {
    Ok(hurwitz_tropical(&query_at(g, r_list, p)?))
}

/// Memo of connected tropical values keyed by query.
#[derive(Debug, Default)]
pub struct HurwitzCache {
    values: HashMap<HurwitzQuery, BigRational>,
}

impl HurwitzCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, q: &HurwitzQuery) -> BigRational {
        if let Some(v) = self.values.get(q) {
            return v.clone();
        }
        let v = hurwitz_tropical(q);
        self.values.insert(q.clone(), v.clone());
        v
    }

    pub fn at(&mut self, g: u32, r_list: &[u32], p: &ResonancePoint) -> Result<BigRational> {
        let q = query_at(g, r_list, p)?;
        Ok(self.get(&q))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
