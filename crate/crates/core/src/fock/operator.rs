//! The completed-cycle operators `F_r^k` in normal-ordered form.
//!
//! `F_r^k = r! Σ_g Σ_x m_g(x⁺, x⁻)/|Aut x| · ∏_{x⁻} J_{-w} ∏_{x⁺} J_{w}`
//! with `Σx⁺ − Σx⁻ = −k` and `|x⁺| + |x⁻| = r + 1 − 2g`. Creators stand to
//! the left of annihilators, so applying `F_r^k` raises degree by `k`.

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Zero};

use super::state::FockState;
use crate::exactmath::rational::{factorial, factorial_rat};
use crate::exactmath::{partitions_with_len, sub_multisets, vertex_multiplicity, Partition};

/// A term of the expansion: creator weights `x⁻`, annihilator weights
/// `x⁺` and the genus it is charged to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedTuple {
    negatives: Partition,
    positives: Partition,
    genus: u32,
}

impl SignedTuple {
    /// Checks `Σ⁺ − Σ⁻ = −k` and the length `r + 1 − 2g`.
    pub fn new(negatives: Partition, positives: Partition, genus: u32, k: i64, r: u32) -> Option<Self> {
        let balance = positives.size() as i64 - negatives.size() as i64;
        let len = (negatives.len() + positives.len()) as i64;
        if balance != -k || len != r as i64 + 1 - 2 * genus as i64 {
            return None;
        }
        Some(SignedTuple {
            negatives,
            positives,
            genus,
        })
    }

    pub fn negatives(&self) -> &Partition {
        &self.negatives
    }

    pub fn positives(&self) -> &Partition {
        &self.positives
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.negatives.len() + self.positives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn one_sided(&self) -> bool {
        self.negatives.is_empty() || self.positives.is_empty()
    }

    /// Applies `∏ J_{-x⁻} ∏ J_{x⁺}` (annihilators first).
    pub fn apply(&self, state: &FockState) -> FockState {
        let mut s = state.clone();
        for &w in self.positives.parts() {
            s = s.apply_j(w as i64).expect("nonzero index");
        }
        for &w in self.negatives.parts() {
            s = s.apply_j(-(w as i64)).expect("nonzero index");
        }
        s
    }
}

/// Which tuples enter the expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpandOptions {
    /// Admit tuples with no creators or no annihilators, including the
    /// empty tuple.
    pub one_sided: bool,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions { one_sided: true }
    }
}

/// `c(x) = r! m_g(x⁺, x⁻) / |Aut x|`.
pub fn tuple_coefficient(t: &SignedTuple, r: u32) -> BigRational {
    let aut = t.negatives.aut_order() * t.positives.aut_order();
    factorial_rat(r as u64) * vertex_multiplicity(t.genus, t.positives.parts(), t.negatives.parts())
        / BigRational::from_integer(aut)
}

/// All tuples of `F_r^k` whose annihilator weight is at most `cap`, with
/// their coefficients. Ordered by genus, then annihilator count, then the
/// descending order of the partition streams.
pub fn expand_f(k: i64, r: u32, cap: u64) -> Vec<(SignedTuple, BigRational)> {
    expand_f_with(k, r, cap, ExpandOptions::default())
}

pub fn expand_f_with(k: i64, r: u32, cap: u64, opts: ExpandOptions) -> Vec<(SignedTuple, BigRational)> {
    let mut out = Vec::new();
    for g in 0..=r.div_ceil(2) {
        let n = (r + 1 - 2 * g) as usize;
        for a in 0..=n {
            for sp in 0..=cap {
                let sn = sp as i64 + k;
                if sn < 0 {
                    continue;
                }
                for pos in partitions_with_len(sp as u32, a) {
                    for neg in partitions_with_len(sn as u32, n - a) {
                        let t = SignedTuple::new(neg, pos.clone(), g, k, r).expect("balanced");
                        if !opts.one_sided && t.one_sided() {
                            continue;
                        }
                        let c = tuple_coefficient(&t, r);
                        out.push((t, c));
                    }
                }
            }
        }
    }
    out
}

/// Cached action of one operator `F_r^k`, optionally divided by `r`.
///
/// Keyed by the annihilated multiset, the cache stores every creator
/// multiset it can be completed with and the scalar factor.
#[derive(Debug)]
pub struct FOperator {
    k: i64,
    r: u32,
    opts: ExpandOptions,
    prefactor: BigRational,
    cache: HashMap<Partition, Vec<(Partition, BigRational)>>,
}

impl FOperator {
    /// `F_r^k / r`.
    pub fn new(k: i64, r: u32) -> Self {
        Self::with_options(k, r, ExpandOptions::default())
    }

    pub fn with_options(k: i64, r: u32, opts: ExpandOptions) -> Self {
        assert!(r >= 1, "F_r^k / r needs r >= 1");
        FOperator {
            k,
            r,
            opts,
            prefactor: factorial_rat(r as u64 - 1),
            cache: HashMap::new(),
        }
    }

    /// `F_r^k` without the division by `r`; `r = 0` allowed.
    pub fn raw(k: i64, r: u32) -> Self {
        FOperator {
            k,
            r,
            opts: ExpandOptions::default(),
            prefactor: factorial_rat(r as u64),
            cache: HashMap::new(),
        }
    }

    pub fn leak(&self) -> i64 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    fn ensure_completions(&mut self, pos: &Partition) {
        if !self.cache.contains_key(pos) {
            let mut list = Vec::new();
            let sn = pos.size() as i64 + self.k;
            if sn >= 0 {
                for g in 0..=self.r.div_ceil(2) {
                    let n = (self.r + 1 - 2 * g) as usize;
                    if pos.len() > n {
                        continue;
                    }
                    for neg in partitions_with_len(sn as u32, n - pos.len()) {
                        if !self.opts.one_sided && (neg.is_empty() || pos.is_empty()) {
                            continue;
                        }
                        let m = vertex_multiplicity(g, pos.parts(), neg.parts());
                        if m.is_zero() {
                            continue;
                        }
                        let aut = pos.aut_order() * neg.aut_order();
                        let c = &self.prefactor * m / BigRational::from_integer(aut);
                        list.push((neg, c));
                    }
                }
            }
            self.cache.insert(pos.clone(), list);
        }
    }

    pub fn apply(&mut self, state: &FockState) -> FockState {
        let mut out = FockState::zero();
        for (lambda, c) in state.terms() {
            for pos in sub_multisets(lambda) {
                let ann = annihilation_factor(lambda, &pos);
                let rest = lambda.remove(&pos).expect("sub-multiset");
                let base = c * BigRational::from_integer(ann);
                self.ensure_completions(&pos);
                for (neg, coeff) in &self.cache[&pos] {
                    debug_assert_eq!(
                        rest.union(neg).size() as i64,
                        lambda.size() as i64 + self.k
                    );
                    out.add_term(rest.union(neg), &base * coeff);
                }
            }
        }
        out
    }
}

/// `∏_{w ∈ pos} (w ∂_w)` on `p_λ`: `∏_w w^{a_w} c_w! / (c_w − a_w)!`.
fn annihilation_factor(lambda: &Partition, pos: &Partition) -> BigInt {
    let lm = lambda.multiplicities();
    let mut acc = BigInt::one();
    for (w, a) in pos.multiplicities() {
        let c = lm.iter().find(|&&(v, _)| v == w).map(|&(_, c)| c).unwrap_or(0);
        acc *= BigInt::from(w).pow(a as u32) * factorial(c as u64) / factorial((c - a) as u64);
    }
    acc
}

/// `F_r^k / r` applied once, without caching across calls.
pub fn apply_f(state: &FockState, k: i64, r: u32) -> FockState {
    FOperator::new(k, r).apply(state)
}
