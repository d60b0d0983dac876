//! Passing between disconnected and connected numbers by inclusion–exclusion
//! over set partitions of the labels `μ-parts ⊔ ν-parts ⊔ insertions`.

use std::collections::HashMap;

use num::{BigRational, One, Zero};

use crate::exactmath::rational::factorial_rat;
use crate::exactmath::{set_partitions, Partition};
use crate::query::{HurwitzQuery, InsertionList};

/// The sub-query carried by each block of a set partition of the labels.
fn block_queries(q: &HurwitzQuery, rgs: &[usize]) -> Vec<HurwitzQuery> {
    let nblocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
    let lm = q.mu.len();
    let ln = q.nu.len();
    let mut mus = vec![Vec::new(); nblocks];
    let mut nus = vec![Vec::new(); nblocks];
    let mut ins = vec![Vec::new(); nblocks];
    for (label, &b) in rgs.iter().enumerate() {
        if label < lm {
            mus[b].push(q.mu.parts()[label]);
        } else if label < lm + ln {
            nus[b].push(q.nu.parts()[label - lm]);
        } else {
            ins[b].push(q.insertions.0[label - lm - ln]);
        }
    }
    (0..nblocks)
        .map(|b| {
            HurwitzQuery::new(
                Partition::new(std::mem::take(&mut mus[b])).expect("positive parts"),
                Partition::new(std::mem::take(&mut nus[b])).expect("positive parts"),
                InsertionList::new(std::mem::take(&mut ins[b])),
                false,
            )
        })
        .collect()
}

fn label_count(q: &HurwitzQuery) -> usize {
    q.mu.len() + q.nu.len() + q.insertions.len()
}

/// Product over blocks, with inadmissible blocks short-circuiting to zero.
fn block_product<F>(
    blocks: &[HurwitzQuery],
    memo: &mut HashMap<HurwitzQuery, BigRational>,
    engine: &mut F,
) -> BigRational
where
    F: FnMut(&HurwitzQuery) -> BigRational,
{
    if blocks.iter().any(|b| !b.is_admissible()) {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for b in blocks {
        let v = match memo.get(b) {
            Some(v) => v.clone(),
            None => {
                let v = engine(b);
                memo.insert(b.clone(), v.clone());
                v
            }
        };
        if v.is_zero() {
            return v;
        }
        acc *= v;
    }
    acc
}

/// `connected(L) = Σ_P (−1)^{|P|−1} (|P|−1)! ∏_{B ∈ P} disconnected(B)`.
///
/// `disconnected` is called on block queries with `connected = false`.
pub fn connected_from_disconnected<F>(q: &HurwitzQuery, mut disconnected: F) -> BigRational
where
    F: FnMut(&HurwitzQuery) -> BigRational,
{
    if !q.is_admissible() {
        return BigRational::zero();
    }
    let mut memo = HashMap::new();
    let mut total = BigRational::zero();
    for rgs in set_partitions(label_count(q)) {
        let blocks = block_queries(q, &rgs);
        if blocks.is_empty() {
            continue;
        }
        let prod = block_product(&blocks, &mut memo, &mut disconnected);
        if prod.is_zero() {
            continue;
        }
        let nb = blocks.len() as u64;
        let w = factorial_rat(nb - 1);
        if nb % 2 == 1 {
            total += w * prod;
        } else {
            total -= w * prod;
        }
    }
    total
}

/// `disconnected(L) = Σ_P ∏_{B ∈ P} connected(B)`.
pub fn disconnected_from_connected<F>(q: &HurwitzQuery, mut connected: F) -> BigRational
where
    F: FnMut(&HurwitzQuery) -> BigRational,
{
    if !q.is_admissible() {
        return BigRational::zero();
    }
    let mut memo = HashMap::new();
    let mut total = BigRational::zero();
    for rgs in set_partitions(label_count(q)) {
        let blocks = block_queries(q, &rgs);
        total += block_product(&blocks, &mut memo, &mut connected);
    }
    total
}
