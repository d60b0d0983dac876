use std::collections::HashMap;

use num::{BigInt, BigRational, Zero};

use super::one_part::OnePartTable;
use super::OrbifoldParams;
use crate::exactmath::rational::{binom_general, factorial_rat, int, multinomial, pow_rat};
use crate::exactmath::compositions;

/// Closed two-part value with `A = k/r`, `B = q(r−1) + k`, `b = (l+m)/B`:
/// `(b!/(l+m)) A^{b−2} B` times `A·C(l/A−1, ⌊l/B⌋)·C(m/A−1, ⌊m/B⌋)` when
/// `l ≡ −m ≢ 0`, or `(B−A)·C(l/A−1, l/B−1)·C(m/A−1, m/B−1)` when
/// `l ≡ m ≡ 0 (mod B)`.
pub fn two_part_closed(p: &OrbifoldParams, l: u64, m: u64) -> BigRational {
    let Some(b) = p.two_part_branch(l, m) else {
        return BigRational::zero();
    };
    let a = p.a();
    let bs = p.b_step();
    let big_b = int(bs as i64);
    let top = |x: u64| BigRational::from_integer(BigInt::from(x)) / &a - int(1);
    let case = if l.is_multiple_of(bs) {
        (&big_b - &a) * binom_general(&top(l), l / bs - 1) * binom_general(&top(m), m / bs - 1)
    } else {
        &a * binom_general(&top(l), l / bs) * binom_general(&top(m), m / bs)
    };
    factorial_rat(b) / int((l + m) as i64) * pow_rat(&a, b as i64 - 2) * big_b * case
}

/// Memoized two-part recursion for one parameter triple.
#[derive(Debug)]
pub struct TwoPartTable {
    one: OnePartTable,
    memo: HashMap<(u64, u64), BigRational>,
}

impl TwoPartTable {
    pub fn new(p: OrbifoldParams) -> Self {
        TwoPartTable {
            one: OnePartTable::new(p),
            memo: HashMap::new(),
        }
    }

    /// `b_j` of a one-part factor with part `α`, if on the lattice.
    fn one_branch(&self, alpha: u64) -> Option<u64> {
        self.one.params().one_part_branch(alpha)
    }

    /// Strand-cut sum: the first vertex splits the strand `cut`, its first
    /// outgoing strand joins the other part `keep`.
    fn cut_sum(&mut self, cut: u64, keep: u64, b: u64) -> BigRational {
        let p = *self.one.params();
        let mut total = BigRational::zero();
        if cut <= p.k as u64 {
            return total;
        }
        for alpha in compositions((cut - p.k as u64) as u32, p.r as usize) {
            let a1 = alpha[0] as u64;
            let Some(b1) = p.two_part_branch(keep, a1) else {
                continue;
            };
            let mut branches = vec![b1];
            let mut ok = true;
            for &aj in &alpha[1..] {
                match self.one_branch(aj as u64) {
                    Some(bj) => branches.push(bj),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            debug_assert_eq!(branches.iter().sum::<u64>(), b - 1);
            let mut term = BigRational::from_integer(multinomial(&branches));
            term *= int(a1 as i64) * self.value(keep, a1);
            for &aj in &alpha[1..] {
                term *= int(aj as i64) * self.one.value(aj as u64);
            }
            total += term;
        }
        total
    }

    /// Join sum: the first vertex merges both strands.
    fn join_sum(&mut self, l: u64, m: u64, b: u64) -> BigRational {
        let p = *self.one.params();
        let mut total = BigRational::zero();
        if l + m < p.k as u64 {
            return total;
        }
        for alpha in compositions((l + m - p.k as u64) as u32, p.r as usize - 1) {
            let branches: Option<Vec<u64>> = alpha.iter().map(|&a| self.one_branch(a as u64)).collect();
            let Some(branches) = branches else {
                continue;
            };
            debug_assert_eq!(branches.iter().sum::<u64>(), b - 1);
            let mut term = BigRational::from_integer(multinomial(&branches));
            for &aj in &alpha {
                term *= int(aj as i64) * self.one.value(aj as u64);
            }
            total += term;
        }
        total
    }

    pub fn value(&mut self, l: u64, m: u64) -> BigRational {
        let key = (l.max(m), l.min(m));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = match self.one.params().two_part_branch(l, m) {
            Some(b) if b >= 1 => {
                self.cut_sum(l, m, b) + self.cut_sum(m, l, b) + self.join_sum(l, m, b)
            }
            _ => BigRational::zero(),
        };
        self.memo.insert(key, v.clone());
        v
    }
}

pub fn two_part_recursion(p: &OrbifoldParams, l: u64, m: u64) -> BigRational {
    TwoPartTable::new(*p).value(l, m)
}
