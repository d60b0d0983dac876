use std::collections::HashMap;

use num::{BigInt, BigRational, One, Zero};

use super::OrbifoldParams;
use crate::exactmath::rational::{binom_general, factorial_rat, int, multinomial, pow_rat};
use crate::exactmath::weak_compositions;

/// `b! / (m (b(r−1) + 1)) · binom(m/A, b) · A^b` when `b = (m − q)/B` is a
/// non-negative integer, else 0.
pub fn one_part_closed(p: &OrbifoldParams, m: u64) -> BigRational {
    let Some(b) = p.one_part_branch(m) else {
        return BigRational::zero();
    };
    let a = p.a();
    let top = BigRational::from_integer(BigInt::from(m)) / &a;
    factorial_rat(b) / int((m * (b * (p.r as u64 - 1) + 1)) as i64)
        * binom_general(&top, b)
        * pow_rat(&a, b as i64)
}

/// Memoized one-part recursion for one parameter triple, keyed by `b`.
#[derive(Debug)]
pub struct OnePartTable {
    p: OrbifoldParams,
    by_branch: HashMap<u64, BigRational>,
}

impl OnePartTable {
    pub fn new(p: OrbifoldParams) -> Self {
        OnePartTable {
            p,
            by_branch: HashMap::new(),
        }
    }

    pub fn params(&self) -> &OrbifoldParams {
        &self.p
    }

    /// `lh(m)`, zero off the branch lattice.
    pub fn value(&mut self, m: u64) -> BigRational {
        match self.p.one_part_branch(m) {
            Some(b) => self.at_branch(b),
            None => BigRational::zero(),
        }
    }

    /// `m = B b + q`.
    pub fn m_of(&self, b: u64) -> u64 {
        self.p.b_step() * b + self.p.q as u64
    }

    /// `lh` at branch count `b`:
    /// `(1/r) Σ_{b_1+…+b_r = b−1} multinomial · ∏ m_j lh(m_j)`.
    pub fn at_branch(&mut self, b: u64) -> BigRational {
        if let Some(v) = self.by_branch.get(&b) {
            return v.clone();
        }
        let v = if b == 0 {
            BigRational::new(BigInt::one(), BigInt::from(self.p.q))
        } else {
            let mut total = BigRational::zero();
            for parts in weak_compositions((b - 1) as u32, self.p.r as usize) {
                let parts: Vec<u64> = parts.into_iter().map(u64::from).collect();
                let mut term = BigRational::from_integer(multinomial(&parts));
                for &bj in &parts {
                    let mj = self.m_of(bj);
                    term *= int(mj as i64) * self.at_branch(bj);
                }
                total += term;
            }
            total / int(self.p.r as i64)
        };
        self.by_branch.insert(b, v.clone());
        v
    }
}

pub fn one_part_recursion(p: &OrbifoldParams, m: u64) -> BigRational {
    OnePartTable::new(*p).value(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    fn p121() -> OrbifoldParams {
        OrbifoldParams::new(1, 2, 1).unwrap()
    }

    #[test]
    fn closed_examples() {
        let p = p121();
        assert_eq!(one_part_closed(&p, 1), int(1));
        assert_eq!(one_part_closed(&p, 3), rat(1, 2));
        assert_eq!(one_part_closed(&p, 5), rat(3, 2));
        assert_eq!(one_part_closed(&p, 4), int(0));
        for q in 1..4 {
            let p = OrbifoldParams::new(2, 3, q).unwrap();
            assert_eq!(one_part_closed(&p, q as u64), rat(1, q as i64));
        }
    }

    #[test]
    fn recursion_examples() {
        let p = p121();
        assert_eq!(one_part_recursion(&p, 1), int(1));
        assert_eq!(one_part_recursion(&p, 3), rat(1, 2));
        assert_eq!(one_part_recursion(&p, 5), rat(3, 2));
    }

    #[test]
    fn closed_equals_recursion() {
        for k in 1..=2 {
            for r in 2..=3 {
                for q in 1..=2 {
                    let p = OrbifoldParams::new(k, r, q).unwrap();
                    let mut t = OnePartTable::new(p);
                    for m in 1..=25 {
                        assert_eq!(one_part_closed(&p, m), t.value(m), "{p:?} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_pattern() {
        let p = OrbifoldParams::new(2, 3, 2).unwrap();
        for m in 1..40u64 {
            let on_lattice = p.one_part_branch(m).is_some();
            assert_eq!(!one_part_closed(&p, m).is_zero(), on_lattice, "m={m}");
        }
    }
}
