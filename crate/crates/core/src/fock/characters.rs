//! Symmetric-group characters and shifted power sums, used as an
//! independent check of the Fock engine when every leak is zero.

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::{int, pow_rat, rat, zeta_at_negative};
use crate::exactmath::{partitions_of, Partition};

/// Murnaghan–Nakayama evaluation with a memo over (shape, remaining cycle
/// type).
#[derive(Debug, Default)]
pub struct CharacterTable {
    memo: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ_λ(μ)`; zero when the sizes differ.
    pub fn chi(&mut self, lambda: &Partition, mu: &Partition) -> BigInt {
        if lambda.size() != mu.size() {
            return BigInt::zero();
        }
        self.chi_rec(lambda.parts().to_vec(), mu.parts())
    }

    fn chi_rec(&mut self, lambda: Vec<u32>, mu: &[u32]) -> BigInt {
        if mu.is_empty() {
            return if lambda.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let key = (lambda.clone(), mu.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let m = mu[0];
        let len = lambda.len() as u32;
        let beta: Vec<u32> = lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| l + len - 1 - i as u32)
            .collect();
        let mut total = BigInt::zero();
        for (idx, &b) in beta.iter().enumerate() {
            if b < m || beta.contains(&(b - m)) {
                continue;
            }
            let target = b - m;
            let between = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut next = beta.clone();
            next[idx] = target;
            next.sort_unstable_by(|x, y| y.cmp(x));
            let shape: Vec<u32> = next
                .iter()
                .enumerate()
                .map(|(i, &c)| c - (len - 1 - i as u32))
                .filter(|&p| p > 0)
                .collect();
            let v = self.chi_rec(shape, &mu[1..]);
            if between % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `p_k(λ) = Σ_i [(λ_i − i + ½)^k − (−i + ½)^k] + (1 − 2^{−k}) ζ(−k)`.
pub fn shifted_power_sum(k: u32, lambda: &Partition) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, &l) in lambda.parts().iter().enumerate() {
        let i = i as i64 + 1;
        let a = int(l as i64 - i) + rat(1, 2);
        let b = int(-i) + rat(1, 2);
        acc += pow_rat(&a, k as i64) - pow_rat(&b, k as i64);
    }
    let two_pow = pow_rat(&int(2), -(k as i64));
    acc + (BigRational::one() - two_pow) * zeta_at_negative(k)
}

/// `(1/∏μ∏ν) Σ_λ χ_λ(μ) χ_λ(ν) ∏_i p_{r_i}(λ)/r_i`, the value of the
/// zero-leak numbers in the normalization used throughout this crate.
pub fn character_oracle_k0(mu: &Partition, nu: &Partition, r_list: &[u32]) -> Result<BigRational> {
    CharacterOracle::new().value(mu, nu, r_list)
}

/// [`character_oracle_k0`] with characters and `p_r(λ)/r` kept between
/// calls.
#[derive(Debug, Default)]
pub struct CharacterOracle {
    table: CharacterTable,
    eigen: HashMap<(u32, Partition), BigRational>,
}

impl CharacterOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, mu: &Partition, nu: &Partition, r_list: &[u32]) -> Result<BigRational> {
        if mu.size() != nu.size() {
            return Err(Error::InvalidInput(format!(
                "character oracle needs |mu| = |nu|, got {} and {}",
                mu.size(),
                nu.size()
            )));
        }
        if r_list.contains(&0) {
            return Err(Error::InvalidInput("completed-cycle orders must be positive".into()));
        }
        let mut total = BigRational::zero();
        for lambda in partitions_of(mu.size() as u32) {
            let a = self.table.chi(&lambda, mu);
            if a.is_zero() {
                continue;
            }
            let b = self.table.chi(&lambda, nu);
            if b.is_zero() {
                continue;
            }
            let mut term = BigRational::from_integer(a * b);
            for &r in r_list {
                term *= &*self
                    .eigen
                    .entry((r, lambda.clone()))
                    .or_insert_with(|| shifted_power_sum(r, &lambda) / int(r as i64));
            }
            total += term;
        }
        Ok(total / BigRational::from_integer(mu.product() * nu.product()))
    }
}

/// Factor `∏ r_i/(r_i − 1)!` taking this crate's zero-leak values to the
/// normalization with `p_{r}/(r−1)!` per insertion.
pub fn completed_cycle_conversion(r_list: &[u32]) -> BigRational {
    r_list.iter().fold(BigRational::one(), |acc, &r| {
        acc * int(r as i64) / crate::exactmath::rational::factorial_rat(r as u64 - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::factorial;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_characters() {
        let mut t = CharacterTable::new();
        assert_eq!(t.chi(&p("2"), &p("2")), BigInt::from(1));
        assert_eq!(t.chi(&p("1,1"), &p("2")), BigInt::from(-1));
        assert_eq!(t.chi(&p("2,1"), &p("3")), BigInt::from(-1));
        assert_eq!(t.chi(&p("2,1"), &p("1,1,1")), BigInt::from(2));
        assert_eq!(t.chi(&p("2,2"), &p("2,2")), BigInt::from(2));
        assert_eq!(t.chi(&p("3,1"), &p("2,1,1")), BigInt::from(1));
    }

    #[test]
    fn column_orthogonality() {
        // Σ_λ χ_λ(μ)² = z_μ
        let mut t = CharacterTable::new();
        for n in 1..=7 {
            for mu in partitions_of(n) {
                let s: BigInt = partitions_of(n).map(|l| t.chi(&l, &mu).pow(2)).sum();
                assert_eq!(s, mu.product() * mu.aut_order());
            }
            let dims: BigInt = partitions_of(n)
                .map(|l| t.chi(&l, &Partition::new(vec![1; n as usize]).unwrap()).pow(2))
                .sum();
            assert_eq!(dims, factorial(n as u64));
        }
    }

    #[test]
    fn shifted_power_sums() {
        assert_eq!(shifted_power_sum(2, &p("2")), int(2));
        assert_eq!(shifted_power_sum(2, &p("1,1")), int(-2));
        assert_eq!(shifted_power_sum(1, &p("3,1")), int(4) - rat(1, 24));
        assert_eq!(shifted_power_sum(1, &p("")), rat(-1, 24));
        assert_eq!(shifted_power_sum(3, &p("")), rat(7, 960));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(character_oracle_k0(&p("2"), &p("1,1"), &[2]).unwrap(), int(1));
        assert_eq!(character_oracle_k0(&p("1"), &p("1"), &[]).unwrap(), int(1));
        assert!(character_oracle_k0(&p("2"), &p("1"), &[]).is_err());
        assert_eq!(completed_cycle_conversion(&[2, 3]), int(2) * rat(3, 2));
    }
}
