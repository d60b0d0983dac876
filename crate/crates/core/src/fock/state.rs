use std::collections::BTreeMap;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Partition;

/// A finite combination of power-sum monomials `p_λ = ∏ p_{λ_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockState {
    terms: BTreeMap<Partition, BigRational>,
}

impl FockState {
    pub fn zero() -> Self {
        FockState::default()
    }

    /// The vacuum `|0⟩ = p_∅`.
    pub fn vacuum() -> Self {
        Self::monomial(Partition::empty(), BigRational::from_integer(1.into()))
    }

    pub fn monomial(lambda: Partition, c: BigRational) -> Self {
        let mut s = FockState::zero();
        s.add_term(lambda, c);
        s
    }

    /// `∏_j J_{-ν_j} |0⟩ = p_ν`.
    pub fn from_creators(nu: &Partition) -> Self {
        Self::monomial(nu.clone(), BigRational::from_integer(1.into()))
    }

    pub fn add_term(&mut self, lambda: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, BigRational> {
        self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree `|λ|` in the support.
    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().map(Partition::size).max()
    }

    /// `J_m`: multiplication by `p_{|m|}` for `m < 0`, `m ∂/∂p_m` for `m > 0`.
    pub fn apply_j(&self, m: i64) -> Result<FockState> {
        if m == 0 {
            return Err(Error::InvalidInput("J_0 is not supported".into()));
        }
        let w = m.unsigned_abs() as u32;
        let mut out = FockState::zero();
        for (lambda, c) in &self.terms {
            if m < 0 {
                out.add_term(lambda.union(&Partition::from_sorted(vec![w])), c.clone());
            } else {
                let mult = lambda.parts().iter().filter(|&&p| p == w).count();
                if mult == 0 {
                    continue;
                }
                let rest = lambda
                    .remove(&Partition::from_sorted(vec![w]))
                    .expect("part present");
                out.add_term(rest, c * BigInt::from(mult as u64 * w as u64));
            }
        }
        Ok(out)
    }

    /// `⟨0| ∏_i J_{μ_i} |self⟩ = [p_μ] · ∏μ_i · ∏_w (mult_w μ)!`.
    pub fn pair_with(&self, mu: &Partition) -> BigRational {
        self.coeff(mu) * mu.product() * mu.aut_order()
    }
}
