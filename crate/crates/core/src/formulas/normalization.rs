use num::BigRational;

use crate::exactmath::rational::factorial_rat;
use crate::query::HurwitzQuery;

/// Factors between `lh`, the connected value `h` of the same query, the
/// unnormalized vacuum expectation, and the free-energy coefficient.
///
/// * `h = lh · d!` where `d! = |Aut ν|` for `ν = (q^d)`.
/// * `⟨…⟩ = h · ∏μ ∏ν`.
/// * `W` coefficient `= lh / b!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub b: u64,
    pub d: u64,
    pub b_factorial: BigRational,
    pub d_factorial: BigRational,
    pub mu_nu_product: BigRational,
}

impl Normalization {
    pub fn for_query(q: &HurwitzQuery) -> Self {
        let b = q.insertions.len() as u64;
        let d = q.nu.len() as u64;
        let prod = q.mu.product() * q.nu.product();
        Normalization {
            b,
            d,
            b_factorial: factorial_rat(b),
            d_factorial: factorial_rat(d),
            mu_nu_product: BigRational::from_integer(prod),
        }
    }

    pub fn lh_to_connected(&self, lh: &BigRational) -> BigRational {
        lh * &self.d_factorial
    }

    pub fn connected_to_lh(&self, h: &BigRational) -> BigRational {
        h / &self.d_factorial
    }

    pub fn connected_to_vev(&self, h: &BigRational) -> BigRational {
        h * &self.mu_nu_product
    }

    pub fn lh_to_free_energy(&self, lh: &BigRational) -> BigRational {
        lh / &self.b_factorial
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;
    use crate::exactmath::Partition;
    use crate::formulas::{one_part_closed, two_part_closed, OrbifoldParams};
    use crate::tropical::hurwitz_tropical;

    #[test]
    fn tropical_matches_closed_forms() {
        let p = OrbifoldParams::new(1, 2, 1).unwrap();
        for m in [1u64, 3, 5] {
            let b = p.one_part_branch(m).unwrap();
            let q = p.query(Partition::new(vec![m as u32]).unwrap(), b).unwrap();
            let n = Normalization::for_query(&q);
            assert_eq!(n.connected_to_lh(&hurwitz_tropical(&q)), one_part_closed(&p, m));
        }
        for (l, m) in [(1u64, 1u64), (2, 2), (1, 3), (3, 3)] {
            let b = p.two_part_branch(l, m).unwrap();
            let q = p.query(Partition::new(vec![l as u32, m as u32]).unwrap(), b).unwrap();
            let n = Normalization::for_query(&q);
            assert_eq!(n.connected_to_lh(&hurwitz_tropical(&q)), two_part_closed(&p, l, m), "{l},{m}");
        }
    }

    #[test]
    fn factors() {
        let p = OrbifoldParams::new(1, 2, 1).unwrap();
        let q = p.query(Partition::new(vec![3]).unwrap(), 1).unwrap();
        let n = Normalization::for_query(&q);
        assert_eq!(n.d, 2);
        assert_eq!(n.lh_to_connected(&rat(1, 2)), rat(1, 1));
        assert_eq!(n.connected_to_vev(&rat(1, 1)), rat(3, 1));
        assert_eq!(n.lh_to_free_energy(&rat(1, 2)), rat(1, 2));
    }
}
