use std::collections::{BTreeMap, HashMap};

use num::{BigRational, Zero};

use super::operator::{ExpandOptions, FOperator};
use super::state::FockState;
use crate::exactmath::Partition;
use crate::query::{HurwitzQuery, Insertion, InsertionList};

/// Vacuum expectations `⟨∏J_μ ∏F_{r_i}^{k_i}/r_i ∏J_{-ν}⟩ / (∏μ∏ν)`.
///
/// Holds one cached operator per `(k, r)`; confine an engine to one worker.
#[derive(Debug, Default)]
pub struct FockEngine {
    opts: ExpandOptions,
    ops: HashMap<(i64, u32), FOperator>,
}

impl FockEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_options(opts: ExpandOptions) -> Self {
        FockEngine {
            opts,
            ops: HashMap::new(),
        }
    }

    /// `(F_r^k / r) |state⟩`.
    pub fn apply(&mut self, state: &FockState, ins: Insertion) -> FockState {
        let opts = self.opts;
        self.ops
            .entry((ins.k, ins.r))
            .or_insert_with(|| FOperator::with_options(ins.k, ins.r, opts))
            .apply(state)
    }

    /// `∏ F/r · p_ν`, rightmost insertion first.
    pub fn evolve(&mut self, nu: &Partition, insertions: &InsertionList) -> FockState {
        let mut state = FockState::from_creators(nu);
        for &ins in insertions.iter().rev() {
            if state.is_zero() {
                break;
            }
            state = self.apply(&state, ins);
        }
        state
    }

    pub fn disconnected(&mut self, q: &HurwitzQuery) -> BigRational {
        if !q.is_admissible() {
            return BigRational::zero();
        }
        let state = self.evolve(&q.nu, &q.insertions);
        state.pair_with(&q.mu) / BigRational::from_integer(q.mu.product() * q.nu.product())
    }

    /// Disconnected values for every `μ` reached from one `ν`, keyed by `μ`.
    /// Partitions missing from the map have value zero.
    pub fn disconnected_all_mu(
        &mut self,
        nu: &Partition,
        insertions: &InsertionList,
    ) -> BTreeMap<Partition, BigRational> {
        let state = self.evolve(nu, insertions);
        values_from_state(state, nu)
    }
}

/// Converts an evolved state into values `[p_μ] · |Aut μ| / ∏ν`.
pub fn values_from_state(state: FockState, nu: &Partition) -> BTreeMap<Partition, BigRational> {
    let nu_prod = BigRational::from_integer(nu.product());
    state
        .into_terms()
        .into_iter()
        .map(|(mu, c)| {
            let v = c * mu.aut_order() / &nu_prod;
            (mu, v)
        })
        .collect()
}

/// Disconnected value of `q` (its `connected` flag is ignored).
pub fn hurwitz_disconnected_fock(q: &HurwitzQuery) -> BigRational {
    FockEngine::new().disconnected(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};

    fn q(mu: &str, nu: &str, ins: &str) -> HurwitzQuery {
        HurwitzQuery::new(mu.parse().unwrap(), nu.parse().unwrap(), ins.parse().unwrap(), false)
    }

    #[test]
    fn examples() {
        for m in 1..6i64 {
            let s = m.to_string();
            assert_eq!(hurwitz_disconnected_fock(&q(&s, &s, "")), rat(1, m));
        }
        assert_eq!(hurwitz_disconnected_fock(&q("2", "1,1", "0:2")), int(1));
        assert_eq!(hurwitz_disconnected_fock(&q("3", "5", "1:2")), int(0));
        assert_eq!(hurwitz_disconnected_fock(&q("1,1", "1,1", "")), int(2));
    }

    #[test]
    fn one_part_genus_zero() {
        // μ = (3), ν = (1,1), one (1,2) insertion
        assert_eq!(hurwitz_disconnected_fock(&q("3", "1,1", "1:2")), int(1));
    }

    #[test]
    fn all_mu_agrees_with_single_queries() {
        let nu: Partition = "2,1".parse().unwrap();
        let ins: InsertionList = "1:2,0:3".parse().unwrap();
        let mut e = FockEngine::new();
        let all = e.disconnected_all_mu(&nu, &ins);
        for mu in crate::exactmath::partitions_of(4) {
            let single = e.disconnected(&HurwitzQuery::new(mu.clone(), nu.clone(), ins.clone(), false));
            assert_eq!(all.get(&mu).cloned().unwrap_or_else(BigRational::zero), single);
        }
    }
}
