use alloc::collections::{btree_map, BTreeMap};
use alloc::vec::Vec;

use super::{nearest_point, State};
use crate::character::{same_ambient, Character};
use crate::lattice::{check_subset_guard, nonempty_subsets};
use crate::rational::Q;
use crate::root_system::Weight;
use crate::{Error, Result, DEFAULT_SUBSET_GUARD};

/// The set **B**: dominant representatives of nearest points of all subsets of
/// the weight support, each with its norm `q(β)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrataIndexSet {
    pub betas: BTreeMap<Weight, Q>,
}

impl StrataIndexSet {
    pub fn contains(&self, beta: &Weight) -> bool {
        self.betas.contains_key(beta)
    }

    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }
}

pub fn kirwan_index_set(c: &Character) -> Result<StrataIndexSet> {
    kirwan_index_set_with_guard(c, DEFAULT_SUBSET_GUARD)
}

/// Enumerates every non-empty subset of the support; at most `guard` subsets.
pub fn kirwan_index_set_with_guard(c: &Character, guard: u64) -> Result<StrataIndexSet> {
    let rs = c.ambient();
    let support = c.support();
    check_subset_guard(support.len(), guard)?;
    let mut betas = BTreeMap::new();
    for subset in nonempty_subsets(support.len()) {
        let face: Vec<Weight> = subset.iter().map(|&i| support[i].clone()).collect();
        let (beta, _) = rs.dominant_representative(&nearest_point(rs, &face)?)?;
        if let btree_map::Entry::Vacant(e) = betas.entry(beta) {
            let qv = rs.norm_sq(e.key())?;
            e.insert(qv);
        }
    }
    Ok(StrataIndexSet { betas })
}

/// Index `β` of the stratum containing a point with state `s`.
pub fn stratum_of(s: &State, c: &Character) -> Result<Weight> {
    if !same_ambient(s.ambient(), c.ambient()) {
        return Err(Error::AmbientMismatch);
    }
    if s.weights().iter().any(|w| c.multiplicity(w) == 0) {
        return Err(Error::StateNotInSupport);
    }
    let rs = s.ambient();
    Ok(rs.dominant_representative(&nearest_point(rs, &s.weight_list())?)?.0)
}

#[cfg(test)]
mod tests {
    use alloc::sync::Arc;

    use super::*;
    use crate::character::{adjoint_character, standard_character};
    use crate::rational::{q, qi};
    use crate::root_system::RootSystem;

    fn arc(label: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(label).unwrap())
    }

    #[test]
    fn a1_index_sets() {
        let a1 = arc("A1");
        let b = kirwan_index_set(&standard_character(&a1).unwrap()).unwrap();
        assert_eq!(b.betas, BTreeMap::from([(Weight::from_i64(&[0]), qi(0)), (Weight::from_i64(&[1]), q(1, 2))]));
        let b = kirwan_index_set(&adjoint_character(&a1).unwrap()).unwrap();
        assert_eq!(b.betas, BTreeMap::from([(Weight::from_i64(&[0]), qi(0)), (Weight::from_i64(&[2]), qi(2))]));
    }

    #[test]
    fn singleton_character() {
        let a2 = arc("A2");
        let chi = Weight::from_i64(&[1, 2]);
        let c = Character::from_weight_list(a2.clone(), [chi.clone()]).unwrap();
        let b = kirwan_index_set(&c).unwrap();
        assert_eq!(b.betas.keys().collect::<Vec<_>>(), [&chi]);
    }

    #[test]
    fn guard_is_enforced() {
        let a2 = arc("A2");
        let adj = adjoint_character(&a2).unwrap();
        assert!(matches!(kirwan_index_set_with_guard(&adj, 100), Err(Error::GuardExceeded { .. })));
        assert!(kirwan_index_set_with_guard(&adj, 127).is_ok());
    }

    #[test]
    fn strata_examples() {
        let a1 = arc("A1");
        let std = standard_character(&a1).unwrap();
        let adj = adjoint_character(&a1).unwrap();
        let s = State::new(a1.clone(), std.support()).unwrap();
        assert!(stratum_of(&s, &std).unwrap().is_zero());
        let s = State::new(a1.clone(), [Weight::from_i64(&[-1])]).unwrap();
        assert_eq!(stratum_of(&s, &std).unwrap(), Weight::from_i64(&[1]));
        let s = State::new(a1.clone(), [Weight::from_i64(&[2])]).unwrap();
        assert_eq!(stratum_of(&s, &adj).unwrap(), Weight::from_i64(&[2]));
        assert_eq!(stratum_of(&s, &std), Err(Error::StateNotInSupport));
    }
}
