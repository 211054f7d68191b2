//! Weight multiplicities of irreducible representations by Freudenthal's
//! recursion, run over dominant weights only and extended by Weyl symmetry.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use super::Character;
use crate::rational::{qi, Q};
use crate::root_system::{RootSystem, Weight};
use crate::{Error, Result, DEFAULT_ORBIT_CAP};

/// Multiplicities of the dominant weights of the irreducible module with the
/// given highest weight.
pub fn dominant_multiplicities(rs: &RootSystem, highest: &Weight) -> Result<BTreeMap<Weight, u64>> {
    rs.check(highest)?;
    if !highest.is_integral() {
        return Err(Error::NonIntegralWeight);
    }
    if !rs.is_dominant(highest) {
        return Err(Error::NotDominant);
    }
    let n = rs.rank();
    let bounds: Vec<i64> = rs
        .to_root_basis(highest)?
        .iter()
        .map(|c| c.floor().to_integer().to_i64().expect("small highest weight"))
        .collect();

    // dominant μ = λ - Σ c_i α_i with 0 ≤ c_i ≤ (root coordinate of λ)_i
    let mut candidates: Vec<(i64, Weight)> = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        let mut mu = highest.coords().to_vec();
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                for (k, x) in mu.iter_mut().enumerate() {
                    *x -= qi(ci * rs.cartan()[i][k]);
                }
            }
        }
        let mu = Weight::new(mu);
        if rs.is_dominant(&mu) {
            candidates.push((c.iter().sum(), mu));
        }
        // odometer increment
        let mut i = 0;
        while i < n {
            if c[i] < bounds[i] {
                c[i] += 1;
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    candidates.sort();

    let rho = rs.rho();
    let lr = highest.add(&rho);
    let top = rs.inner_unchecked(&lr, &lr);
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for (depth, mu) in candidates {
        if depth == 0 {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc = Q::zero();
        for alpha in rs.positive_roots() {
            let mut nu = mu.add(alpha);
            loop {
                let (dom, _) = rs.dominant_representative(&nu)?;
                let Some(&m) = mult.get(&dom) else { break };
                acc += rs.inner_unchecked(&nu, alpha) * qi(m as i64);
                nu = nu.add(alpha);
            }
        }
        let mr = mu.add(&rho);
        let denom = &top - rs.inner_unchecked(&mr, &mr);
        debug_assert!(denom.is_positive());
        let m = qi(2) * acc / denom;
        debug_assert!(m.is_integer());
        let m = m.to_integer().to_u64().expect("multiplicity fits in u64");
        if m > 0 {
            mult.insert(mu, m);
        }
    }
    Ok(mult)
}

/// Full character of the irreducible module `V(highest)`.
pub fn irreducible_character(rs: &Arc<RootSystem>, highest: &Weight) -> Result<Character> {
    let dominant = dominant_multiplicities(rs, highest)?;
    let mut weights = BTreeMap::new();
    for (mu, m) in dominant {
        for w in rs.weyl_orbit(&mu, DEFAULT_ORBIT_CAP)? {
            weights.insert(w, m);
        }
    }
    Ok(Character { ambient: rs.clone(), weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(label: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(label).unwrap())
    }

    #[test]
    fn a1_examples() {
        let a1 = arc("A1");
        let c = irreducible_character(&a1, &Weight::from_i64(&[1])).unwrap();
        assert_eq!(c.weights().len(), 2);
        assert_eq!(c.multiplicity(&Weight::from_i64(&[1])), 1);
        assert_eq!(c.multiplicity(&Weight::from_i64(&[-1])), 1);
        let c = irreducible_character(&a1, &Weight::from_i64(&[2])).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.multiplicity(&Weight::from_i64(&[0])), 1);
    }

    #[test]
    fn a2_standard_is_three_epsilons() {
        let a2 = arc("A2");
        let c = irreducible_character(&a2, &a2.fundamental_weight(0)).unwrap();
        let expected = [[1, 0], [-1, 1], [0, -1]];
        assert_eq!(c.dim(), 3);
        for e in expected {
            assert_eq!(c.multiplicity(&Weight::from_i64(&e)), 1);
        }
    }

    #[test]
    fn adjoint_zero_weight_has_rank_multiplicity() {
        for label in ["A2", "B3", "G2", "D4"] {
            let rs = arc(label);
            let c = irreducible_character(&rs, &rs.highest_roots()[0]).unwrap();
            assert_eq!(c.multiplicity(&Weight::zero(rs.rank())), rs.rank() as u64, "{label}");
            assert_eq!(c.dim(), (rs.rank() + 2 * rs.positive_roots().len()) as u64);
        }
    }

    #[test]
    fn rejects_bad_highest_weights() {
        let a2 = arc("A2");
        assert_eq!(irreducible_character(&a2, &Weight::from_i64(&[1, -1])), Err(Error::NotDominant));
        let half = Weight::new(vec![crate::rational::q(1, 2), qi(0)]);
        assert_eq!(irreducible_character(&a2, &half), Err(Error::NonIntegralWeight));
    }
}
