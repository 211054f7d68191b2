//! Torus characters of representations, kept as exact weight multisets.

mod freudenthal;

pub use freudenthal::{dominant_multiplicities, irreducible_character};

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::is_prime;
use crate::rational::{qi, Q};
use crate::root_system::{RootSystem, Series, Weight};
use crate::{Error, Result};

/// A finite multiset of weights with positive multiplicities.
#[derive(Debug, Clone)]
pub struct Character {
    ambient: Arc<RootSystem>,
    weights: BTreeMap<Weight, u64>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.ambient, &other.ambient) && self.weights == other.weights
    }
}

impl Eq for Character {}

pub(crate) fn same_ambient(a: &RootSystem, b: &RootSystem) -> bool {
    a.components() == b.components()
}

impl Character {
    /// Zero multiplicities are dropped; the total dimension must be positive.
    pub fn new(ambient: Arc<RootSystem>, weights: impl IntoIterator<Item = (Weight, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, m) in weights {
            ambient.check(&w)?;
            if m > 0 {
                *map.entry(w).or_insert(0) += m;
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyCharacter);
        }
        Ok(Character { ambient, weights: map })
    }

    /// Each listed weight with multiplicity one (repeats accumulate).
    pub fn from_weight_list(ambient: Arc<RootSystem>, weights: impl IntoIterator<Item = Weight>) -> Result<Self> {
        Self::new(ambient, weights.into_iter().map(|w| (w, 1)))
    }

    /// The one-dimensional trivial character `{0: 1}`.
    pub fn trivial(ambient: Arc<RootSystem>) -> Self {
        let zero = Weight::zero(ambient.rank());
        Character { ambient, weights: BTreeMap::from([(zero, 1)]) }
    }

    pub fn ambient(&self) -> &Arc<RootSystem> {
        &self.ambient
    }

    pub fn weights(&self) -> &BTreeMap<Weight, u64> {
        &self.weights
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    /// Distinct weights in increasing order.
    pub fn support(&self) -> Vec<Weight> {
        self.weights.keys().cloned().collect()
    }

    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Weights repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Weight> {
        self.weights.iter().flat_map(|(w, &m)| (0..m).map(move |_| w.clone())).collect()
    }

    pub fn dominant_weights(&self) -> Vec<&Weight> {
        self.weights.keys().filter(|w| self.ambient.is_dominant(w)).collect()
    }

    /// True when every simple reflection permutes the multiset.
    pub fn is_weyl_stable(&self) -> bool {
        (0..self.ambient.rank()).all(|i| {
            self.weights.iter().all(|(w, &m)| self.multiplicity(&self.ambient.reflect(i, w)) == m)
        })
    }

    /// The contragredient: every weight negated.
    pub fn dual(&self) -> Character {
        let weights = self.weights.iter().map(|(w, &m)| (w.neg(), m)).collect();
        Character { ambient: self.ambient.clone(), weights }
    }

    /// Image under a simple reflection (a W-stable character is fixed).
    pub fn reflect(&self, i: usize) -> Character {
        let weights = self.weights.iter().map(|(w, &m)| (self.ambient.reflect(i, w), m)).collect();
        Character { ambient: self.ambient.clone(), weights }
    }
}

/// The standard (minimal faithful) representation of a simple ambient.
pub fn standard_character(rs: &Arc<RootSystem>) -> Result<Character> {
    let [comp] = rs.components() else {
        return Err(Error::NoStandardRepresentation(rs.label()));
    };
    let index = match (comp.series, comp.rank) {
        (Series::E, 7) => 6,
        (Series::E, 8) => 7,
        (Series::F, _) => 3,
        _ => 0,
    };
    irreducible_character(rs, &rs.fundamental_weight(index))
}

/// The adjoint representation: highest weight the highest root.
pub fn adjoint_character(rs: &Arc<RootSystem>) -> Result<Character> {
    if !rs.is_simple() {
        return Err(Error::NoStandardRepresentation(rs.label()));
    }
    irreducible_character(rs, &rs.highest_roots()[0])
}

/// `c1 ⊗ c2` over the same group: sumset with multiplicities multiplied.
pub fn tensor_char(c1: &Character, c2: &Character) -> Result<Character> {
    if !same_ambient(&c1.ambient, &c2.ambient) {
        return Err(Error::AmbientMismatch);
    }
    let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
    for (a, &m) in &c1.weights {
        for (b, &n) in &c2.weights {
            *out.entry(a.add(b)).or_insert(0) += m * n;
        }
    }
    Ok(Character { ambient: c1.ambient.clone(), weights: out })
}

/// `∧^i c`: sums over `i`-element sub-multisets of the expanded weight list.
pub fn exterior_char(c: &Character, i: usize) -> Result<Character> {
    let dim = c.dim() as usize;
    if i > dim {
        return Err(Error::IndexOutOfRange { index: i, bound: dim });
    }
    let rank = c.ambient.rank();
    // layers[k] = character of ∧^k of the weights processed so far
    let mut layers: Vec<BTreeMap<Weight, u64>> = vec![BTreeMap::new(); i + 1];
    layers[0].insert(Weight::zero(rank), 1);
    for w in c.expanded() {
        for k in (1..=i).rev() {
            let shifted: Vec<(Weight, u64)> = layers[k - 1].iter().map(|(v, &m)| (v.add(&w), m)).collect();
            for (v, m) in shifted {
                *layers[k].entry(v).or_insert(0) += m;
            }
        }
    }
    let weights = core::mem::take(&mut layers[i]);
    Ok(Character { ambient: c.ambient.clone(), weights })
}

/// `Sym^m c`: sums over `m`-element multisets drawn with repetition.
pub fn sym_char(c: &Character, m: usize) -> Result<Character> {
    let rank = c.ambient.rank();
    let mut layers: Vec<BTreeMap<Weight, u64>> = vec![BTreeMap::new(); m + 1];
    layers[0].insert(Weight::zero(rank), 1);
    for w in c.expanded() {
        // multiply by 1 + t e^w + t² e^{2w} + …; ascending k reuses the updated layer k-1
        for k in 1..=m {
            let shifted: Vec<(Weight, u64)> = layers[k - 1].iter().map(|(v, &n)| (v.add(&w), n)).collect();
            for (v, n) in shifted {
                *layers[k].entry(v).or_insert(0) += n;
            }
        }
    }
    let weights = core::mem::take(&mut layers[m]);
    Ok(Character { ambient: c.ambient.clone(), weights })
}

/// `c1 ⊠ c2` on `G1 × G2`, coordinates concatenated.
pub fn external_tensor(c1: &Character, c2: &Character) -> Result<Character> {
    let ambient = Arc::new(RootSystem::product(&[&c1.ambient, &c2.ambient])?);
    let mut weights = BTreeMap::new();
    for (a, &m) in &c1.weights {
        for (b, &n) in &c2.weights {
            *weights.entry(a.concat(b)).or_insert(0) += m * n;
        }
    }
    Ok(Character { ambient, weights })
}

/// `ht(V)`: the maximum of `2·ht(μ)` over dominant weights `μ` in the support.
pub fn height_of_char(c: &Character) -> Result<Q> {
    let two = qi(2);
    c.dominant_weights()
        .into_iter()
        .map(|w| c.ambient.height(w).map(|h| &two * h))
        .try_fold(None::<Q>, |best, h| {
            let h = h?;
            Ok(Some(match best {
                Some(b) if b >= h => b,
                _ => h,
            }))
        })?
        .ok_or(Error::NoDominantWeight)
}

/// Characteristic of the ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Characteristic::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

/// `ht(V) < p`, always true in characteristic zero.
pub fn is_low_height(c: &Character, p: Characteristic) -> Result<bool> {
    match p {
        Characteristic::Zero => Ok(true),
        Characteristic::Prime(p) => Ok(height_of_char(c)? < Q::from_integer(p.into())),
    }
}

/// `n1 + n2 < p + 2`: the tensor product of semistable pairs of ranks `n1`, `n2` is
/// covered by the low-height bound.
pub fn tensor_bound_check(n1: u64, n2: u64, p: Characteristic) -> bool {
    match p {
        Characteristic::Zero => true,
        Characteristic::Prime(p) => n1 + n2 < p + 2,
    }
}

/// The defining representation of `SL(n)` as a character of `A_{n-1}`.
pub fn sl_standard(n: usize) -> Result<Character> {
    let rs = Arc::new(RootSystem::new(Series::A, n.saturating_sub(1))?);
    standard_character(&rs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(label: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(label).unwrap())
    }

    fn chr(rs: &Arc<RootSystem>, entries: &[(&[i64], u64)]) -> Character {
        Character::new(rs.clone(), entries.iter().map(|(w, m)| (Weight::from_i64(w), *m))).unwrap()
    }

    #[test]
    fn rejects_empty_and_misranked() {
        let a1 = arc("A1");
        assert_eq!(Character::new(a1.clone(), []), Err(Error::EmptyCharacter));
        assert!(Character::new(a1, [(Weight::from_i64(&[1, 0]), 1)]).is_err());
    }

    #[test]
    fn tensor_of_standard_a1() {
        let a1 = arc("A1");
        let std = standard_character(&a1).unwrap();
        let t = tensor_char(&std, &std).unwrap();
        assert_eq!(t, chr(&a1, &[(&[2], 1), (&[0], 2), (&[-2], 1)]));
    }

    #[test]
    fn exterior_powers() {
        let a1 = arc("A1");
        let std = standard_character(&a1).unwrap();
        assert_eq!(exterior_char(&std, 2).unwrap(), Character::trivial(a1.clone()));
        assert_eq!(exterior_char(&std, 0).unwrap(), Character::trivial(a1.clone()));
        assert!(exterior_char(&std, 3).is_err());
        let a2 = arc("A2");
        let std = standard_character(&a2).unwrap();
        assert_eq!(exterior_char(&std, 2).unwrap(), std.dual());
        assert_eq!(exterior_char(&std, 3).unwrap(), Character::trivial(a2));
    }

    #[test]
    fn symmetric_square_of_standard_a1_is_adjoint() {
        let a1 = arc("A1");
        let std = standard_character(&a1).unwrap();
        assert_eq!(sym_char(&std, 2).unwrap(), adjoint_character(&a1).unwrap());
        assert_eq!(sym_char(&std, 3).unwrap().dim(), 4);
        assert_eq!(sym_char(&std, 0).unwrap(), Character::trivial(a1));
    }

    #[test]
    fn heights() {
        for n in 2..=7 {
            assert_eq!(height_of_char(&sl_standard(n).unwrap()).unwrap(), qi(n as i64 - 1));
        }
        let a1 = arc("A1");
        assert_eq!(height_of_char(&adjoint_character(&a1).unwrap()).unwrap(), qi(2));
        let a3 = arc("A3");
        let w = irreducible_character(&a3, &a3.fundamental_weight(1)).unwrap();
        // ω_2 of A_3 = (α_1 + 2α_2 + α_3)/2
        assert_eq!(height_of_char(&w).unwrap(), qi(4));
        let bad = chr(&a1, &[(&[-1], 1)]);
        assert_eq!(height_of_char(&bad), Err(Error::NoDominantWeight));
    }

    #[test]
    fn low_height_predicate() {
        let a1 = arc("A1");
        let std = standard_character(&a1).unwrap();
        let adj = adjoint_character(&a1).unwrap();
        assert!(is_low_height(&std, Characteristic::prime(2).unwrap()).unwrap());
        assert!(!is_low_height(&adj, Characteristic::prime(2).unwrap()).unwrap());
        assert!(is_low_height(&adj, Characteristic::Zero).unwrap());
        assert_eq!(Characteristic::prime(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn tensor_bound_examples() {
        let p3 = Characteristic::prime(3).unwrap();
        assert!(tensor_bound_check(2, 2, p3));
        assert!(!tensor_bound_check(3, 3, p3));
        assert!(tensor_bound_check(40, 40, Characteristic::Zero));
    }

    #[test]
    fn external_tensor_height_adds() {
        for m in 2..=4 {
            for n in 2..=4 {
                let b = external_tensor(&sl_standard(m).unwrap(), &sl_standard(n).unwrap()).unwrap();
                assert_eq!(b.dim(), (m * n) as u64);
                assert_eq!(height_of_char(&b).unwrap(), qi((m + n - 2) as i64));
                assert!(b.is_weyl_stable());
            }
        }
    }

    #[test]
    fn standard_dimensions() {
        let expected = [("A3", 4), ("B3", 7), ("C3", 6), ("D4", 8), ("G2", 7), ("F4", 26), ("E6", 27), ("E7", 56)];
        for (label, d) in expected {
            assert_eq!(standard_character(&arc(label)).unwrap().dim(), d, "{label}");
        }
        assert!(standard_character(&arc("A1xA1")).is_err());
    }
}
