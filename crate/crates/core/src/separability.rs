//! Separability bounds from the character lattice.
//!
//! For a set `S` of distinct weights, `ν_S: Z^{|S|} → X(T)` sends `e_s` to the
//! weight `χ_s`. Its gcd of maximal minors `g_S` detects the primes `p` for
//! which the torus acts inseparably on vectors with state `S`. `p_T` is the
//! largest prime dividing any `g_S`. The separability index is
//! `ψ = max(ht, p_T)`, and `ψ̄` is the maximum of `ψ` over all exterior powers.
//!
//! "Maximal minors" is read by default as minors of size `rank(ν_S)`, with
//! `g = 1` for the zero matrix. This keeps weight-zero vectors separable. The
//! literal reading uses size `min(rows, |S|)`. It can give `g_S = 0`, and then
//! every prime divides `g_S` and the bound is [`Bound::Unbounded`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::character::{exterior_char, height_of_char, Character, Characteristic};
use crate::lattice::{check_subset_guard, largest_prime_factor, nonempty_subsets, IntMatrix};
use crate::rational::Q;
use crate::root_system::Weight;
use crate::{Error, Result, DEFAULT_SUBSET_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MinorConvention {
    /// Minors of size `rank(ν_S)`; the zero matrix has `g = 1`.
    #[default]
    Rank,
    /// Minors of size `min(rows, |S|)`.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeparabilityOptions {
    pub convention: MinorConvention,
    pub guard: u64,
}

impl Default for SeparabilityOptions {
    fn default() -> Self {
        SeparabilityOptions { convention: MinorConvention::Rank, guard: DEFAULT_SUBSET_GUARD }
    }
}

/// A positive integer bound, or no bound at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(u64),
    Unbounded,
}

impl Bound {
    pub fn max(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a.max(b)),
            _ => Bound::Unbounded,
        }
    }

    /// `p > bound` (always true in characteristic zero).
    pub fn is_exceeded_by(self, p: Characteristic) -> bool {
        match (p, self) {
            (Characteristic::Zero, _) => true,
            (Characteristic::Prime(p), Bound::Finite(b)) => p > b,
            (Characteristic::Prime(_), Bound::Unbounded) => false,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::Finite(_), Bound::Unbounded) => Ordering::Less,
            (Bound::Unbounded, Bound::Finite(_)) => Ordering::Greater,
            (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(b) => write!(f, "{b}"),
            Bound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// `ν_S`: columns are the weights of `S` as integer vectors in the
/// fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterMatrix {
    matrix: IntMatrix,
}

impl CharacterMatrix {
    pub fn from_weights(rank: usize, weights: &[Weight]) -> Result<Self> {
        let mut columns = Vec::with_capacity(weights.len());
        for w in weights {
            if w.rank() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: w.rank() });
            }
            if !w.is_integral() {
                return Err(Error::NonIntegralWeight);
            }
            columns.push(w.coords().iter().map(Q::to_integer).collect());
        }
        Ok(CharacterMatrix { matrix: IntMatrix::from_columns(rank, &columns) })
    }

    pub fn from_matrix(matrix: IntMatrix) -> Self {
        CharacterMatrix { matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// `g_S` under the default rank convention.
pub fn g_of(m: &CharacterMatrix) -> BigInt {
    g_of_with(m, MinorConvention::Rank)
}

pub fn g_of_with(m: &CharacterMatrix, convention: MinorConvention) -> BigInt {
    let mat = &m.matrix;
    match convention {
        MinorConvention::Rank => {
            let r = mat.rank();
            if r == 0 {
                BigInt::one()
            } else {
                mat.gcd_of_minors(r)
            }
        }
        MinorConvention::Literal => mat.gcd_of_minors(mat.rows().min(mat.cols())),
    }
}

/// Largest prime dividing `g`; 1 for units, unbounded for 0.
fn prime_bound(g: &BigInt) -> Result<Bound> {
    if g.is_zero() {
        return Ok(Bound::Unbounded);
    }
    match largest_prime_factor(g) {
        None => Ok(Bound::Finite(1)),
        Some(p) => p.to_u64().map(Bound::Finite).ok_or(Error::Internal("prime factor exceeds u64")),
    }
}

fn subset_g_values(c: &Character, opts: SeparabilityOptions) -> Result<BTreeMap<Vec<usize>, BigInt>> {
    let support = c.support();
    check_subset_guard(support.len(), opts.guard)?;
    let rank = c.ambient().rank();
    let all = CharacterMatrix::from_weights(rank, &support)?;
    let mut out = BTreeMap::new();
    for subset in nonempty_subsets(support.len()) {
        let sub = CharacterMatrix { matrix: all.matrix.submatrix(&(0..rank).collect::<Vec<_>>(), &subset) };
        out.insert(subset, g_of_with(&sub, opts.convention));
    }
    Ok(out)
}

/// `p_T`: the largest prime dividing some `g_S` (1 if none does).
pub fn p_t_of(c: &Character) -> Result<Bound> {
    p_t_of_with(c, SeparabilityOptions::default())
}

pub fn p_t_of_with(c: &Character, opts: SeparabilityOptions) -> Result<Bound> {
    let mut best = Bound::Finite(1);
    for g in subset_g_values(c, opts)?.values() {
        best = best.max(prime_bound(g)?);
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityReport {
    /// `g_S` keyed by sorted indices into the (sorted) support.
    pub g_values: BTreeMap<Vec<usize>, BigInt>,
    pub p_t: Bound,
    pub height: Q,
    pub psi: Bound,
}

pub fn separability_index(c: &Character) -> Result<SeparabilityReport> {
    separability_index_with(c, SeparabilityOptions::default())
}

pub fn separability_index_with(c: &Character, opts: SeparabilityOptions) -> Result<SeparabilityReport> {
    let g_values = subset_g_values(c, opts)?;
    let mut p_t = Bound::Finite(1);
    for g in g_values.values() {
        p_t = p_t.max(prime_bound(g)?);
    }
    let height = height_of_char(c)?;
    // 2·ht(μ) = ⟨μ, 2ρ^∨⟩ is an integer for integral μ
    if !height.is_integer() {
        return Err(Error::NonIntegralWeight);
    }
    let ht = height.to_integer().to_u64().ok_or(Error::Internal("height exceeds u64"))?;
    let psi = Bound::Finite(ht).max(p_t);
    Ok(SeparabilityReport { g_values, p_t, height, psi })
}

/// `ψ̄ = max_i ψ(∧^i c)` for `1 ≤ i ≤ dim c`.
pub fn psi_bar(c: &Character) -> Result<Bound> {
    psi_bar_with(c, SeparabilityOptions::default())
}

pub fn psi_bar_with(c: &Character, opts: SeparabilityOptions) -> Result<Bound> {
    let mut best = Bound::Finite(1);
    for i in 1..=c.dim() as usize {
        best = best.max(separability_index_with(&exterior_char(c, i)?, opts)?.psi);
    }
    Ok(best)
}

/// `p > ψ`: the module has low separability index in characteristic `p`.
pub fn has_low_separability_index(c: &Character, p: Characteristic) -> Result<bool> {
    Ok(separability_index(c)?.psi.is_exceeded_by(p))
}

#[cfg(test)]
mod tests {
    use alloc::sync::Arc;
    use alloc::vec;

    use super::*;
    use crate::character::{adjoint_character, standard_character};
    use crate::rational::qi;
    use crate::root_system::RootSystem;

    fn arc(label: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(label).unwrap())
    }

    fn cm(rank: usize, ws: &[&[i64]]) -> CharacterMatrix {
        let ws: Vec<Weight> = ws.iter().map(|w| Weight::from_i64(w)).collect();
        CharacterMatrix::from_weights(rank, &ws).unwrap()
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_of(&cm(1, &[&[1], &[-1]])), BigInt::from(1));
        assert_eq!(g_of(&cm(1, &[&[2]])), BigInt::from(2));
        assert_eq!(g_of(&cm(1, &[&[0]])), BigInt::from(1));
        assert_eq!(g_of_with(&cm(1, &[&[0]]), MinorConvention::Literal), BigInt::from(0));
        assert_eq!(g_of(&cm(2, &[&[2, 0], &[4, 0]])), BigInt::from(2));
        assert_eq!(g_of_with(&cm(2, &[&[2, 0], &[4, 0]]), MinorConvention::Literal), BigInt::from(0));
    }

    #[test]
    fn rejects_non_integral() {
        let w = Weight::new(vec![crate::rational::q(1, 2)]);
        assert_eq!(CharacterMatrix::from_weights(1, &[w]), Err(Error::NonIntegralWeight));
    }

    #[test]
    fn p_t_examples() {
        assert_eq!(p_t_of(&standard_character(&arc("A1")).unwrap()).unwrap(), Bound::Finite(1));
        assert_eq!(p_t_of(&adjoint_character(&arc("A1")).unwrap()).unwrap(), Bound::Finite(2));
        assert_eq!(p_t_of(&standard_character(&arc("A2")).unwrap()).unwrap(), Bound::Finite(1));
        let lit = SeparabilityOptions { convention: MinorConvention::Literal, ..Default::default() };
        assert_eq!(p_t_of_with(&adjoint_character(&arc("A1")).unwrap(), lit).unwrap(), Bound::Unbounded);
    }

    #[test]
    fn psi_examples() {
        let r = separability_index(&standard_character(&arc("A1")).unwrap()).unwrap();
        assert_eq!((r.psi, r.p_t, r.height.clone()), (Bound::Finite(1), Bound::Finite(1), qi(1)));
        assert_eq!(r.g_values.len(), 3);
        let r = separability_index(&adjoint_character(&arc("A1")).unwrap()).unwrap();
        assert_eq!((r.psi, r.p_t, r.height), (Bound::Finite(2), Bound::Finite(2), qi(2)));
        let r = separability_index(&standard_character(&arc("A2")).unwrap()).unwrap();
        assert_eq!((r.psi, r.p_t, r.height), (Bound::Finite(2), Bound::Finite(1), qi(2)));
    }

    #[test]
    fn psi_bar_examples() {
        assert_eq!(psi_bar(&standard_character(&arc("A1")).unwrap()).unwrap(), Bound::Finite(1));
        assert_eq!(psi_bar(&standard_character(&arc("A2")).unwrap()).unwrap(), Bound::Finite(2));
        assert_eq!(psi_bar(&Character::trivial(arc("B2"))).unwrap(), Bound::Finite(1));
    }

    #[test]
    fn low_separability() {
        let adj = adjoint_character(&arc("A1")).unwrap();
        assert!(!has_low_separability_index(&adj, Characteristic::prime(2).unwrap()).unwrap());
        assert!(has_low_separability_index(&adj, Characteristic::prime(3).unwrap()).unwrap());
        assert!(Bound::Unbounded.is_exceeded_by(Characteristic::Zero));
        assert!(!Bound::Unbounded.is_exceeded_by(Characteristic::Prime(1_000_003)));
    }
}
