//! Torus instability: states, the measure `m(v, λ)`, optimal destabilizing
//! one-parameter subgroups, parabolics `P_λ`, weight filtrations, and Kirwan's
//! index set.
//!
//! One-parameter subgroups are weights under the identification fixed by the
//! invariant form. The optimal `λ` for a state is the nearest point of its
//! convex hull, and the normalized subgroup is `λ/q(λ)`.
//!
//! Only the torus-optimal subgroup of a given state is computed. Searching
//! over maximal tori (the orbit of a point) is not attempted.

mod kirwan;
mod nearest;

pub use kirwan::{kirwan_index_set, kirwan_index_set_with_guard, stratum_of, StrataIndexSet};
pub use nearest::{nearest_point, nearest_point_by_faces, nearest_point_checked, nearest_point_wolfe};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::character::{same_ambient, Character};
use crate::rational::Q;
use crate::root_system::{RootSystem, Weight};
use crate::{Error, Result};

/// `S_T(v)`: the weights on which a vector has non-zero coordinates.
#[derive(Debug, Clone)]
pub struct State {
    ambient: Arc<RootSystem>,
    weights: BTreeSet<Weight>,
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.ambient, &other.ambient) && self.weights == other.weights
    }
}

impl Eq for State {}

impl State {
    pub fn new(ambient: Arc<RootSystem>, weights: impl IntoIterator<Item = Weight>) -> Result<Self> {
        let weights: BTreeSet<Weight> = weights.into_iter().collect();
        if weights.is_empty() {
            return Err(Error::EmptyState);
        }
        for w in &weights {
            ambient.check(w)?;
        }
        Ok(State { ambient, weights })
    }

    pub fn ambient(&self) -> &Arc<RootSystem> {
        &self.ambient
    }

    pub fn weights(&self) -> &BTreeSet<Weight> {
        &self.weights
    }

    pub fn weight_list(&self) -> Vec<Weight> {
        self.weights.iter().cloned().collect()
    }

    /// The state with every weight moved by the simple reflection `s_i`.
    pub fn reflect(&self, i: usize) -> State {
        let weights = self.weights.iter().map(|w| self.ambient.reflect(i, w)).collect();
        State { ambient: self.ambient.clone(), weights }
    }
}

/// `m(s, λ) = min_{χ ∈ s} ⟨χ, λ⟩`.
pub fn measure(s: &State, lam: &Weight) -> Result<Q> {
    s.ambient.check(lam).map_err(|_| Error::AmbientMismatch)?;
    Ok(s.weights
        .iter()
        .map(|chi| s.ambient.inner_unchecked(chi, lam))
        .min()
        .expect("states are non-empty"))
}

/// Roots of `G` split by the sign of `⟨r, λ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicData {
    /// `⟨r, λ⟩ = 0`: roots of the Levi factor.
    pub zero_roots: Vec<Weight>,
    /// `⟨r, λ⟩ > 0`: roots of the unipotent radical `U(λ)`.
    pub positive_part: Vec<Weight>,
    pub negative_part: Vec<Weight>,
}

impl ParabolicData {
    /// Roots of `P_λ`.
    pub fn roots(&self) -> Vec<Weight> {
        self.zero_roots.iter().chain(&self.positive_part).cloned().collect()
    }

    pub fn is_borel(&self) -> bool {
        self.zero_roots.is_empty()
    }
}

/// The parabolic `P_λ = {g : lim_{t→0} λ(t) g λ(t)⁻¹ exists}` through its roots.
pub fn parabolic_of(rs: &RootSystem, lam: &Weight) -> Result<ParabolicData> {
    rs.check(lam)?;
    if lam.is_zero() {
        return Err(Error::FullGroup);
    }
    let mut p = ParabolicData { zero_roots: Vec::new(), positive_part: Vec::new(), negative_part: Vec::new() };
    for r in rs.roots() {
        let v = rs.inner_unchecked(&r, lam);
        if v.is_zero() {
            p.zero_roots.push(r);
        } else if v.is_positive() {
            p.positive_part.push(r);
        } else {
            p.negative_part.push(r);
        }
    }
    Ok(p)
}

/// Everything needed to re-verify that `λ` is the optimal destabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstabilityCertificate {
    /// Nearest point of the state's convex hull.
    pub lambda: Weight,
    /// `λ/q(λ)`, the element of `Λ_T(x)`.
    pub lambda_normalized: Weight,
    /// `m(s, λ)`.
    pub measure: Q,
    /// `q(λ) = (λ, λ)`.
    pub q_value: Q,
    pub parabolic: ParabolicData,
}

impl InstabilityCertificate {
    /// Recomputes every field from the state and checks the optimality
    /// conditions: `m(s, λ) = q(λ) > 0`, `m(s, λ/q(λ)) = 1`, and that `λ` is the
    /// nearest point by face enumeration.
    pub fn verify(&self, s: &State) -> Result<()> {
        let rs = &s.ambient;
        let q_value = rs.norm_sq(&self.lambda)?;
        if q_value != self.q_value || !q_value.is_positive() {
            return Err(Error::InvalidCertificate("q(λ) mismatch"));
        }
        if measure(s, &self.lambda)? != q_value || self.measure != q_value {
            return Err(Error::InvalidCertificate("m(s, λ) ≠ q(λ)"));
        }
        if self.lambda_normalized != self.lambda.scale(&q_value.recip()) {
            return Err(Error::InvalidCertificate("normalization is not λ/q(λ)"));
        }
        if measure(s, &self.lambda_normalized)? != Q::one() {
            return Err(Error::InvalidCertificate("m(s, λ/q(λ)) ≠ 1"));
        }
        if nearest_point_by_faces(rs, &s.weight_list())? != self.lambda {
            return Err(Error::InvalidCertificate("λ is not the nearest point"));
        }
        if parabolic_of(rs, &self.lambda)? != self.parabolic {
            return Err(Error::InvalidCertificate("parabolic mismatch"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destabilizer {
    Semistable,
    Unstable(InstabilityCertificate),
}

/// Optimal destabilizing one-parameter subgroup of the torus, if any.
pub fn optimal_destabilizer(s: &State) -> Result<Destabilizer> {
    let rs = &s.ambient;
    let lambda = nearest_point(rs, &s.weight_list())?;
    if lambda.is_zero() {
        return Ok(Destabilizer::Semistable);
    }
    let q_value = rs.norm_sq(&lambda)?;
    let lambda_normalized = lambda.scale(&q_value.recip());
    Ok(Destabilizer::Unstable(InstabilityCertificate {
        measure: measure(s, &lambda)?,
        parabolic: parabolic_of(rs, &lambda)?,
        lambda_normalized,
        q_value,
        lambda,
    }))
}

/// True iff 0 lies in the convex hull of the state.
pub fn is_semistable(s: &State) -> Result<bool> {
    Ok(nearest_point(&s.ambient, &s.weight_list())?.is_zero())
}

/// One step `V_i` of the weight filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub level: Q,
    pub weights: BTreeMap<Weight, u64>,
}

impl FiltrationLevel {
    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }
}

/// `V = ⊕ V_i` graded by `⟨χ, λ⟩`, levels in descending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    pub levels: Vec<FiltrationLevel>,
}

impl WeightFiltration {
    /// `V^q = ⊕_{i ≥ q} V_i` as a weight multiset.
    pub fn superlevel(&self, q: &Q) -> BTreeMap<Weight, u64> {
        self.levels
            .iter()
            .take_while(|l| l.level >= *q)
            .flat_map(|l| l.weights.iter().map(|(w, &m)| (w.clone(), m)))
            .collect()
    }

    /// `j = max{q : s ⊆ V^q}`; `None` if some weight of `s` is absent.
    pub fn jump(&self, s: &State) -> Option<Q> {
        let mut remaining: BTreeSet<&Weight> = s.weights.iter().collect();
        let mut last = None;
        for l in &self.levels {
            if remaining.is_empty() {
                break;
            }
            let before = remaining.len();
            remaining.retain(|w| !l.weights.contains_key(*w));
            if remaining.len() != before {
                last = Some(l.level.clone());
            }
        }
        remaining.is_empty().then_some(last).flatten()
    }
}

pub fn weight_filtration(c: &Character, lam: &Weight) -> Result<WeightFiltration> {
    let rs = c.ambient();
    rs.check(lam)?;
    let mut by_level: BTreeMap<Q, BTreeMap<Weight, u64>> = BTreeMap::new();
    for (w, &m) in c.weights() {
        by_level.entry(rs.inner_unchecked(w, lam)).or_default().insert(w.clone(), m);
    }
    let levels = by_level.into_iter().rev().map(|(level, weights)| FiltrationLevel { level, weights }).collect();
    Ok(WeightFiltration { levels })
}
