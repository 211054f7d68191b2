//! Higgs structures on a single fiber.
//!
//! A structure `θ: V → V ⊗ U` is stored by its components `θ_a` in a fixed
//! basis `u_1..u_d` of `U`, so `θ = Σ_a θ_a ⊗ u_a`. In these coordinates
//! `θ ∧ θ = 0` is exactly pairwise commutation of the components.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::{kron_vec, QMatrix};
use crate::rational::Q;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HiggsStructure {
    dim_v: usize,
    theta: Vec<QMatrix>,
}

/// A vector in the fiber `V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HiggsVector {
    pub coords: Vec<Q>,
}

impl HiggsVector {
    pub fn new(coords: Vec<Q>) -> Self {
        HiggsVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        HiggsVector { coords: vec![Q::zero(); dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch { expected: self.coords.len(), found: other.coords.len() });
        }
        Ok(HiggsVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    /// `v ⊗ w` in the basis ordering used by [`tensor_higgs`].
    pub fn tensor(&self, other: &Self) -> Self {
        HiggsVector { coords: kron_vec(&self.coords, &other.coords) }
    }
}

impl HiggsStructure {
    /// Validates that there are `dim_u` components, each `dim_v × dim_v`.
    pub fn new(dim_v: usize, dim_u: usize, theta: Vec<QMatrix>) -> Result<Self> {
        if dim_v == 0 {
            return Err(Error::InvalidHiggs("dim_v must be positive".into()));
        }
        if theta.len() != dim_u {
            return Err(Error::InvalidHiggs(format!(
                "expected {dim_u} components, found {}",
                theta.len()
            )));
        }
        for (a, t) in theta.iter().enumerate() {
            if t.rows() != dim_v || t.cols() != dim_v {
                return Err(Error::InvalidHiggs(format!(
                    "component {a} is {}x{}, expected {dim_v}x{dim_v}",
                    t.rows(),
                    t.cols()
                )));
            }
        }
        Ok(HiggsStructure { dim_v, theta })
    }

    pub fn zero(dim_v: usize, dim_u: usize) -> Result<Self> {
        Self::new(dim_v, dim_u, vec![QMatrix::zeros(dim_v, dim_v); dim_u])
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_u(&self) -> usize {
        self.theta.len()
    }

    pub fn components(&self) -> &[QMatrix] {
        &self.theta
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().all(QMatrix::is_zero)
    }

    /// `Σ_a alpha_a θ_a`: the endomorphism of `V` by which `alpha ∈ U*` acts.
    pub fn contract(&self, alpha: &[Q]) -> Result<QMatrix> {
        if alpha.len() != self.dim_u() {
            return Err(Error::DimensionMismatch { expected: self.dim_u(), found: alpha.len() });
        }
        let mut acc = QMatrix::zeros(self.dim_v, self.dim_v);
        for (c, t) in alpha.iter().zip(&self.theta) {
            if !c.is_zero() {
                acc = acc.add(&t.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// True iff every pair of components commutes.
pub fn check_integrability(h: &HiggsStructure) -> bool {
    let t = &h.theta;
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            // shapes are validated at construction
            if !t[a].commutator(&t[b]).map(|c| c.is_zero()).unwrap_or(false) {
                return false;
            }
        }
    }
    true
}

/// `θ1 ⊗ 1 + 1 ⊗ θ2`, componentwise.
pub fn tensor_higgs(h1: &HiggsStructure, h2: &HiggsStructure) -> Result<HiggsStructure> {
    if h1.dim_u() != h2.dim_u() {
        return Err(Error::DimensionMismatch { expected: h1.dim_u(), found: h2.dim_u() });
    }
    let id1 = QMatrix::identity(h1.dim_v);
    let id2 = QMatrix::identity(h2.dim_v);
    let theta = h1
        .theta
        .iter()
        .zip(&h2.theta)
        .map(|(a, b)| a.kron(&id2).add(&id1.kron(b)))
        .collect::<Result<Vec<_>>>()?;
    HiggsStructure::new(h1.dim_v * h2.dim_v, h1.dim_u(), theta)
}

/// Dual structure on `V*`: each component becomes `-θ_aᵀ`.
pub fn dual_higgs(h: &HiggsStructure) -> HiggsStructure {
    HiggsStructure { dim_v: h.dim_v, theta: h.theta.iter().map(|t| t.transpose().neg()).collect() }
}

/// Basis of the common kernel `∩_a ker θ_a`.
pub fn higgs_sections(h: &HiggsStructure) -> Vec<HiggsVector> {
    stacked(h).nullspace().into_iter().map(HiggsVector::new).collect()
}

/// The stacked `(dim_u·dim_v) × dim_v` matrix `[θ_1; …; θ_d]`.
pub fn stacked(h: &HiggsStructure) -> QMatrix {
    QMatrix::vstack(&h.theta, h.dim_v).expect("components validated at construction")
}

/// Degree-one action of `alpha ∈ U*` on `v`: `(Σ_a alpha_a θ_a) v`.
pub fn lambda_act(h: &HiggsStructure, alpha: &[Q], v: &HiggsVector) -> Result<HiggsVector> {
    if v.coords.len() != h.dim_v {
        return Err(Error::DimensionMismatch { expected: h.dim_v, found: v.coords.len() });
    }
    Ok(HiggsVector::new(h.contract(alpha)?.mul_vec(&v.coords)?))
}
