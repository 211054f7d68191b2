//! Root data for the simple types A–G and their direct products.
//!
//! Conventions:
//!
//! - Simple roots are numbered as in Bourbaki's tables.
//! - `cartan[i][j] = ⟨α_i, α_j^∨⟩ = 2(α_i, α_j)/(α_j, α_j)`, so row `i` of the
//!   Cartan matrix holds the fundamental-weight coordinates of `α_i`.
//! - Long roots have squared length 2 in every simple factor.
//! - A [`Weight`] is stored in the fundamental-weight basis. Its `i`-th
//!   coordinate is `⟨w, α_i^∨⟩`.
//! - One-parameter subgroups are identified with weights through the invariant
//!   form, so `⟨χ, λ⟩ = (χ, λ)` and [`RootSystem::pair`] is the inner product.
//!
//! Products are handled by concatenating coordinates. The Cartan and Gram
//! matrices are then block diagonal, and every algorithm below works for the
//! reducible system unchanged.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{Signed, Zero};

use crate::linalg::QMatrix;
use crate::rational::{dot, q, qi, Q};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A simple type such as `B3` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { series, rank })
        } else {
            Err(Error::InvalidType(format!("{}{}", series.letter(), rank)))
        }
    }

    /// Squared lengths of the simple roots and the edges of the Dynkin diagram.
    fn dynkin(&self) -> (Vec<Q>, Vec<(usize, usize)>) {
        let n = self.rank;
        let long = qi(2);
        let short = qi(1);
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.series {
            Series::A => (vec![long; n], chain(n)),
            Series::B => {
                let mut lens = vec![long; n];
                lens[n - 1] = short;
                (lens, chain(n))
            }
            Series::C => {
                let mut lens = vec![short; n];
                lens[n - 1] = long;
                (lens, chain(n))
            }
            Series::D => {
                let mut edges = chain(n - 1);
                edges.push((n - 3, n - 1));
                (vec![long; n], edges)
            }
            Series::E => {
                // 1-3-4-5-6(-7-8) with 2 attached to 4
                let mut edges = vec![(0, 2), (1, 3), (2, 3)];
                edges.extend((3..n - 1).map(|i| (i, i + 1)));
                (vec![long; n], edges)
            }
            Series::F => (vec![long.clone(), long, short.clone(), short], chain(4)),
            Series::G => (vec![q(2, 3), long], chain(2)),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars.next().and_then(Series::from_letter).ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        SimpleType::new(series, rank)
    }
}

/// Which coordinates a weight vector is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Fundamental,
    SimpleRoot,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Fundamental => "fundamental",
            Basis::SimpleRoot => "root",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fundamental" | "weight" | "omega" => Ok(Basis::Fundamental),
            "root" | "simple_root" | "alpha" => Ok(Basis::SimpleRoot),
            other => Err(Error::InvalidType(format!("unknown basis `{other}`"))),
        }
    }
}

/// A rational weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&x| qi(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight(self.0.iter().map(|a| a * s).collect())
    }

    /// Concatenation, for weights of a product group.
    pub fn concat(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<SimpleType>,
    cartan: Vec<Vec<i64>>,
    lengths: Vec<Q>,
    gram: QMatrix,
    cartan_q: QMatrix,
    cartan_inv: QMatrix,
    fund_gram: QMatrix,
    positive_roots: Vec<Weight>,
    positive_roots_root_basis: Vec<Vec<i64>>,
}

impl RootSystem {
    /// Root system of one simple type.
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        Ok(Self::from_components(vec![SimpleType::new(series, rank)?]))
    }

    /// Direct product; coordinates of the factors are concatenated in order.
    pub fn product(factors: &[&RootSystem]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidType("empty product".into()));
        }
        let components = factors.iter().flat_map(|f| f.components.iter().copied()).collect();
        Ok(Self::from_components(components))
    }

    fn from_components(components: Vec<SimpleType>) -> Self {
        let rank: usize = components.iter().map(|c| c.rank).sum();
        let mut lengths = Vec::with_capacity(rank);
        let mut gram = QMatrix::zeros(rank, rank);
        let mut offset = 0;
        for comp in &components {
            let (lens, edges) = comp.dynkin();
            for (i, l) in lens.iter().enumerate() {
                gram[(offset + i, offset + i)] = l.clone();
            }
            for (i, j) in edges {
                // (α_i, α_j) = -max(|α_i|², |α_j|²)/2 on every edge of the diagrams A–G
                let m = if lens[i] > lens[j] { &lens[i] } else { &lens[j] };
                let v = -m / qi(2);
                gram[(offset + i, offset + j)] = v.clone();
                gram[(offset + j, offset + i)] = v;
            }
            lengths.extend(lens);
            offset += comp.rank;
        }
        let cartan_q = QMatrix::from_fn(rank, rank, |i, j| qi(2) * &gram[(i, j)] / &lengths[j]);
        let cartan = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let c = &cartan_q[(i, j)];
                        debug_assert!(c.is_integer());
                        i64::try_from(c.to_integer()).expect("Cartan entries are small")
                    })
                    .collect()
            })
            .collect::<Vec<Vec<i64>>>();
        let cartan_inv = cartan_q.inverse().expect("Cartan matrix is nonsingular");
        let fund_gram = QMatrix::from_fn(rank, rank, |i, j| &cartan_inv[(i, j)] * &lengths[j] / qi(2));
        let mut rs = RootSystem {
            components,
            cartan,
            lengths,
            gram,
            cartan_q,
            cartan_inv,
            fund_gram,
            positive_roots: Vec::new(),
            positive_roots_root_basis: Vec::new(),
        };
        let pos = rs.enumerate_positive_roots();
        rs.positive_roots = pos.iter().map(|b| rs.root_to_weight_i64(b)).collect();
        rs.positive_roots_root_basis = pos;
        rs
    }

    /// Parses `A2`, `G2`, or a product such as `A2xA3`.
    pub fn parse(label: &str) -> Result<Self> {
        let components = label
            .split(['x', 'X', '×', '*'])
            .map(SimpleType::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_components(components))
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        parts.join("x")
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn is_simple(&self) -> bool {
        self.components.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.lengths.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Inner products `(α_i, α_j)` of the simple roots.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Row `i` holds `ω_i` in the simple-root basis.
    pub fn fundamental_weights(&self) -> &QMatrix {
        &self.cartan_inv
    }

    /// Inner products `(ω_i, ω_j)`.
    pub fn fundamental_gram(&self) -> &QMatrix {
        &self.fund_gram
    }

    pub fn simple_root_length(&self, i: usize) -> &Q {
        &self.lengths[i]
    }

    pub fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: w.rank() });
        }
        Ok(())
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan_q.row(i).to_vec())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut c = vec![Q::zero(); self.rank()];
        c[i] = qi(1);
        Weight(c)
    }

    /// `ω_i^∨ = 2ω_i/(α_i, α_i)`, characterised by `(α_j, ω_i^∨) = δ_ij`.
    pub fn fundamental_coweight(&self, i: usize) -> Weight {
        self.fundamental_weight(i).scale(&(qi(2) / &self.lengths[i]))
    }

    /// Half the sum of the positive roots, `ρ = Σ ω_i`.
    pub fn rho(&self) -> Weight {
        Weight(vec![qi(1); self.rank()])
    }

    pub fn to_root_basis(&self, w: &Weight) -> Result<Vec<Q>> {
        self.check(w)?;
        self.cartan_inv.vec_mul(&w.0)
    }

    pub fn from_root_basis(&self, coords: &[Q]) -> Result<Weight> {
        Ok(Weight(self.cartan_q.vec_mul(coords)?))
    }

    pub fn weight_in(&self, basis: Basis, coords: Vec<Q>) -> Result<Weight> {
        match basis {
            Basis::Fundamental => {
                let w = Weight(coords);
                self.check(&w)?;
                Ok(w)
            }
            Basis::SimpleRoot => self.from_root_basis(&coords),
        }
    }

    pub fn coords_in(&self, w: &Weight, basis: Basis) -> Result<Vec<Q>> {
        match basis {
            Basis::Fundamental => {
                self.check(w)?;
                Ok(w.0.clone())
            }
            Basis::SimpleRoot => self.to_root_basis(w),
        }
    }

    /// The invariant form `(w1, w2)`.
    pub fn inner(&self, w1: &Weight, w2: &Weight) -> Result<Q> {
        self.check(w1)?;
        self.check(w2)?;
        Ok(self.inner_unchecked(w1, w2))
    }

    pub(crate) fn inner_unchecked(&self, w1: &Weight, w2: &Weight) -> Q {
        let n = self.rank();
        let mut acc = Q::zero();
        for i in 0..n {
            if w1.0[i].is_zero() {
                continue;
            }
            let row = dot(self.fund_gram.row(i), &w2.0);
            acc += &w1.0[i] * row;
        }
        acc
    }

    /// `⟨χ, λ⟩` for a one-parameter subgroup `λ` already identified with a weight.
    pub fn pair(&self, chi: &Weight, lam: &Weight) -> Result<Q> {
        self.inner(chi, lam)
    }

    /// `q(λ) = (λ, λ)`.
    pub fn norm_sq(&self, w: &Weight) -> Result<Q> {
        self.inner(w, w)
    }

    /// `χ_λ` with `χ_λ(λ') = (λ, λ')`. Under the fixed identification this is
    /// `λ` itself; the function exists so call sites say which side they mean.
    pub fn one_ps_to_character(&self, lam: &Weight) -> Result<Weight> {
        self.check(lam)?;
        Ok(lam.clone())
    }

    /// Sum of the simple-root coordinates.
    pub fn height(&self, w: &Weight) -> Result<Q> {
        Ok(self.to_root_basis(w)?.into_iter().fold(Q::zero(), |a, b| a + b))
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_strictly_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|c| c.is_positive())
    }

    /// Simple reflection `s_i(w) = w - ⟨w, α_i^∨⟩ α_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let c = &w.0[i];
        if c.is_zero() {
            return w.clone();
        }
        Weight(w.0.iter().zip(self.cartan_q.row(i)).map(|(x, a)| x - c * a).collect())
    }

    /// Applies `s_{word[0]}` first, then `s_{word[1]}`, and so on.
    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        word.iter().fold(w.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// The unique dominant weight in the Weyl orbit of `w`, and a word of
    /// simple reflections (0-based, applied left to right) carrying `w` to it.
    pub fn dominant_representative(&self, w: &Weight) -> Result<(Weight, Vec<usize>)> {
        self.check(w)?;
        let mut cur = w.clone();
        let mut word = Vec::new();
        while let Some(i) = cur.0.iter().position(Signed::is_negative) {
            cur = self.reflect(i, &cur);
            word.push(i);
        }
        Ok((cur, word))
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots as integer coefficient vectors over the simple roots.
    pub fn positive_roots_root_basis(&self) -> &[Vec<i64>] {
        &self.positive_roots_root_basis
    }

    /// All roots: the positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(Weight::neg));
        all
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.positive_roots.iter().any(|r| r == w || r.neg() == *w)
    }

    /// Highest root of each simple factor, in factor order.
    pub fn highest_roots(&self) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut offset = 0;
        for comp in &self.components {
            let range = offset..offset + comp.rank;
            let best = self
                .positive_roots_root_basis
                .iter()
                .zip(&self.positive_roots)
                .filter(|(b, _)| b.iter().enumerate().all(|(i, &c)| c == 0 || range.contains(&i)))
                .max_by_key(|(b, _)| b.iter().sum::<i64>())
                .map(|(_, w)| w.clone())
                .expect("every factor has roots");
            out.push(best);
            offset += comp.rank;
        }
        out
    }

    /// `α^∨ = 2α/(α, α)` for a root `α`.
    pub fn coroot(&self, alpha: &Weight) -> Result<Weight> {
        self.check(alpha)?;
        if !self.is_root(alpha) {
            return Err(Error::NotARoot);
        }
        let len = self.inner_unchecked(alpha, alpha);
        Ok(alpha.scale(&(qi(2) / len)))
    }

    /// The Weyl orbit of `w`, sorted; fails once more than `cap` elements appear.
    pub fn weyl_orbit(&self, w: &Weight, cap: usize) -> Result<Vec<Weight>> {
        self.check(w)?;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.rank() {
                let next = self.reflect(i, &cur);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::GuardExceeded { required: seen.len() as u64 + 1, guard: cap as u64 });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `|W|`, computed as the size of the (free) orbit of `ρ`.
    pub fn weyl_group_order(&self, cap: usize) -> Result<usize> {
        Ok(self.weyl_orbit(&self.rho(), cap)?.len())
    }

    fn root_to_weight_i64(&self, beta: &[i64]) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|k| qi(beta.iter().enumerate().map(|(j, &b)| b * self.cartan[j][k]).sum()))
                .collect(),
        )
    }

    /// Closure of the simple roots under simple reflections, in the root basis.
    fn enumerate_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * self.cartan[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut next = beta.clone();
                next[i] -= pairing;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|b| b.iter().all(|&c| c >= 0)).collect();
        pos.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
        pos
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RootSystem::parse(s)
    }
}

/// `build_root_system(series, rank)`.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    RootSystem::new(series, rank)
}
