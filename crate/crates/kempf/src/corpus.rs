//! Seeded random inputs shared by `selftest` and the acceptance suite.

use std::sync::Arc;

use kempf_core::higgs::HiggsStructure;
use kempf_core::linalg::QMatrix;
use kempf_core::rational::{q, qi};
use kempf_core::root_system::{RootSystem, Weight};
use kempf_core::Q;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Ambient groups of rank at most 4.
pub const SMALL_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A1xA1", "A1xA2", "A2xA2", "A1xB2", "A1xG2",
    "A1xA1xA1",
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[-5, 5]` with denominator at most 7.
pub fn rational(rng: &mut impl Rng) -> Q {
    let d = rng.gen_range(1..=7);
    q(rng.gen_range(-5 * d..=5 * d), d)
}

pub fn weight(rng: &mut impl Rng, rank: usize) -> Weight {
    Weight::new((0..rank).map(|_| rational(rng)).collect())
}

/// Between 1 and 10 points over a random ambient from [`SMALL_TYPES`].
pub fn weight_set(rng: &mut impl Rng) -> (Arc<RootSystem>, Vec<Weight>) {
    let label = SMALL_TYPES.choose(rng).expect("non-empty");
    let rs = Arc::new(RootSystem::parse(label).expect("valid label"));
    let n = rng.gen_range(1..=10);
    let ws = (0..n).map(|_| weight(rng, rs.rank())).collect();
    (rs, ws)
}

pub fn weight_sets(seed: u64, count: usize) -> Vec<(Arc<RootSystem>, Vec<Weight>)> {
    let mut r = rng(seed);
    (0..count).map(|_| weight_set(&mut r)).collect()
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| qi(rng.gen_range(-bound..=bound)))
}

pub fn higgs(rng: &mut impl Rng, dim_v: usize, dim_u: usize) -> HiggsStructure {
    let theta = (0..dim_u).map(|_| int_matrix(rng, dim_v, dim_v, 3)).collect();
    HiggsStructure::new(dim_v, dim_u, theta).expect("shapes match")
}

/// Components `c0 + c1·A + c2·A²` for one random `A`, so they commute.
pub fn commuting_higgs(rng: &mut impl Rng, dim_v: usize, dim_u: usize) -> HiggsStructure {
    let a = int_matrix(rng, dim_v, dim_v, 2);
    let a2 = a.mul(&a).expect("square");
    let theta = (0..dim_u)
        .map(|_| {
            let [c0, c1, c2] = [0; 3].map(|_| qi(rng.gen_range(-2..=2)));
            QMatrix::identity(dim_v).scale(&c0).add(&a.scale(&c1)).and_then(|m| m.add(&a2.scale(&c2))).expect("square")
        })
        .collect();
    HiggsStructure::new(dim_v, dim_u, theta).expect("shapes match")
}

/// Two components `D` and `D + N` with `D` diagonal with distinct entries and
/// `N` having a non-zero off-diagonal entry, so `[D, N] ≠ 0`.
pub fn noncommuting_higgs(rng: &mut impl Rng, dim_v: usize) -> HiggsStructure {
    assert!(dim_v >= 2);
    let d = QMatrix::diagonal(&(0..dim_v).map(|i| qi(i as i64 * 2 + rng.gen_range(0..2))).collect::<Vec<_>>());
    let mut n = int_matrix(rng, dim_v, dim_v, 2);
    let i = rng.gen_range(0..dim_v);
    let j = (i + 1 + rng.gen_range(0..dim_v - 1)) % dim_v;
    n = n.add(&QMatrix::from_fn(dim_v, dim_v, |a, b| {
        if (a, b) == (i, j) && n[(i, j)] == qi(0) {
            qi(1)
        } else {
            qi(0)
        }
    }))
    .expect("square");
    let theta = vec![d.clone(), d.add(&n).expect("square")];
    HiggsStructure::new(dim_v, 2, theta).expect("shapes match")
}

pub fn vector(rng: &mut impl Rng, dim: usize) -> Vec<Q> {
    (0..dim).map(|_| rational(rng)).collect()
}
