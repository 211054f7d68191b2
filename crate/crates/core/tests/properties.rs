use std::sync::Arc;

use kempf_core::character::{
    exterior_char, external_tensor, height_of_char, standard_character, sym_char, tensor_char, Character,
};
use kempf_core::higgs::{
    check_integrability, dual_higgs, higgs_sections, lambda_act, stacked, tensor_higgs, HiggsStructure, HiggsVector,
};
use kempf_core::instability::{
    is_semistable, measure, nearest_point, nearest_point_by_faces, nearest_point_wolfe, optimal_destabilizer,
    Destabilizer, State,
};
use kempf_core::lattice::binomial;
use kempf_core::linalg::QMatrix;
use kempf_core::rational::{q, qi};
use kempf_core::root_system::{Basis, RootSystem, Weight};
use kempf_core::Q;
use num_bigint::BigInt;
use proptest::prelude::*;

const SMALL: &[&str] = &["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1", "A1xA2", "A4", "D4", "B4", "F4"];

fn rational() -> impl Strategy<Value = Q> {
    (-5i64..=5, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

fn ambient() -> impl Strategy<Value = Arc<RootSystem>> {
    prop::sample::select(SMALL).prop_map(|l| Arc::new(RootSystem::parse(l).unwrap()))
}

fn weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(rational(), rank).prop_map(Weight::new)
}

fn integral_weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-3i64..=3, rank).prop_map(|c| Weight::from_i64(&c))
}

fn with_weights(max: usize) -> impl Strategy<Value = (Arc<RootSystem>, Vec<Weight>)> {
    ambient().prop_flat_map(move |rs| {
        let r = rs.rank();
        (Just(rs), prop::collection::vec(weight(r), 1..=max))
    })
}

fn matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| QMatrix::from_fn(n, n, |i, j| qi(v[i * n + j])))
}

/// Components that are polynomials in one matrix, hence commute.
fn commuting_higgs(n: usize, u: usize) -> impl Strategy<Value = HiggsStructure> {
    (matrix(n), prop::collection::vec(prop::collection::vec(-2i64..=2, 3), u)).prop_map(move |(a, polys)| {
        let a2 = a.mul(&a).unwrap();
        let theta = polys
            .iter()
            .map(|c| {
                QMatrix::identity(n).scale(&qi(c[0])).add(&a.scale(&qi(c[1]))).unwrap().add(&a2.scale(&qi(c[2]))).unwrap()
            })
            .collect();
        HiggsStructure::new(n, u, theta).unwrap()
    })
}

fn any_higgs(n: usize, u: usize) -> impl Strategy<Value = HiggsStructure> {
    prop::collection::vec(matrix(n), u).prop_map(move |t| HiggsStructure::new(n, u, t).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = HiggsVector> {
    prop::collection::vec(rational(), n).prop_map(HiggsVector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn inner_product_is_weyl_invariant((rs, ws) in with_weights(2), i in 0usize..8) {
        let i = i % rs.rank();
        let (a, b) = (&ws[0], ws.last().unwrap());
        prop_assert_eq!(rs.inner(a, b).unwrap(), rs.inner(&rs.reflect(i, a), &rs.reflect(i, b)).unwrap());
        prop_assert_eq!(rs.reflect(i, &rs.reflect(i, a)), a.clone());
    }

    #[test]
    fn height_is_linear((rs, ws) in with_weights(2), c in rational()) {
        let (a, b) = (&ws[0], ws.last().unwrap());
        let lhs = rs.height(&a.add(&b.scale(&c))).unwrap();
        prop_assert_eq!(lhs, rs.height(a).unwrap() + &c * rs.height(b).unwrap());
    }

    #[test]
    fn basis_round_trip((rs, ws) in with_weights(1)) {
        let w = &ws[0];
        for basis in [Basis::Fundamental, Basis::SimpleRoot] {
            let coords = rs.coords_in(w, basis).unwrap();
            prop_assert_eq!(&rs.weight_in(basis, coords).unwrap(), w);
        }
    }

    #[test]
    fn dominant_representative_is_in_orbit((rs, ws) in with_weights(1)) {
        let w = &ws[0];
        let (d, word) = rs.dominant_representative(w).unwrap();
        prop_assert!(rs.is_dominant(&d));
        prop_assert_eq!(rs.apply_word(&word, w), d.clone());
        prop_assert_eq!(rs.norm_sq(&d).unwrap(), rs.norm_sq(w).unwrap());
    }

    #[test]
    fn nearest_point_methods_agree((rs, ws) in with_weights(6)) {
        prop_assert_eq!(nearest_point_wolfe(&rs, &ws).unwrap(), nearest_point_by_faces(&rs, &ws).unwrap());
    }

    #[test]
    fn nearest_point_is_weyl_equivariant((rs, ws) in with_weights(5), i in 0usize..8) {
        let i = i % rs.rank();
        let p = nearest_point(&rs, &ws).unwrap();
        let moved: Vec<Weight> = ws.iter().map(|w| rs.reflect(i, w)).collect();
        prop_assert_eq!(nearest_point(&rs, &moved).unwrap(), rs.reflect(i, &p));
    }

    #[test]
    fn nearest_point_scales((rs, ws) in with_weights(5), n in 1i64..5, d in 1i64..5) {
        let c = q(n, d);
        let p = nearest_point(&rs, &ws).unwrap();
        let scaled: Vec<Weight> = ws.iter().map(|w| w.scale(&c)).collect();
        prop_assert_eq!(nearest_point(&rs, &scaled).unwrap(), p.scale(&c));
    }

    #[test]
    fn certificates_verify((rs, ws) in with_weights(6)) {
        let s = State::new(rs.clone(), ws.clone()).unwrap();
        match optimal_destabilizer(&s).unwrap() {
            Destabilizer::Semistable => prop_assert!(is_semistable(&s).unwrap()),
            Destabilizer::Unstable(cert) => {
                cert.verify(&s).unwrap();
                for w in &ws {
                    prop_assert!(rs.pair(w, &cert.lambda).unwrap() >= cert.q_value);
                }
                prop_assert_eq!(measure(&s, &cert.lambda_normalized).unwrap(), qi(1));
            }
        }
    }

    #[test]
    fn weyl_stable_supports_are_semistable(rs in ambient(), raw in prop::collection::vec(-2i64..=2, 4)) {
        let w = Weight::from_i64(&raw[..rs.rank().min(4)].iter().copied().chain(std::iter::repeat(0)).take(rs.rank()).collect::<Vec<_>>());
        let orbit = rs.weyl_orbit(&w, 100_000).unwrap();
        let s = State::new(rs.clone(), orbit).unwrap();
        prop_assert!(is_semistable(&s).unwrap());
    }

    #[test]
    fn character_dimension_formulas(rs in ambient(), raw in prop::collection::vec(integral_weight(4), 1..5), i in 0usize..4, m in 0usize..3) {
        let ws: Vec<Weight> = raw.iter().map(|w| Weight::new(w.coords()[..rs.rank().min(4)].iter().cloned().chain(std::iter::repeat(qi(0))).take(rs.rank()).collect())).collect();
        let c = Character::from_weight_list(rs.clone(), ws).unwrap();
        let d = c.dim();
        prop_assert_eq!(tensor_char(&c, &c).unwrap().dim(), d * d);
        prop_assert_eq!(c.dual().dual(), c.clone());
        if i <= d as usize {
            prop_assert_eq!(BigInt::from(exterior_char(&c, i).unwrap().dim()), binomial(d, i as u64));
        }
        let sym = sym_char(&c, m).unwrap();
        prop_assert_eq!(BigInt::from(sym.dim()), binomial(d + m as u64 - 1, m as u64));
    }

    #[test]
    fn commuting_components_are_integrable(h in commuting_higgs(3, 3)) {
        prop_assert!(check_integrability(&h));
    }

    #[test]
    fn integrability_iff_commutators_vanish(h in any_higgs(2, 2)) {
        let c = &h.components();
        let commute = c[0].commutator(&c[1]).unwrap().is_zero();
        prop_assert_eq!(check_integrability(&h), commute);
    }

    #[test]
    fn leibniz_rule(h1 in any_higgs(2, 2), h2 in any_higgs(3, 2), v in vector(2), w in vector(3), alpha in prop::collection::vec(rational(), 2)) {
        let t = tensor_higgs(&h1, &h2).unwrap();
        let lhs = lambda_act(&t, &alpha, &v.tensor(&w)).unwrap();
        let rhs = lambda_act(&h1, &alpha, &v).unwrap().tensor(&w).add(&v.tensor(&lambda_act(&h2, &alpha, &w).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_is_an_involution(h in any_higgs(3, 2)) {
        prop_assert_eq!(dual_higgs(&dual_higgs(&h)), h.clone());
        prop_assert_eq!(check_integrability(&dual_higgs(&h)), check_integrability(&h));
    }

    #[test]
    fn rank_one_dual_tensor_vanishes(c in prop::collection::vec(rational(), 3)) {
        let h = HiggsStructure::new(1, 3, c.into_iter().map(|x| QMatrix::diagonal(&[x])).collect()).unwrap();
        prop_assert!(tensor_higgs(&h, &dual_higgs(&h)).unwrap().is_zero());
    }

    #[test]
    fn sections_complement_rank(h in any_higgs(3, 2)) {
        let sections = higgs_sections(&h);
        prop_assert_eq!(sections.len() + stacked(&h).rank(), h.dim_v());
        for s in &sections {
            prop_assert!(!s.is_zero());
            for comp in h.components() {
                prop_assert!(comp.mul_vec(&s.coords).unwrap().iter().all(|x| *x == qi(0)));
            }
        }
    }
}

#[test]
fn external_tensor_height_is_additive() {
    for m in 2..=5 {
        for n in 2..=5 {
            let a = standard_character(&Arc::new(RootSystem::parse(&format!("A{}", m - 1)).unwrap())).unwrap();
            let b = standard_character(&Arc::new(RootSystem::parse(&format!("A{}", n - 1)).unwrap())).unwrap();
            let t = external_tensor(&a, &b).unwrap();
            assert_eq!(t.dim(), (m * n) as u64);
            assert_eq!(height_of_char(&t).unwrap(), height_of_char(&a).unwrap() + height_of_char(&b).unwrap());
        }
    }
}
