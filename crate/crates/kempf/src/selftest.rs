//! The invariant suite behind `kempf selftest`.

use std::sync::Arc;

use kempf_core::character::{
    adjoint_character, exterior_char, external_tensor, height_of_char, is_low_height, sl_standard,
    standard_character, tensor_bound_check, Characteristic,
};
use kempf_core::higgs::{check_integrability, dual_higgs, higgs_sections, lambda_act, stacked, tensor_higgs, HiggsVector};
use kempf_core::instability::{
    is_semistable, kirwan_index_set, measure, nearest_point_by_faces, nearest_point_wolfe, optimal_destabilizer,
    stratum_of, Destabilizer, State,
};
use kempf_core::lattice::{combinations, nonempty_subsets, IntMatrix};
use kempf_core::rational::{q, qi};
use kempf_core::root_system::{Basis, RootSystem, Weight};
use kempf_core::separability::{g_of, psi_bar, separability_index, Bound, CharacterMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::corpus;
use crate::json::{CharacterJson, DestabilizerJson, SeparabilityJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn arc(label: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::parse(label).expect("valid label"))
}

fn nearest_point_oracles(seed: u64, cases: usize) -> Outcome {
    for (i, (rs, ws)) in corpus::weight_sets(seed, cases).into_iter().enumerate() {
        let a = nearest_point_wolfe(&rs, &ws).map_err(e)?;
        let b = nearest_point_by_faces(&rs, &ws).map_err(e)?;
        ensure(a == b, || format!("case {i} over {}: methods disagree", rs.label()))?;
    }
    Ok(())
}

fn certificates(seed: u64, cases: usize) -> Outcome {
    for (i, (rs, ws)) in corpus::weight_sets(seed, cases).into_iter().enumerate() {
        let s = State::new(rs.clone(), ws.clone()).map_err(e)?;
        if let Destabilizer::Unstable(c) = optimal_destabilizer(&s).map_err(e)? {
            c.verify(&s).map_err(|err| format!("case {i}: {err}"))?;
            ensure(measure(&s, &c.lambda).map_err(e)? == c.q_value, || format!("case {i}: m(s, λ) ≠ q(λ)"))?;
            for w in &ws {
                ensure(rs.pair(w, &c.lambda).map_err(e)? >= c.q_value, || format!("case {i}: pairing below q(λ)"))?;
            }
        }
    }
    Ok(())
}

fn semistability(seed: u64, cases: usize) -> Outcome {
    for (i, (rs, ws)) in corpus::weight_sets(seed, cases).into_iter().enumerate() {
        let s = State::new(rs.clone(), ws).map_err(e)?;
        let ss = is_semistable(&s).map_err(e)?;
        let pts = s.weight_list();
        let mut destabilized = false;
        for subset in nonempty_subsets(pts.len()) {
            let face: Vec<Weight> = subset.iter().map(|&k| pts[k].clone()).collect();
            let lam = nearest_point_wolfe(&rs, &face).map_err(e)?;
            destabilized |= measure(&s, &lam).map_err(e)?.is_positive();
        }
        ensure(ss != destabilized, || format!("case {i}: semistability disagrees with subset projections"))?;
    }
    Ok(())
}

fn spec_examples() -> Outcome {
    let a1 = arc("A1");
    let a2 = arc("A2");
    let std1 = standard_character(&a1).map_err(e)?;
    let adj1 = adjoint_character(&a1).map_err(e)?;
    let std2 = standard_character(&a2).map_err(e)?;
    ensure(height_of_char(&std1).map_err(e)? == qi(1), || "ht(std A1) ≠ 1".into())?;
    ensure(height_of_char(&adj1).map_err(e)? == qi(2), || "ht(adj A1) ≠ 2".into())?;
    ensure(exterior_char(&std2, 2).map_err(e)? == std2.dual(), || "∧² std A2 ≠ dual".into())?;
    let b = kirwan_index_set(&std1).map_err(e)?;
    ensure(b.betas.keys().cloned().collect::<Vec<_>>() == [Weight::from_i64(&[0]), Weight::from_i64(&[1])], || {
        "B(std A1) ≠ {0, ω}".into()
    })?;
    let b = kirwan_index_set(&adj1).map_err(e)?;
    ensure(b.betas.keys().cloned().collect::<Vec<_>>() == [Weight::from_i64(&[0]), Weight::from_i64(&[2])], || {
        "B(adj A1) ≠ {0, 2ω}".into()
    })?;
    let psi = |c| separability_index(c).map(|r| r.psi).map_err(e);
    ensure(psi(&std1)? == Bound::Finite(1), || "ψ(std A1) ≠ 1".into())?;
    ensure(psi(&adj1)? == Bound::Finite(2), || "ψ(adj A1) ≠ 2".into())?;
    ensure(psi(&std2)? == Bound::Finite(2), || "ψ(std A2) ≠ 2".into())?;
    ensure(psi_bar(&std2).map_err(e)? == Bound::Finite(2), || "ψ̄(std A2) ≠ 2".into())?;
    let s = State::new(a2.clone(), [Weight::from_i64(&[1, 0]), Weight::from_i64(&[-1, 1])]).map_err(e)?;
    match optimal_destabilizer(&s).map_err(e)? {
        Destabilizer::Unstable(c) => {
            ensure(c.lambda == Weight::new(vec![qi(0), q(1, 2)]), || "A2 nearest point".into())?;
            ensure(c.q_value == q(1, 6), || "A2 q(λ) ≠ 1/6".into())
        }
        Destabilizer::Semistable => Err("ε1, ε2 state reported semistable".into()),
    }
}

fn tensor_bound() -> Outcome {
    for m in 2..=6u64 {
        for n in 2..=6u64 {
            let t = external_tensor(&sl_standard(m as usize).map_err(e)?, &sl_standard(n as usize).map_err(e)?)
                .map_err(e)?;
            ensure(height_of_char(&t).map_err(e)? == qi((m + n - 2) as i64), || format!("height of std{m} ⊠ std{n}"))?;
            for p in [2u64, 3, 5, 7, 11, 13] {
                let p = Characteristic::prime(p).map_err(e)?;
                ensure(is_low_height(&t, p).map_err(e)? == tensor_bound_check(m, n, p), || {
                    format!("bound disagrees for ({m}, {n}, {p:?})")
                })?;
            }
        }
    }
    Ok(())
}

fn strata() -> Outcome {
    for c in [standard_character(&arc("A1")), adjoint_character(&arc("A1")), standard_character(&arc("A2"))] {
        let c = c.map_err(e)?;
        let b = kirwan_index_set(&c).map_err(e)?;
        let support = c.support();
        for subset in nonempty_subsets(support.len()) {
            let s = State::new(c.ambient().clone(), subset.iter().map(|&i| support[i].clone())).map_err(e)?;
            let beta = stratum_of(&s, &c).map_err(e)?;
            ensure(b.contains(&beta), || "stratum index outside B".into())?;
            ensure(beta.is_zero() == is_semistable(&s).map_err(e)?, || "β = 0 does not match semistability".into())?;
        }
    }
    Ok(())
}

fn smith_cross_check(seed: u64, cases: usize) -> Outcome {
    let mut rng = corpus::rng(seed);
    for i in 0..cases {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=6);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntMatrix::from_i64(&data, cols);
        let snf: BigInt = m.smith_invariant_factors().iter().product();
        let g = g_of(&CharacterMatrix::from_matrix(m.clone()));
        ensure(g == snf, || format!("matrix {i}: g = {g}, Smith product = {snf}"))?;
        let r = m.rank();
        let divides = r == 0
            || combinations(rows, r)
                .all(|rs| combinations(cols, r).all(|cs| (m.submatrix(&rs, &cs).determinant() % &g).is_zero()));
        ensure(divides, || format!("matrix {i}: g does not divide every maximal minor"))?;
    }
    Ok(())
}

fn higgs_algebra(seed: u64, cases: usize) -> Outcome {
    let mut rng = corpus::rng(seed);
    for i in 0..cases {
        let n = rng.gen_range(2..=3);
        let c = corpus::commuting_higgs(&mut rng, n, 3);
        ensure(check_integrability(&c), || format!("instance {i}: commuting components rejected"))?;
        let nc = corpus::noncommuting_higgs(&mut rng, n);
        ensure(!check_integrability(&nc), || format!("instance {i}: non-commuting components accepted"))?;
        let h1 = corpus::higgs(&mut rng, 2, 2);
        let h2 = corpus::higgs(&mut rng, n, 2);
        let v = HiggsVector::new(corpus::vector(&mut rng, 2));
        let w = HiggsVector::new(corpus::vector(&mut rng, n));
        let alpha = corpus::vector(&mut rng, 2);
        let t = tensor_higgs(&h1, &h2).map_err(e)?;
        let lhs = lambda_act(&t, &alpha, &v.tensor(&w)).map_err(e)?;
        let rhs = lambda_act(&h1, &alpha, &v)
            .map_err(e)?
            .tensor(&w)
            .add(&v.tensor(&lambda_act(&h2, &alpha, &w).map_err(e)?))
            .map_err(e)?;
        ensure(lhs == rhs, || format!("instance {i}: Leibniz rule fails"))?;
        ensure(dual_higgs(&dual_higgs(&h2)) == h2, || format!("instance {i}: dual is not an involution"))?;
        ensure(higgs_sections(&h2).len() + stacked(&h2).rank() == n, || format!("instance {i}: sections + rank ≠ dim"))?;
        let line = corpus::higgs(&mut rng, 1, 3);
        ensure(tensor_higgs(&line, &dual_higgs(&line)).map_err(e)?.is_zero(), || {
            format!("instance {i}: L ⊗ L* has non-zero Higgs field")
        })?;
    }
    Ok(())
}

fn json_round_trips() -> Outcome {
    let a2 = arc("A2");
    let adj = adjoint_character(&a2).map_err(e)?;
    for basis in [Basis::Fundamental, Basis::SimpleRoot] {
        let text = serde_json::to_string(&CharacterJson::encode(&adj, basis).map_err(e)?).map_err(e)?;
        let back = serde_json::from_str::<CharacterJson>(&text).map_err(e)?.decode().map_err(e)?;
        ensure(back == adj, || "character round trip".into())?;
    }
    let s = State::new(a2.clone(), [Weight::from_i64(&[1, 0]), Weight::from_i64(&[-1, 1])]).map_err(e)?;
    let d = optimal_destabilizer(&s).map_err(e)?;
    let text = serde_json::to_string(&DestabilizerJson::encode(&a2, &d, Basis::Fundamental).map_err(e)?).map_err(e)?;
    ensure(serde_json::from_str::<DestabilizerJson>(&text).map_err(e)?.decode().map_err(e)? == d, || {
        "certificate round trip".into()
    })?;
    let r = separability_index(&adj).map_err(e)?;
    let text = serde_json::to_string(&SeparabilityJson::encode(&r, Default::default())).map_err(e)?;
    ensure(serde_json::from_str::<SeparabilityJson>(&text).map_err(e)?.decode().map_err(e)? == r, || {
        "separability report round trip".into()
    })
}

fn w_stable_supports() -> Outcome {
    for label in ["A2", "B2", "G2", "A3", "C3", "A1xA2"] {
        let rs = arc(label);
        for c in [adjoint_character(&rs), standard_character(&rs)] {
            let Ok(c) = c else { continue };
            let s = State::new(rs.clone(), c.support()).map_err(e)?;
            ensure(is_semistable(&s).map_err(e)?, || format!("{label}: W-stable support unstable"))?;
        }
    }
    Ok(())
}

type NamedCheck = (&'static str, Box<dyn Fn() -> Outcome>);

/// Runs every check; `cases` sizes the randomized ones.
pub fn run(seed: u64, cases: usize) -> Report {
    let checks: Vec<NamedCheck> = vec![
        ("spec_examples", Box::new(spec_examples)),
        ("nearest_point_oracles", Box::new(move || nearest_point_oracles(seed, cases))),
        ("optimality_certificates", Box::new(move || certificates(seed, cases))),
        ("semistability_equivalence", Box::new(move || semistability(seed, cases))),
        ("w_stable_supports_semistable", Box::new(w_stable_supports)),
        ("tensor_bound", Box::new(tensor_bound)),
        ("kirwan_strata", Box::new(strata)),
        ("smith_cross_check", Box::new(move || smith_cross_check(seed, cases))),
        ("higgs_algebra", Box::new(move || higgs_algebra(seed, cases))),
        ("json_round_trips", Box::new(json_round_trips)),
    ];
    let checks: Vec<Check> = checks
        .into_iter()
        .map(|(name, f)| {
            let r = f();
            Check { name, passed: r.is_ok(), detail: r.err() }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    Report { seed, cases, passed, failed: checks.len() - passed, checks }
}

#[cfg(test)]
mod tests {
    #[test]
    fn small_selftest_passes() {
        let r = super::run(1, 10);
        assert_eq!(r.failed, 0, "{:?}", r.checks);
    }
}
