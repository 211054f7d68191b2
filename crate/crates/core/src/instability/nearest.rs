//! The point of a weight polytope closest to the origin under the invariant form.
//!
//! Two independent exact methods:
//!
//! - [`nearest_point_by_faces`] enumerates affinely independent subsets of at
//!   most `rank + 1` points. For each it projects the origin onto their affine
//!   hull by the reduced normal equations, keeps projections with non-negative
//!   barycentric coordinates, and takes the one of least norm.
//! - [`nearest_point_wolfe`] runs Wolfe's minimum-norm-point iteration. Its
//!   affine minimizers come from the bordered KKT system.
//!
//! Both see the points only through the invariant form. The minimizer is
//! unique because the norm is strictly convex.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::lattice::combinations;
use crate::linalg::QMatrix;
use crate::rational::{dot, Q};
use crate::root_system::{RootSystem, Weight};
use crate::{Error, Result};

const WOLFE_MAX_MAJOR_ITERATIONS: usize = 100_000;

fn prepare(rs: &RootSystem, ws: &[Weight]) -> Result<(Vec<Weight>, QMatrix)> {
    if ws.is_empty() {
        return Err(Error::EmptyState);
    }
    for w in ws {
        rs.check(w)?;
    }
    let pts: Vec<Weight> = ws.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = pts.len();
    let mut gram = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rs.inner_unchecked(&pts[i], &pts[j]);
            gram[(j, i)] = v.clone();
            gram[(i, j)] = v;
        }
    }
    Ok((pts, gram))
}

fn combine(rank: usize, pts: &[Weight], idx: &[usize], coeffs: &[Q]) -> Weight {
    let mut acc = Weight::zero(rank);
    for (&i, c) in idx.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&pts[i].scale(c));
        }
    }
    acc
}

fn quad_form(gram: &QMatrix, idx: &[usize], t: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            acc += &t[a] * &t[b] * &gram[(i, j)];
        }
    }
    acc
}

/// Face enumeration (Carathéodory).
pub fn nearest_point_by_faces(rs: &RootSystem, ws: &[Weight]) -> Result<Weight> {
    let (pts, gram) = prepare(rs, ws)?;
    let n = pts.len();
    let max_size = (rs.rank() + 1).min(n);
    let mut best: Option<(Q, Vec<usize>, Vec<Q>)> = None;
    for size in 1..=max_size {
        for subset in combinations(n, size) {
            let Some(t) = project_on_affine_hull(&gram, &subset) else {
                continue;
            };
            if t.iter().any(Signed::is_negative) {
                continue;
            }
            let qv = quad_form(&gram, &subset, &t);
            if best.as_ref().is_none_or(|(b, _, _)| qv < *b) {
                best = Some((qv, subset, t));
            }
        }
    }
    let (_, idx, t) = best.expect("every singleton is a feasible face");
    Ok(combine(rs.rank(), &pts, &idx, &t))
}

/// Barycentric coordinates of the projection of 0 onto the affine hull of
/// `subset`, from `x = p_0 + Σ s_k (p_k - p_0)`; `None` if affinely dependent.
fn project_on_affine_hull(gram: &QMatrix, subset: &[usize]) -> Option<Vec<Q>> {
    let m = subset.len() - 1;
    if m == 0 {
        return Some(alloc::vec![Q::one()]);
    }
    let p0 = subset[0];
    let g00 = &gram[(p0, p0)];
    let g = QMatrix::from_fn(m, m, |k, l| {
        let (i, j) = (subset[k + 1], subset[l + 1]);
        &gram[(i, j)] - &gram[(i, p0)] - &gram[(p0, j)] + g00
    });
    let rhs: Vec<Q> = (0..m).map(|k| g00 - &gram[(p0, subset[k + 1])]).collect();
    let s = g.solve(&rhs)?;
    let mut t = Vec::with_capacity(m + 1);
    t.push(Q::one() - s.iter().fold(Q::zero(), |a, b| a + b));
    t.extend(s);
    Some(t)
}

/// Minimizer of `vᵀ P v` subject to `Σ v = 1` over the points `s`, via the
/// bordered system `[P 1; 1ᵀ 0][v; μ] = [0; 1]`.
fn affine_minimizer(ip: &impl Fn(usize, usize) -> Q, s: &[usize]) -> Option<Vec<Q>> {
    let k = s.len();
    let border = QMatrix::from_fn(k + 1, k + 1, |i, j| match (i < k, j < k) {
        (true, true) => ip(s[i], s[j]),
        (false, false) => Q::zero(),
        _ => Q::one(),
    });
    let mut rhs = alloc::vec![Q::zero(); k + 1];
    rhs[k] = Q::one();
    let mut sol = border.solve(&rhs)?;
    sol.truncate(k);
    Some(sol)
}

/// Wolfe's minimum-norm-point algorithm in exact arithmetic.
///
/// Pairings are evaluated lazily through `F p_j` (`F` the form on fundamental
/// coordinates), so large orbits never materialize the full Gram matrix.
pub fn nearest_point_wolfe(rs: &RootSystem, ws: &[Weight]) -> Result<Weight> {
    if ws.is_empty() {
        return Err(Error::EmptyState);
    }
    for w in ws {
        rs.check(w)?;
    }
    let pts: Vec<Weight> = ws.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = pts.len();
    let form = rs.fundamental_gram();
    let fp: Vec<Vec<Q>> = pts.iter().map(|p| form.mul_vec(p.coords())).collect::<Result<_>>()?;
    let ip = |i: usize, j: usize| dot(pts[i].coords(), &fp[j]);

    let start = (0..n).min_by(|&a, &b| ip(a, a).cmp(&ip(b, b))).expect("non-empty");
    let mut active: Vec<usize> = alloc::vec![start];
    let mut x: Vec<Q> = alloc::vec![Q::one()];

    for _ in 0..WOLFE_MAX_MAJOR_ITERATIONS {
        let current = combine(rs.rank(), &pts, &active, &x);
        let xp: Vec<Q> = fp.iter().map(|f| dot(current.coords(), f)).collect();
        let xx = active.iter().zip(&x).fold(Q::zero(), |acc, (&i, c)| acc + c * &xp[i]);
        let (j, best) = xp.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).expect("non-empty");
        if *best >= xx || active.contains(&j) {
            return Ok(current);
        }
        active.push(j);
        x.push(Q::zero());

        loop {
            let v = affine_minimizer(&ip, &active).ok_or(Error::Internal("Wolfe active set lost affine independence"))?;
            if v.iter().all(Signed::is_positive) {
                x = v;
                break;
            }
            let mut theta = Q::one();
            for (xk, vk) in x.iter().zip(&v) {
                if !vk.is_positive() {
                    let denom = xk - vk;
                    if denom.is_positive() {
                        let r = xk / denom;
                        if r < theta {
                            theta = r;
                        }
                    }
                }
            }
            let one_minus = Q::one() - &theta;
            x = x.iter().zip(&v).map(|(xk, vk)| &theta * vk + &one_minus * xk).collect();
            let keep: Vec<bool> = x.iter().map(|c| !c.is_zero()).collect();
            if keep.iter().all(|&k| k) {
                return Err(Error::Internal("Wolfe minor cycle removed no point"));
            }
            active = active.iter().zip(&keep).filter(|(_, &k)| k).map(|(&i, _)| i).collect();
            x = x.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(c, _)| c).collect();
        }
    }
    Err(Error::Internal("Wolfe iteration limit reached"))
}

/// The nearest point, computed by Wolfe's method.
pub fn nearest_point(rs: &RootSystem, ws: &[Weight]) -> Result<Weight> {
    nearest_point_wolfe(rs, ws)
}

/// Runs both methods and fails if they disagree.
pub fn nearest_point_checked(rs: &RootSystem, ws: &[Weight]) -> Result<Weight> {
    let a = nearest_point_wolfe(rs, ws)?;
    let b = nearest_point_by_faces(rs, ws)?;
    if a != b {
        return Err(Error::Internal("nearest-point methods disagree"));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(label: &str) -> RootSystem {
        RootSystem::parse(label).unwrap()
    }

    fn both(rs: &RootSystem, ws: &[Weight]) -> Weight {
        let a = nearest_point_wolfe(rs, ws).unwrap();
        let b = nearest_point_by_faces(rs, ws).unwrap();
        assert_eq!(a, b);
        a
    }

    #[test]
    fn rank_one_examples() {
        let a1 = rs("A1");
        let w = Weight::from_i64(&[1]);
        assert!(both(&a1, &[w.clone(), w.neg()]).is_zero());
        let p = both(&a1, &[w.neg()]);
        assert_eq!(p, w.neg());
        assert_eq!(a1.norm_sq(&p).unwrap(), q(1, 2));
    }

    #[test]
    fn a2_midpoint() {
        let a2 = rs("A2");
        let e1 = Weight::from_i64(&[1, 0]);
        let e2 = Weight::from_i64(&[-1, 1]);
        let e3 = Weight::from_i64(&[0, -1]);
        let p = both(&a2, &[e1, e2]);
        assert_eq!(p, e3.scale(&q(-1, 2)));
        assert_eq!(a2.norm_sq(&p).unwrap(), q(1, 6));
    }

    #[test]
    fn interior_of_segment_and_vertex_cases() {
        // a segment whose nearest point is an endpoint
        let a1 = rs("A1");
        let p = both(&a1, &[Weight::from_i64(&[2]), Weight::from_i64(&[5])]);
        assert_eq!(p, Weight::from_i64(&[2]));
        let b2 = rs("B2");
        let ws = [Weight::from_i64(&[1, 0]), Weight::from_i64(&[0, 1]), Weight::from_i64(&[2, -1])];
        both(&b2, &ws);
    }

    #[test]
    fn empty_and_mismatched_inputs() {
        let a2 = rs("A2");
        assert_eq!(nearest_point(&a2, &[]), Err(Error::EmptyState));
        assert!(nearest_point(&a2, &[Weight::from_i64(&[1])]).is_err());
    }
}
