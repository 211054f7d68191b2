//! Integer-matrix invariants: determinants, gcds of minors, Smith normal form,
//! and the small amount of prime arithmetic the separability bounds need.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer matrix stored as rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(data.len(), rows);
        assert!(data.iter().all(|r| r.len() == cols));
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let data = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::new(rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let data = (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        IntMatrix::new(rows, columns.len(), data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let data = rows.iter().map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect()).collect();
        IntMatrix::new(rows.len(), cols.len(), data)
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, rank);
            for i in rank + 1..self.rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let a = m[rank][c].clone();
                let b = m[i][c].clone();
                for j in c..self.cols {
                    let v = &m[i][j] * &a - &m[rank][j] * &b;
                    m[i][j] = v;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix via Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// Non-negative gcd of all `size`×`size` minors; `size = 0` gives 1.
    pub fn gcd_of_minors(&self, size: usize) -> BigInt {
        if size == 0 {
            return BigInt::one();
        }
        if size > self.rows || size > self.cols {
            return BigInt::zero();
        }
        let mut g = BigInt::zero();
        for rs in combinations(self.rows, size) {
            for cs in combinations(self.cols, size) {
                let d = self.submatrix(&rs, &cs).determinant();
                g = g.gcd(&d);
                if g.is_one() {
                    return g;
                }
            }
        }
        g
    }

    /// Non-zero invariant factors `d_1 | d_2 | ...` of the Smith normal form.
    pub fn smith_invariant_factors(&self) -> Vec<BigInt> {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            // pick the smallest non-zero entry of the trailing block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let f = m[i][t].div_floor(&m[t][t]);
                if !f.is_zero() {
                    for j in t..cols {
                        let v = &m[i][j] - &f * &m[t][j];
                        m[i][j] = v;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let f = m[t][j].div_floor(&m[t][t]);
                if !f.is_zero() {
                    for i in t..rows {
                        let v = &m[i][j] - &f * &m[i][t];
                        m[i][j] = v;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and redo the pivot
            let pivot = m[t][t].clone();
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&pivot)));
            if let Some(i) = offending {
                for j in t..cols {
                    let v = &m[t][j] + &m[i][j];
                    m[t][j] = v;
                }
                continue;
            }
            diag.push(pivot.abs());
            t += 1;
        }
        diag
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if k <= n { Some((0..k).collect::<Vec<_>>()) } else { None };
    core::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < n - k + i {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                next = Some(succ);
                break;
            }
        }
        Some(cur)
    })
}

/// Index lists of every non-empty subset of `0..n`, ordered by bitmask.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1u64 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest prime dividing `n`, or `None` when `|n| ≤ 1` (no prime divides a unit)
/// or `n = 0` (every prime divides it; callers treat that separately).
pub fn largest_prime_factor(n: &BigInt) -> Option<BigInt> {
    let mut n = n.abs();
    if n <= BigInt::one() {
        return None;
    }
    let mut largest = None;
    let mut d = BigInt::from(2u32);
    while &d * &d <= n {
        while (&n % &d).is_zero() {
            n /= &d;
            largest = Some(d.clone());
        }
        d += 1u32;
    }
    if n > BigInt::one() {
        largest = Some(n);
    }
    largest
}

/// Convenience for callers that know the value fits.
pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Fails when the `2^n - 1` non-empty subsets of an `n`-set exceed `guard`.
pub fn check_subset_guard(n: usize, guard: u64) -> crate::Result<()> {
    let required = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    if required > guard {
        return Err(crate::Error::GuardExceeded { required, guard });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_binomially() {
        for n in 0..7 {
            for k in 0..=n + 1 {
                let all: Vec<_> = combinations(n, k).collect();
                assert_eq!(BigInt::from(all.len()), binomial(n as u64, k as u64));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], 3);
        assert_eq!(m.determinant(), BigInt::from(4));
        let m = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]], 2);
        assert_eq!(m.determinant(), BigInt::from(-1));
        let m = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]], 2);
        assert_eq!(m.determinant(), BigInt::zero());
    }

    #[test]
    fn smith_form_small_cases() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let d: Vec<i64> = m.smith_invariant_factors().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let z = IntMatrix::from_i64(&[vec![0, 0]], 2);
        assert!(z.smith_invariant_factors().is_empty());
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(largest_prime_factor(&BigInt::from(12)), Some(BigInt::from(3)));
        assert_eq!(largest_prime_factor(&BigInt::from(-49)), Some(BigInt::from(7)));
        assert_eq!(largest_prime_factor(&BigInt::from(1)), None);
        assert_eq!(largest_prime_factor(&BigInt::from(0)), None);
    }
}
