//! Independent ground truth for the closed forms: exact characteristic
//! polynomials of explicit matrices and floating-point spectra.
//!
//! The exact path reduces the matrix to Hessenberg form modulo a set of
//! word-sized primes and lifts the coefficients by Chinese remaindering.
//! The number of primes comes from a rigorous coefficient bound, so the
//! lift is exact. The numeric path is a symmetric eigensolver and shares
//! no code with the exact one.

use std::sync::OnceLock;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::graphs::Graph;
use crate::poly::IntPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("eigensolver did not converge")]
    ConvergenceFailure,
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// A symmetric integer matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricIntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl SymmetricIntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, OracleError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(OracleError::NotSquare {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
        }
        let asymmetric = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| rows[i][j] != rows[j][i]);
        if let Some((i, j)) = asymmetric {
            return Err(OracleError::NotSymmetric(i, j));
        }
        Ok(SymmetricIntMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .take(self.n)
            .collect()
    }

    /// `x·I - A`.
    pub fn shifted(&self, x: i64) -> SymmetricIntMatrix {
        let mut m = self.clone();
        for v in m.entries.iter_mut() {
            *v = -*v;
        }
        for i in 0..self.n {
            m.entries[i * self.n + i] += x;
        }
        m
    }

    pub fn is_adjacency(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0) && self.entries.iter().all(|&v| v == 0 || v == 1)
    }

    fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|&v| (v as f64) * (v as f64)).sum()
    }
}

pub fn adjacency_matrix(g: &Graph) -> SymmetricIntMatrix {
    let n = g.vertex_count();
    let mut entries = vec![0i64; n * n];
    for &[u, v] in g.edges() {
        entries[u * n + v] = 1;
        entries[v * n + u] = 1;
    }
    SymmetricIntMatrix { n, entries }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes just below 2^31, largest first.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut c: u64 = (1 << 31) - 1;
        while out.len() < 2048 {
            if is_prime(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Characteristic polynomial mod `p` via Hessenberg reduction, ascending
/// coefficients of length `n + 1`.
fn char_poly_mod(a: &SymmetricIntMatrix, p: u64) -> Vec<u64> {
    let n = a.n;
    let mut h: Vec<u64> = a
        .entries
        .iter()
        .map(|&v| v.rem_euclid(p as i64) as u64)
        .collect();
    let at = |i: usize, j: usize| i * n + j;

    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[at(i, j)] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                h.swap(at(piv, c), at(j + 1, c));
            }
            for r in 0..n {
                h.swap(at(r, piv), at(r, j + 1));
            }
        }
        let inv = inv_mod(h[at(j + 1, j)], p);
        for i in j + 2..n {
            let u = h[at(i, j)] * inv % p;
            if u == 0 {
                continue;
            }
            // row_i -= u * row_{j+1}
            let neg_u = p - u;
            for c in 0..n {
                let t = h[at(j + 1, c)];
                if t != 0 {
                    h[at(i, c)] = (h[at(i, c)] + neg_u * t) % p;
                }
            }
            // col_{j+1} += u * col_i
            for r in 0..n {
                let t = h[at(r, i)];
                if t != 0 {
                    h[at(r, j + 1)] = (h[at(r, j + 1)] + u * t) % p;
                }
            }
        }
    }

    // p_m = (x - h_mm) p_{m-1} - Σ_{i=1}^{m-1} h_{m-i,m} (Π_{t=m-i+1}^{m} h_{t,t-1}) p_{m-i-1}
    // with 1-based indices.
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for m in 1..=n {
        let hmm = h[at(m - 1, m - 1)];
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + (p - hmm) * c % p) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = t * h[at(m - i, m - i - 1)] % p;
            if t == 0 {
                break;
            }
            let coef = h[at(m - i - 1, m - 1)] * t % p;
            if coef == 0 {
                continue;
            }
            let neg = p - coef;
            for (d, &c) in polys[m - i - 1].iter().enumerate() {
                next[d] = (next[d] + neg * c) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Bits needed for `max_i |c_i|` of `det(λI - A)`.
///
/// With eigenvalues `μ_j`, `|c_{n-i}| <= e_i(|μ|) <= C(n,i) (S/n)^i` by
/// Maclaurin, and `S = Σ|μ_j| <= sqrt(n · Σμ_j²) = sqrt(n · ||A||_F²)`.
fn coefficient_bits(a: &SymmetricIntMatrix) -> u64 {
    let n = a.n as f64;
    if a.n == 0 {
        return 1;
    }
    let mean = (a.frobenius_sq() / n).sqrt();
    let log_mean = if mean > 0.0 {
        mean.log2()
    } else {
        f64::NEG_INFINITY
    };
    let mut log_binom = 0.0f64;
    let mut best = 0.0f64;
    for i in 1..=a.n {
        log_binom += ((n - i as f64 + 1.0) / i as f64).log2();
        let v = log_binom + i as f64 * log_mean;
        if v > best {
            best = v;
        }
    }
    // slack for floating-point error in the bound itself
    best.ceil() as u64 + 16
}

/// Exact `det(λI - A)` as a monic integer polynomial of degree `n`.
///
/// An empty matrix yields the constant polynomial 1.
pub fn char_poly_exact(a: &SymmetricIntMatrix) -> IntPoly {
    let n = a.n;
    if n == 0 {
        return IntPoly::one();
    }
    // need modulus > 2 * bound for the symmetric lift
    let needed_bits = coefficient_bits(a) + 2;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for &p in primes() {
        if modulus.bits() > needed_bits {
            break;
        }
        let residues = char_poly_mod(a, p);
        let pb = BigInt::from(p);
        let m_mod_p = (&modulus % &pb).to_u64().unwrap();
        let m_inv = inv_mod(m_mod_p, p);
        for (c, &r) in acc.iter_mut().zip(&residues) {
            let c_mod_p = c.mod_floor(&pb).to_u64().unwrap();
            let diff = (r + p - c_mod_p) % p;
            let t = diff * m_inv % p;
            *c += &modulus * BigInt::from(t);
        }
        modulus *= pb;
    }
    assert!(modulus.bits() > needed_bits, "ran out of primes");
    let half = &modulus >> 1;
    let coeffs = acc
        .into_iter()
        .map(|c| if c > half { c - &modulus } else { c })
        .collect();
    IntPoly::new(coeffs)
}

pub fn char_poly_of_graph(g: &Graph) -> IntPoly {
    char_poly_exact(&adjacency_matrix(g))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &SymmetricIntMatrix) -> BigInt {
    let n = a.n;
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// All eigenvalues, ascending, accurate to roughly `tol`.
pub fn eigenvalues_numeric(a: &SymmetricIntMatrix, tol: f64) -> Result<Vec<f64>, OracleError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(OracleError::BadTolerance);
    }
    let n = a.n;
    let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j) as f64);
    // convergence threshold well below the caller's tolerance
    let eps = (tol * 1e-3).max(f64::EPSILON);
    let eig = SymmetricEigen::try_new(m, eps, 10_000).ok_or(OracleError::ConvergenceFailure)?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| x.total_cmp(y));
    Ok(vals)
}

/// The smallest eigenvalue and how many eigenvalues lie within
/// `tol · max(1, |λ_min|)` of it.
pub fn min_eigenvalue_multiplicity(vals: &[f64], tol: f64) -> Option<(f64, usize)> {
    let &min = vals.first()?;
    let window = tol * min.abs().max(1.0);
    Some((min, vals.iter().take_while(|&&v| v - min <= window).count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly_of_graph(&Graph::complete(2)), p(&[-1, 0, 1]));
        assert_eq!(char_poly_of_graph(&Graph::complete(3)), p(&[-2, -3, 0, 1]));
        assert_eq!(char_poly_of_graph(&Graph::empty(4)), p(&[0, 0, 0, 0, 1]));
        assert_eq!(char_poly_of_graph(&Graph::path(4)), p(&[1, 0, -3, 0, 1]));
        assert_eq!(char_poly_of_graph(&Graph::empty(0)), IntPoly::one());
    }

    #[test]
    fn char_poly_of_general_symmetric_matrix() {
        let a = SymmetricIntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]])
            .unwrap();
        // (λ-2)((λ-2)^2 - 2)
        assert_eq!(char_poly_exact(&a), p(&[-4, 10, -6, 1]));
    }

    #[test]
    fn large_coefficients_lift_correctly() {
        // K_40 has χ = (λ - 39)(λ + 1)^39 with coefficients well past 2^62
        let expected = &p(&[-39, 1]) * &p(&[1, 1]).pow(39);
        assert_eq!(char_poly_of_graph(&Graph::complete(40)), expected);
    }

    #[test]
    fn matrix_validation() {
        assert!(matches!(
            SymmetricIntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]),
            Err(OracleError::NotSymmetric(0, 1))
        ));
        assert!(matches!(
            SymmetricIntMatrix::from_rows(&[vec![0, 1], vec![1]]),
            Err(OracleError::NotSquare { .. })
        ));
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(
            adjacency_matrix(&Graph::complete(2)).rows(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            adjacency_matrix(&Graph::complete(3)).rows(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(
            adjacency_matrix(&Graph::empty(3)).rows(),
            vec![vec![0; 3]; 3]
        );
        assert!(adjacency_matrix(&Graph::path(5)).is_adjacency());
    }

    #[test]
    fn determinant_matches_char_poly_at_integers() {
        let a = adjacency_matrix(&crate::graphs::corona(&Graph::complete(3), &Graph::path(3)));
        let chi = char_poly_exact(&a);
        for x in -3..=3 {
            assert_eq!(
                chi.eval_int(&BigInt::from(x)),
                determinant(&a.shifted(x)),
                "x = {x}"
            );
        }
    }

    #[test]
    fn numeric_examples() {
        let vals = eigenvalues_numeric(&adjacency_matrix(&Graph::complete(3)), 1e-12).unwrap();
        for (v, e) in vals.iter().zip([-1.0, -1.0, 2.0]) {
            assert!((v - e).abs() < 1e-12);
        }
        let vals = eigenvalues_numeric(&adjacency_matrix(&Graph::path(4)), 1e-12).unwrap();
        let expected: Vec<f64> = (1..=4)
            .map(|j| 2.0 * (j as f64 * std::f64::consts::PI / 5.0).cos())
            .rev()
            .collect();
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
        assert_eq!(
            eigenvalues_numeric(&adjacency_matrix(&Graph::path(2)), 0.0),
            Err(OracleError::BadTolerance)
        );
    }

    #[test]
    fn min_multiplicity_window() {
        assert_eq!(
            min_eigenvalue_multiplicity(&[-2.0, -2.0 + 1e-12, 0.5], 1e-9),
            Some((-2.0, 2))
        );
        assert_eq!(min_eigenvalue_multiplicity(&[], 1e-9), None);
    }

    #[test]
    fn coefficient_bound_covers_complete_graphs() {
        let a = adjacency_matrix(&Graph::complete(40));
        let chi = char_poly_exact(&a);
        let max_bits = chi.coeffs().iter().map(BigInt::bits).max().unwrap();
        assert!(coefficient_bits(&a) >= max_bits);
    }
}
