//! Exact dense linear algebra over Gaussian rationals.
//!
//! Matrices are row-major `Vec<Vec<Scalar>>`. Everything here is small
//! (at most a few hundred unknowns) and sparse enough that plain
//! Gauss-Jordan elimination with zero skipping is adequate.

use num_traits::Zero;

use crate::scalar::{Rational, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

/// Builds a matrix whose columns are the given vectors.
pub fn from_columns(cols: &[Vec<Scalar>], rows: usize) -> Matrix {
    let mut m = zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        debug_assert_eq!(col.len(), rows);
        for (i, v) in col.iter().enumerate() {
            m[i][j] = v.clone();
        }
    }
    m
}

/// Reduces `m` to reduced row echelon form in place and returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for v in m[r].iter_mut().skip(c) {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    let d = &f * pv;
                    row[j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// A particular solution of `m x = b` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the null space of `m`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[row][f];
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            let mut acc = Scalar::zero();
            for (a, b) in row.iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
        .collect()
}

/// Conjugate transpose.
pub fn adjoint(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut t = zeros(cols, rows);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                t[j][i] = v.conj();
            }
        }
    }
    t
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let inner = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = zeros(n, m);
    for i in 0..n {
        for k in 0..inner {
            let aik = &a[i][k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

/// Hermitian inner product `Σ conj(x_i) y_i`.
pub fn inner(x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(&a.conj() * b);
        }
    }
    acc
}

pub fn norm_sq(x: &[Scalar]) -> Rational {
    x.iter().fold(Rational::zero(), |acc, v| acc + v.norm_sq())
}

/// Exact minimum-norm least-squares solution of `m x = b`.
///
/// Returns the solution together with the residual `m x - b`; the residual
/// is zero exactly when the system is consistent.
pub fn min_norm_least_squares(m: &Matrix, b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let cols = m.first().map_or(0, Vec::len);
    if cols == 0 {
        let residual = b.iter().map(|v| -v).collect();
        return (Vec::new(), residual);
    }
    let mh = adjoint(m);
    let gram = mat_mul(&mh, m);
    let rhs = mat_vec(&mh, b);
    let mut x = solve(&gram, &rhs).expect("normal equations are always consistent");
    // null(MᴴM) = null(M); remove its component to reach the minimum norm.
    let mut ortho: Vec<Vec<Scalar>> = Vec::new();
    for mut v in nullspace(&gram) {
        for u in &ortho {
            let coef = &inner(u, &v) / &Scalar::from_rational(norm_sq(u));
            for (vi, ui) in v.iter_mut().zip(u) {
                if !ui.is_zero() {
                    *vi -= &(&coef * ui);
                }
            }
        }
        ortho.push(v);
    }
    for u in &ortho {
        let coef = &inner(u, &x) / &Scalar::from_rational(norm_sq(u));
        if coef.is_zero() {
            continue;
        }
        for (xi, ui) in x.iter_mut().zip(u) {
            if !ui.is_zero() {
                *xi -= &(&coef * ui);
            }
        }
    }
    let mx = mat_vec(m, &x);
    let residual = mx.iter().zip(b).map(|(a, c)| a - c).collect();
    (x, residual)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
