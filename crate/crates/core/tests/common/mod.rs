//! Independent oracles shared by the integration tests. Nothing here calls
//! into the counting or elimination code paths.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use smilansky::smilansky::Pencil;

/// Gauss–Hermite nodes and weights for the weight `e^{-y²}` by the
/// Golub–Welsch eigenvalue method.
pub fn gauss_hermite(points: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jac = DMatrix::<f64>::zeros(points, points);
    for k in 1..points {
        let b = (k as f64 / 2.0).sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let eig = SymmetricEigen::new(jac);
    let mu0 = std::f64::consts::PI.sqrt();
    let mut pairs: Vec<(f64, f64)> = (0..points)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

/// All eigenvalues of a dense symmetric tridiagonal matrix with zero
/// diagonal, ascending.
pub fn dense_zero_diag_eigs(off: &[f64]) -> Vec<f64> {
    let n = off.len() + 1;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (i, &b) in off.iter().enumerate() {
        m[(i, i + 1)] = b;
        m[(i + 1, i)] = b;
    }
    let mut v: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Eigenvalues of the pencil `(K, B)` (B diagonal) by a dense solve of
/// `B^{-1/2} K B^{-1/2}`, ascending.
pub fn dense_pencil_eigs(p: &Pencil<f64>) -> Vec<f64> {
    let n = p.size();
    let w: Vec<f64> = p.mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    let mut k = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = p.diag[i] * w[i] * w[i];
    }
    for &(i, j, v) in &p.upper {
        k[(i, j)] += v * w[i] * w[j];
        k[(j, i)] += v * w[i] * w[j];
    }
    let mut v: Vec<f64> = k.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// `det(x I - T)` for a zero-diagonal symmetric tridiagonal `T` by dense LU.
pub fn dense_char_poly(off: &[f64], x: f64) -> f64 {
    let n = off.len() + 1;
    let mut m = DMatrix::<f64>::identity(n, n) * x;
    for (i, &b) in off.iter().enumerate() {
        m[(i, i + 1)] = -b;
        m[(i + 1, i)] = -b;
    }
    m.determinant()
}
