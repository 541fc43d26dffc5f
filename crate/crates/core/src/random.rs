//! Seeded generators for test inputs and the CLI `random` command.
//!
//! All generators use ChaCha8 seeded from a `u64`, so outputs are identical
//! across platforms and runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matcore::{dot, norm, Matrix};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in `[lo, hi)`.
pub fn uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Log-uniform draw in `[lo, hi)`.
pub fn log_uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    uniform(rng, lo.ln(), hi.ln()).exp()
}

pub fn uniform_vector(rng: &mut SeededRng, len: usize) -> Vec<f64> {
    (0..len).map(|_| uniform(rng, -1.0, 1.0)).collect()
}

/// Random orthogonal matrix by Gram-Schmidt on uniform columns.
pub fn random_orthogonal(rng: &mut SeededRng, dim: usize) -> Matrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = uniform_vector(rng, dim);
        for _ in 0..2 {
            for c in &cols {
                let d = dot(c, &v);
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= d * y);
            }
        }
        let nv = norm(&v);
        if nv > 1e-3 {
            v.iter_mut().for_each(|x| *x /= nv);
            cols.push(v);
        }
    }
    Matrix::from_columns(&cols)
}

/// Random SPD matrix `Q diag(d) Q^T` with eigenvalues log-uniform in
/// `[0.2, 5]`.
pub fn random_spd(dim: usize, seed: u64) -> Matrix {
    random_spd_with(&mut rng(seed), dim, 0.2, 5.0)
}

pub fn random_spd_with(rng: &mut SeededRng, dim: usize, lo: f64, hi: f64) -> Matrix {
    let q = random_orthogonal(rng, dim);
    let d: Vec<f64> = (0..dim).map(|_| log_uniform(rng, lo, hi)).collect();
    let qd = Matrix::from_fn(dim, dim, |i, j| q[(i, j)] * d[j]);
    (&qd * &q.transpose()).symmetrized()
}

/// Random symmetric matrix with entries in `[-scale, scale]`.
pub fn random_symmetric(rng: &mut SeededRng, dim: usize, scale: f64) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let x = uniform(rng, -scale, scale);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}
