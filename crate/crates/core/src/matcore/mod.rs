//! Deterministic dense kernels for the small symmetric and antisymmetric
//! matrices everything else is built from.

mod eigh;
mod general;
mod matrix;

use std::ops::Deref;

pub use eigh::{eigh, SymmetricEigen};
pub use general::eigvals_general;
pub use matrix::{dot, norm, Matrix};

use crate::error::{Error, Result};
use crate::tolerance::PD_TOL;

/// Eigen-decomposition of a matrix that must be symmetric positive definite.
pub fn spd_eigen(a: &Matrix) -> Result<SymmetricEigen> {
    let e = eigh(a)?;
    let scale = e.values.iter().fold(0.0f64, |m, w| m.max(w.abs()));
    let min = e.values.first().copied().unwrap_or(0.0);
    if a.rows() == 0 || min <= PD_TOL * scale || min <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    Ok(e)
}

/// Positive square root of an SPD matrix.
pub fn sqrt_spd(a: &Matrix) -> Result<Matrix> {
    Ok(spd_eigen(a)?.map_values(f64::sqrt))
}

/// Inverse of an SPD matrix.
pub fn inv_spd(a: &Matrix) -> Result<Matrix> {
    Ok(spd_eigen(a)?.map_values(f64::recip))
}

/// `A^{-1/2}` for SPD `A`.
pub fn inv_sqrt_spd(a: &Matrix) -> Result<Matrix> {
    Ok(spd_eigen(a)?.map_values(|w| 1.0 / w.sqrt()))
}

/// A symmetric positive definite matrix, validated on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SpdMatrix(Matrix);

impl SpdMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        spd_eigen(&m)?;
        Ok(Self(m.symmetrized()))
    }

    pub fn into_inner(self) -> Matrix {
        self.0
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }
}

impl Deref for SpdMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}
