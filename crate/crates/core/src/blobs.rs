//! Phase-space ellipsoids and quantum blobs.
//!
//! An [`Ellipsoid`] is `{z : (z - z0)^T F (z - z0) <= hbar}`. A
//! [`QuantumBlob`] is the image `z0 + S(B(sqrt hbar))` of the ball of radius
//! `sqrt hbar` under a symplectic `S`; as an ellipsoid its shape matrix is
//! `F = (S S^T)^{-1}`, which is itself symplectic.
//!
//! The Gromov width of an ellipsoid is `pi hbar / l_1(F)` with `l_1` the
//! largest symplectic eigenvalue, so an ellipsoid contains a quantum blob
//! exactly when `l_1(F) <= 1`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matcore::{eigh, eigvals_general, inv_spd, spd_eigen, Matrix, SpdMatrix};
use crate::sympcore::{
    standard_j, symplectic_inverse, PhasePoint, SymplecticMatrix, SymplecticPlane,
};
use crate::tolerance::{ADM_TOL, BLOB_TOL, CAP_TOL, HERM_TOL, WIL_TOL};
use crate::williamson::{
    symplectic_spectrum, williamson_diagonalize, williamson_diagonalize_shuffled,
    SymplecticSpectrum, WilliamsonForm,
};

/// Seed of the second, independently rotated normalization used to confirm
/// that companion blobs do not depend on the normalizer.
const COMPANION_CHECK_SEED: u64 = 0xc0de;

fn validate_hbar(hbar: f64) -> Result<()> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hbar must be positive and finite, got {hbar}"
        )));
    }
    Ok(())
}

fn check_center(center: &PhasePoint, dim: usize) -> Result<()> {
    if center.coords().len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: center.coords().len(),
        });
    }
    Ok(())
}

/// `{z : (z - center)^T F (z - center) <= hbar}` with `F` SPD.
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipsoid {
    center: PhasePoint,
    shape: SpdMatrix,
    hbar: f64,
}

impl Ellipsoid {
    pub fn new(center: PhasePoint, shape: Matrix, hbar: f64) -> Result<Self> {
        validate_hbar(hbar)?;
        let dim = shape.ensure_square()?;
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::OddDimension(dim));
        }
        check_center(&center, dim)?;
        Ok(Self {
            center,
            shape: SpdMatrix::new(shape)?,
            hbar,
        })
    }

    pub fn centered(shape: Matrix, hbar: f64) -> Result<Self> {
        let n = shape.rows() / 2;
        Self::new(PhasePoint::origin(n), shape, hbar)
    }

    /// The ball of radius `sqrt hbar`.
    pub fn ball(n: usize, hbar: f64) -> Result<Self> {
        Self::centered(Matrix::identity(2 * n), hbar)
    }

    pub fn n(&self) -> usize {
        self.shape.rows() / 2
    }

    pub fn center(&self) -> &PhasePoint {
        &self.center
    }

    pub fn shape(&self) -> &Matrix {
        &self.shape
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `(z - center)^T F (z - center) / hbar`; at most 1 inside.
    pub fn level(&self, z: &[f64]) -> f64 {
        let d: Vec<f64> = z
            .iter()
            .zip(self.center.coords())
            .map(|(a, b)| a - b)
            .collect();
        self.shape.quadratic_form(&d) / self.hbar
    }

    pub fn translated(&self, by: &PhasePoint) -> Result<Self> {
        check_center(by, self.shape.rows())?;
        Ok(Self {
            center: self.center.translate(by),
            ..self.clone()
        })
    }

    /// The image under `z -> center + k (z - center)`, i.e. `F / k^2`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        Self::new(
            self.center.clone(),
            self.shape.scale(1.0 / (k * k)),
            self.hbar,
        )
    }

    /// The image under `z -> S z`: shape `S^{-T} F S^{-1}`, center `S z0`.
    pub fn transformed(&self, s: &SymplecticMatrix) -> Result<Self> {
        if s.rows() != self.shape.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.shape.rows(),
                got: s.rows(),
            });
        }
        let inv = s.inverse();
        let shape = inv.tr_mul(&(self.shape.as_matrix() * inv.as_matrix()));
        Self::new(self.center.mapped(s), shape.symmetrized(), self.hbar)
    }

    pub fn symplectic_spectrum(&self) -> Result<SymplecticSpectrum> {
        symplectic_spectrum(&self.shape)
    }

    pub fn williamson(&self) -> Result<WilliamsonForm> {
        williamson_diagonalize(&self.shape)
    }

    /// The same set as a blob, with the symmetric normalizer `S = F^{-1/2}`.
    pub fn to_blob(&self) -> Result<QuantumBlob> {
        if !is_quantum_blob(self)? {
            return Err(Error::NotAQuantumBlob);
        }
        let s = spd_eigen(&self.shape)?.map_values(|w| 1.0 / w.sqrt());
        QuantumBlob::new(self.center.clone(), SymplecticMatrix::new(s)?, self.hbar)
    }
}

/// `center + S(B(sqrt hbar))` with `S` symplectic.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumBlob {
    center: PhasePoint,
    s: SymplecticMatrix,
    hbar: f64,
}

impl QuantumBlob {
    pub fn new(center: PhasePoint, s: SymplecticMatrix, hbar: f64) -> Result<Self> {
        validate_hbar(hbar)?;
        check_center(&center, s.rows())?;
        Ok(Self { center, s, hbar })
    }

    pub fn centered(s: SymplecticMatrix, hbar: f64) -> Result<Self> {
        let n = s.n();
        Self::new(PhasePoint::origin(n), s, hbar)
    }

    pub fn ball(n: usize, hbar: f64) -> Result<Self> {
        Self::centered(SymplecticMatrix::identity(n), hbar)
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    pub fn center(&self) -> &PhasePoint {
        &self.center
    }

    pub fn s(&self) -> &SymplecticMatrix {
        &self.s
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn to_ellipsoid(&self) -> Ellipsoid {
        blob_to_ellipsoid(self)
    }
}

/// Shape `F = (S S^T)^{-1} = S^{-T} S^{-1}`, same center and `hbar`.
pub fn blob_to_ellipsoid(q: &QuantumBlob) -> Ellipsoid {
    let inv = symplectic_inverse(&q.s);
    let shape = inv.tr_mul(&inv).symmetrized();
    Ellipsoid {
        center: q.center.clone(),
        shape: SpdMatrix::new(shape).expect("S^-T S^-1 is positive definite for invertible S"),
        hbar: q.hbar,
    }
}

/// Every symplectic eigenvalue of `F` lies in `[1 - BLOB_TOL, 1 + BLOB_TOL]`.
pub fn is_quantum_blob(e: &Ellipsoid) -> Result<bool> {
    Ok(e.symplectic_spectrum()?
        .values()
        .iter()
        .all(|l| (l - 1.0).abs() <= BLOB_TOL))
}

fn plane_form(e: &Ellipsoid, plane: &SymplecticPlane, m: &Matrix) -> Result<Matrix> {
    if plane.n() != e.n() {
        return Err(Error::DimensionMismatch {
            expected: e.n(),
            got: plane.n(),
        });
    }
    let b = plane.basis_matrix();
    Ok(b.tr_mul(&(m * &b)).symmetrized())
}

fn det2(a: &Matrix) -> f64 {
    a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]
}

/// Area of the section of `e` by the plane through its center parallel to
/// `plane`: `pi hbar / sqrt det(B^T F B)` for the orthonormal basis `B`.
pub fn section_area(e: &Ellipsoid, plane: &SymplecticPlane) -> Result<f64> {
    let a = plane_form(e, plane, &e.shape)?;
    let det = det2(&a);
    if !(det > 0.0 && a[(0, 0)] > 0.0) {
        return Err(Error::DegeneratePlane);
    }
    Ok(PI * e.hbar / det.sqrt())
}

/// Area of the orthogonal projection of `e` onto `plane`:
/// `pi hbar sqrt det(B^T F^{-1} B)`.
pub fn projection_area(e: &Ellipsoid, plane: &SymplecticPlane) -> Result<f64> {
    let a = plane_form(e, plane, &inv_spd(&e.shape)?)?;
    Ok(PI * e.hbar * det2(&a).max(0.0).sqrt())
}

/// Boundary of the central section as `(theta, u, v)` in plane coordinates:
/// the point at angle `theta` is `sqrt(hbar / d^T A d) d`, `d = (cos, sin)`,
/// with `A = B^T F B`.
pub fn section_outline(
    e: &Ellipsoid,
    plane: &SymplecticPlane,
    samples: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    if samples < 3 {
        return Err(Error::InvalidParameter(format!(
            "at least 3 samples are needed to trace a section, got {samples}"
        )));
    }
    let a = plane_form(e, plane, &e.shape)?;
    if !(det2(&a) > 0.0 && a[(0, 0)] > 0.0) {
        return Err(Error::DegeneratePlane);
    }
    Ok((0..samples)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / samples as f64;
            let d = [theta.cos(), theta.sin()];
            let r = (e.hbar / a.quadratic_form(&d)).sqrt();
            (theta, r * d[0], r * d[1])
        })
        .collect())
}

/// `pi hbar / l_1(F)`.
pub fn gromov_width(e: &Ellipsoid) -> Result<f64> {
    Ok(PI * e.hbar / e.symplectic_spectrum()?.largest())
}

/// Whether `e` contains a quantum blob, decided twice: by the Gromov width
/// `>= pi hbar (1 - ADM_TOL)` and by the eigenvalues of `J F` all having
/// modulus at most `1 + ADM_TOL`. The two must agree.
pub fn is_admissible(e: &Ellipsoid) -> Result<bool> {
    let by_capacity = gromov_width(e)? >= PI * e.hbar * (1.0 - ADM_TOL);
    let by_eigenvalues = jf_condition(e)?;
    if by_capacity != by_eigenvalues {
        return Err(Error::InternalInconsistency(format!(
            "capacity test says {by_capacity}, eigenvalues of JF say {by_eigenvalues}"
        )));
    }
    Ok(by_capacity)
}

fn jf_condition(e: &Ellipsoid) -> Result<bool> {
    let jf = &standard_j(e.n()) * e.shape.as_matrix();
    Ok(eigvals_general(&jf)?
        .iter()
        .all(|mu| mu.norm() <= 1.0 + ADM_TOL))
}

/// The four equivalent forms of the uncertainty principle for the covariance
/// matrix `Sigma = (hbar / 2) F^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibilityConditions {
    /// `Sigma + (i hbar / 2) J` is positive semi-definite.
    pub a: bool,
    /// `F^{-1} + i J` is positive semi-definite.
    pub b: bool,
    /// Every eigenvalue of `J Sigma` has modulus at least `hbar / 2`.
    pub c: bool,
    /// Every eigenvalue of `J F` has modulus at most 1.
    pub d: bool,
}

impl AdmissibilityConditions {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d
    }

    pub fn agree(&self) -> bool {
        self.a == self.b && self.b == self.c && self.c == self.d
    }
}

/// Smallest eigenvalue of the Hermitian `X + i Y` (`X` symmetric, `Y`
/// antisymmetric), read off the real symmetric embedding
/// `[[X, -Y], [Y, X]]`, which has the same eigenvalues doubled.
fn hermitian_min_eigenvalue(x: &Matrix, y: &Matrix) -> Result<f64> {
    let h = Matrix::from_blocks(x, &-y, y, x).symmetrized();
    Ok(eigh(&h)?.values[0])
}

pub fn admissibility_conditions(e: &Ellipsoid) -> Result<AdmissibilityConditions> {
    let n = e.n();
    let hbar = e.hbar;
    let j = standard_j(n);
    let f_inv = inv_spd(&e.shape)?;
    let sigma = f_inv.scale(hbar / 2.0);

    let a = hermitian_min_eigenvalue(&sigma, &j.scale(hbar / 2.0))? >= -HERM_TOL * sigma.max_abs();
    let b = hermitian_min_eigenvalue(&f_inv, &j)? >= -HERM_TOL * f_inv.max_abs();
    let c = eigvals_general(&(&j * &sigma))?
        .iter()
        .all(|mu| mu.norm() >= hbar / 2.0 * (1.0 - ADM_TOL));
    let d = jf_condition(e)?;

    let out = AdmissibilityConditions { a, b, c, d };
    if !out.agree() {
        return Err(Error::InternalInconsistency(format!(
            "uncertainty conditions disagree: {out:?}"
        )));
    }
    Ok(out)
}

/// The quantum blob `W^{-1}(B(sqrt hbar))` inside an ellipsoid of Gromov
/// width exactly `pi hbar`, where `F = W^T D W` is a Williamson form.
///
/// The shape of the result is `W^T W`. A second, randomly rotated normalizer
/// must give the same shape within `WIL_TOL`.
pub fn companion_blob(e: &Ellipsoid) -> Result<QuantumBlob> {
    let required = PI * e.hbar;
    let capacity = gromov_width(e)?;
    if (capacity - required).abs() > CAP_TOL * required {
        return Err(Error::CapacityMismatch { capacity, required });
    }
    let w = williamson_diagonalize(&e.shape)?;
    let check = williamson_diagonalize_shuffled(&e.shape, COMPANION_CHECK_SEED)?;
    let shape = w.s.tr_mul(&w.s);
    let other = check.s.tr_mul(&check.s);
    let drift = shape.max_abs_diff(&other) / shape.max_abs();
    if drift > WIL_TOL {
        return Err(Error::InternalInconsistency(format!(
            "companion blob depends on the normalizer (relative drift {drift:.3e})"
        )));
    }
    QuantumBlob::new(e.center.clone(), w.s.inverse(), e.hbar)
}

/// Retained coordinates `x_j, p_j` for 1-based `indices`, `x` block first.
fn subspace_coordinates(n: usize, indices: &[usize]) -> Result<Vec<usize>> {
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if let Some(&bad) = idx.iter().find(|&&j| j == 0 || j > n) {
        return Err(Error::IndexOutOfRange { index: bad, max: n });
    }
    Ok(idx
        .iter()
        .map(|j| j - 1)
        .chain(idx.iter().map(|j| n + j - 1))
        .collect())
}

/// Intersection of `q` with the coordinate symplectic subspace spanned by
/// `x_j, p_j` for `j` in `indices` (1-based), through the blob's center.
///
/// The intersection has shape equal to the principal submatrix of `F` on the
/// retained coordinates. It is a quantum blob of the smaller phase space
/// when `q` splits as a product across the subspace and its complement; use
/// [`is_quantum_blob`] or [`Ellipsoid::to_blob`] on the result to test.
pub fn coordinate_subspace_section(q: &QuantumBlob, indices: &[usize]) -> Result<Ellipsoid> {
    let e = blob_to_ellipsoid(q);
    let keep = subspace_coordinates(e.n(), indices)?;
    let shape = e.shape.principal(&keep);
    let center: Vec<f64> = keep.iter().map(|&i| e.center.coords()[i]).collect();
    Ellipsoid::new(PhasePoint::new(center)?, shape, e.hbar)
}

/// `(pi hbar)^n / n!`, the volume of every quantum blob in `2n` dimensions.
pub fn blob_volume(q: &QuantumBlob) -> f64 {
    ball_volume(q.n(), q.hbar)
}

/// Volume of the ball of radius `sqrt hbar` in `R^{2n}`.
pub fn ball_volume(n: usize, hbar: f64) -> f64 {
    (1..=n).fold(1.0, |v, k| v * PI * hbar / k as f64)
}

/// Dimension `n(n + 3)` of the manifold of centered-or-not quantum blobs in
/// `2n` dimensions.
pub fn quant_manifold_dim(n: usize) -> usize {
    n * (n + 3)
}
