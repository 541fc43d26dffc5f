//! The symplectic group layer: `J`, membership tests, the unitary subgroup,
//! generators, the lower-triangular/unitary factorization and symplectic
//! planes.

use std::ops::Deref;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{dot, norm, spd_eigen, Matrix};
use crate::random::{self, SeededRng};
use crate::tolerance::{PLANE_TOL, SYMP_TOL};

/// A point `z = (x_1..x_n, p_1..p_n)` of phase space.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    coords: Vec<f64>,
}

impl PhasePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::OddDimension(coords.len()));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { coords })
    }

    pub fn origin(n: usize) -> Self {
        Self {
            coords: vec![0.0; 2 * n],
        }
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn x(&self) -> &[f64] {
        &self.coords[..self.n()]
    }

    pub fn p(&self) -> &[f64] {
        &self.coords[self.n()..]
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn translate(&self, by: &PhasePoint) -> PhasePoint {
        assert_eq!(self.n(), by.n());
        PhasePoint {
            coords: self
                .coords
                .iter()
                .zip(&by.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &PhasePoint) -> Vec<f64> {
        assert_eq!(self.n(), other.n());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn negated(&self) -> PhasePoint {
        PhasePoint {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mapped(&self, m: &Matrix) -> PhasePoint {
        PhasePoint {
            coords: m.matvec(&self.coords),
        }
    }
}

/// `J = [[0, I], [-I, 0]]` of size `2n`.
pub fn standard_j(n: usize) -> Matrix {
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            1.0
        } else if i == j + n {
            -1.0
        } else {
            0.0
        }
    })
}

/// `omega(a, b) = b^T J a`.
pub fn omega(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len() / 2;
    // J a = (a_p, -a_x)
    (0..n).map(|i| b[i] * a[n + i] - b[n + i] * a[i]).sum()
}

/// `J^T A J`-style products without materialising `J`: returns `J A`.
fn j_left(a: &Matrix) -> Matrix {
    let n = a.rows() / 2;
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i < n {
            a[(i + n, j)]
        } else {
            -a[(i - n, j)]
        }
    })
}

/// Returns `A J`.
fn j_right(a: &Matrix) -> Matrix {
    let n = a.cols() / 2;
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        if j < n {
            -a[(i, j + n)]
        } else {
            a[(i, j - n)]
        }
    })
}

/// `S^{-1} = -J S^T J`, exact for symplectic `S`.
pub fn symplectic_inverse(s: &Matrix) -> Matrix {
    -&j_right(&j_left(&s.transpose()))
}

fn phase_space_dim(m: &Matrix) -> Result<usize> {
    let dim = m.ensure_square()?;
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    Ok(dim / 2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymplecticCheck {
    pub is_symplectic: bool,
    /// Larger of `||S^T J S - J||_max` and `||S J S^T - J||_max`.
    pub residual: f64,
}

/// Tests both `S^T J S = J` and `S J S^T = J`; both must hold within
/// `SYMP_TOL`.
pub fn is_symplectic(s: &Matrix) -> Result<SymplecticCheck> {
    let n = phase_space_dim(s)?;
    let j = standard_j(n);
    let left = s.tr_mul(&j_left(s)).max_abs_diff(&j);
    let right = (&j_right(s) * &s.transpose()).max_abs_diff(&j);
    Ok(SymplecticCheck {
        is_symplectic: left <= SYMP_TOL && right <= SYMP_TOL,
        residual: left.max(right),
    })
}

/// A validated element of `Sp(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticMatrix(Matrix);

impl SymplecticMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let check = is_symplectic(&m)?;
        if !check.is_symplectic {
            return Err(Error::NotSymplectic {
                residual: check.residual,
            });
        }
        // det S = 1 follows; the bound scales with Hadamard's inequality.
        let hadamard: f64 = (0..m.rows()).map(|i| norm(m.row(i))).product();
        let det = m.determinant();
        if (det - 1.0).abs() > SYMP_TOL * hadamard.max(1.0) {
            return Err(Error::NotSymplectic {
                residual: (det - 1.0).abs(),
            });
        }
        Ok(Self(m))
    }

    /// Wraps a matrix that is symplectic by construction.
    pub(crate) fn from_trusted(m: Matrix) -> Self {
        debug_assert!(is_symplectic(&m)
            .map(|c| c.residual < 1e-6)
            .unwrap_or(false));
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(2 * n))
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.0.rows() / 2
    }

    pub fn inverse(&self) -> SymplecticMatrix {
        Self(symplectic_inverse(&self.0))
    }

    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        Self(&self.0 * &other.0)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_inner(self) -> Matrix {
        self.0
    }
}

impl Deref for SymplecticMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}

/// `A + iB` in `U(n)`, acting on phase space as `[[A, -B], [B, A]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryBlock {
    pub a: Matrix,
    pub b: Matrix,
}

impl UnitaryBlock {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        let n = a.ensure_square()?;
        if b.rows() != n || b.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.rows(),
            });
        }
        let u = Self { a, b };
        let residual = u.residual();
        if residual > SYMP_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(u)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a: Matrix::identity(n),
            b: Matrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Worst violation of `A B^T = B A^T` and `A A^T + B B^T = I`.
    pub fn residual(&self) -> f64 {
        let abt = &self.a * &self.b.transpose();
        let gram = &(&self.a * &self.a.transpose()) + &(&self.b * &self.b.transpose());
        abt.asymmetry()
            .max(gram.max_abs_diff(&Matrix::identity(self.n())))
    }

    pub fn embed(&self) -> Matrix {
        Matrix::from_blocks(&self.a, &-&self.b, &self.b, &self.a)
    }
}

/// Haar-like random unitary by complex Gram-Schmidt.
pub fn random_unitary(rng: &mut SeededRng, n: usize) -> UnitaryBlock {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(
                    random::uniform(rng, -1.0, 1.0),
                    random::uniform(rng, -1.0, 1.0),
                )
            })
            .collect();
        for _ in 0..2 {
            for c in &cols {
                let proj: Complex64 = c.iter().zip(&v).map(|(ci, vi)| ci.conj() * vi).sum();
                v.iter_mut().zip(c).for_each(|(vi, ci)| *vi -= proj * ci);
            }
        }
        let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nv > 1e-3 {
            v.iter_mut().for_each(|z| *z /= nv);
            cols.push(v);
        }
    }
    UnitaryBlock {
        a: Matrix::from_fn(n, n, |i, j| cols[j][i].re),
        b: Matrix::from_fn(n, n, |i, j| cols[j][i].im),
    }
}

/// Deterministic random element of `Sp(n)`: a lower shear times a
/// symplectic rotation times a rescaling `(x_j, p_j) -> (l_j x_j, p_j / l_j)`
/// with `l_j` in `[1/2, 2]`.
pub fn random_symplectic(n: usize, seed: u64) -> SymplecticMatrix {
    random_symplectic_with(&mut random::rng(seed), n)
}

pub fn random_symplectic_with(rng: &mut SeededRng, n: usize) -> SymplecticMatrix {
    let p = random::random_symmetric(rng, n, 0.5);
    let shear = Matrix::from_blocks(
        &Matrix::identity(n),
        &Matrix::zeros(n, n),
        &p,
        &Matrix::identity(n),
    );
    let rotation = random_unitary(rng, n).embed();
    let lambdas: Vec<f64> = (0..n).map(|_| random::log_uniform(rng, 0.5, 2.0)).collect();
    let diag: Vec<f64> = lambdas
        .iter()
        .copied()
        .chain(lambdas.iter().map(|l| 1.0 / l))
        .collect();
    let rescale = Matrix::from_diagonal(&diag);
    SymplecticMatrix::from_trusted(&(&shear * &rotation) * &rescale)
}

/// Factors of `S = [[A0, 0], [C0, A0^{-1}]] [[X0, -Y0], [Y0, X0]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreIwasawaFactors {
    pub a0: Matrix,
    pub c0: Matrix,
    pub x0: Matrix,
    pub y0: Matrix,
    a0_inv: Matrix,
}

impl PreIwasawaFactors {
    /// The lower block-triangular factor `[[A0, 0], [C0, A0^{-1}]]`.
    pub fn lower(&self) -> Matrix {
        let n = self.a0.rows();
        Matrix::from_blocks(&self.a0, &Matrix::zeros(n, n), &self.c0, &self.a0_inv)
    }

    pub fn rotation(&self) -> UnitaryBlock {
        UnitaryBlock {
            a: self.x0.clone(),
            b: self.y0.clone(),
        }
    }

    pub fn reassemble(&self) -> Matrix {
        &self.lower() * &self.rotation().embed()
    }

    /// Asymmetry of `A0 C0`; zero exactly when the lower factor is
    /// symplectic.
    pub fn constraint_residual(&self) -> f64 {
        (&self.a0 * &self.c0).asymmetry()
    }
}

/// Splits a symplectic matrix into a lower block-triangular symplectic factor
/// and a symplectic rotation:
///
/// ```text
/// A0 = (A A^T + B B^T)^{1/2}
/// C0 = (C A^T + D B^T)(A A^T + B B^T)^{-1/2}
/// X0 + i Y0 = (A A^T + B B^T)^{-1/2}(A - i B)
/// ```
pub fn pre_iwasawa(s: &Matrix) -> Result<PreIwasawaFactors> {
    let n = phase_space_dim(s)?;
    let check = is_symplectic(s)?;
    if !check.is_symplectic {
        return Err(Error::NotSymplectic {
            residual: check.residual,
        });
    }
    let a = s.submatrix(0, 0, n, n);
    let b = s.submatrix(0, n, n, n);
    let c = s.submatrix(n, 0, n, n);
    let d = s.submatrix(n, n, n, n);

    let gram = (&(&a * &a.transpose()) + &(&b * &b.transpose())).symmetrized();
    let e = spd_eigen(&gram)?;
    let a0 = e.map_values(f64::sqrt);
    let a0_inv = e.map_values(|w| 1.0 / w.sqrt());
    let mixed = &(&c * &a.transpose()) + &(&d * &b.transpose());
    let c0 = &mixed * &a0_inv;
    let x0 = &a0_inv * &a;
    let y0 = -&(&a0_inv * &b);
    Ok(PreIwasawaFactors {
        a0,
        c0,
        x0,
        y0,
        a0_inv,
    })
}

/// A two-dimensional plane through the origin, stored by an orthonormal basis
/// `(u, v)` on which the symplectic form does not vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticPlane {
    u: Vec<f64>,
    v: Vec<f64>,
}

impl SymplecticPlane {
    /// Orthonormalizes `(u, v)` and checks non-degeneracy.
    pub fn from_basis(u: &[f64], v: &[f64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                got: v.len(),
            });
        }
        if u.is_empty() || !u.len().is_multiple_of(2) {
            return Err(Error::OddDimension(u.len()));
        }
        let nu = norm(u);
        if nu == 0.0 || !nu.is_finite() {
            return Err(Error::DegeneratePlane);
        }
        let u: Vec<f64> = u.iter().map(|x| x / nu).collect();
        let d = dot(&u, v);
        let mut w: Vec<f64> = v.iter().zip(&u).map(|(a, b)| a - d * b).collect();
        let nw = norm(&w);
        if nw <= 1e-12 * norm(v).max(1.0) {
            return Err(Error::DegeneratePlane);
        }
        w.iter_mut().for_each(|x| *x /= nw);
        let plane = Self { u, v: w };
        if plane.omega().abs() < PLANE_TOL {
            return Err(Error::DegeneratePlane);
        }
        Ok(plane)
    }

    /// The conjugate coordinate plane `(x_j, p_j)`, `j` counted from 1.
    pub fn coordinate(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        let mut u = vec![0.0; 2 * n];
        let mut v = vec![0.0; 2 * n];
        u[j - 1] = 1.0;
        v[n + j - 1] = 1.0;
        Ok(Self { u, v })
    }

    /// The plane spanned by `u` and `-J u`, invariant under `J`.
    pub fn complex_line(u: &[f64]) -> Result<Self> {
        let n = u.len() / 2;
        let v: Vec<f64> = (0..2 * n)
            .map(|i| if i < n { -u[i + n] } else { u[i - n] })
            .collect();
        Self::from_basis(u, &v)
    }

    /// Random plane drawn from uniform vectors, redrawn (at most 16 times)
    /// until `|omega(u, v)| >= PLANE_TOL`.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let mut rng = random::rng(seed);
        for _ in 0..16 {
            let u = random::uniform_vector(&mut rng, 2 * n);
            let v = random::uniform_vector(&mut rng, 2 * n);
            if let Ok(p) = Self::from_basis(&u, &v) {
                return Ok(p);
            }
        }
        Err(Error::DegenerateDraw)
    }

    pub fn n(&self) -> usize {
        self.u.len() / 2
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    /// `omega(v, u) = u^T J v`; equals 1 on coordinate planes.
    pub fn omega(&self) -> f64 {
        omega(&self.v, &self.u)
    }

    /// The `2n x 2` matrix `[u v]`.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&[&self.u, &self.v])
    }
}

pub fn symplectic_plane_coordinate(n: usize, j: usize) -> Result<SymplecticPlane> {
    SymplecticPlane::coordinate(n, j)
}

pub fn random_symplectic_plane(n: usize, seed: u64) -> Result<SymplecticPlane> {
    SymplecticPlane::random(n, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_blocks() {
        assert_eq!(standard_j(1), Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]));
        let j2 = standard_j(2);
        assert_eq!(j2[(0, 2)], 1.0);
        assert_eq!(j2[(1, 3)], 1.0);
        assert_eq!(j2[(2, 0)], -1.0);
        assert_eq!(j2[(3, 1)], -1.0);
        assert_eq!(j2.data().iter().filter(|x| **x != 0.0).count(), 4);
        let j3 = standard_j(3);
        assert_eq!(&j3 * &j3, Matrix::identity(6).scale(-1.0));
    }

    #[test]
    fn j_helpers_match_products() {
        let m = Matrix::from_fn(4, 4, |i, j| (i * 4 + j) as f64);
        let j = standard_j(2);
        assert_eq!(j_left(&m), &j * &m);
        assert_eq!(j_right(&m), &m * &j);
        assert_eq!(omega(&[1.0, 0.0], &[0.0, 1.0]), -1.0);
    }

    #[test]
    fn membership() {
        let id = is_symplectic(&Matrix::identity(4)).unwrap();
        assert!(id.is_symplectic);
        assert_eq!(id.residual, 0.0);
        assert!(
            is_symplectic(&Matrix::from_diagonal(&[2.0, 0.5]))
                .unwrap()
                .is_symplectic
        );
        let bad = is_symplectic(&Matrix::from_diagonal(&[2.0, 2.0])).unwrap();
        assert!(!bad.is_symplectic);
        assert!((bad.residual - 3.0).abs() < 1e-15);
        assert_eq!(
            is_symplectic(&Matrix::identity(3)),
            Err(Error::OddDimension(3))
        );
    }

    #[test]
    fn random_symplectic_is_deterministic() {
        assert_eq!(random_symplectic(1, 42), random_symplectic(1, 42));
        assert_ne!(random_symplectic(2, 1), random_symplectic(2, 2));
        for seed in 0..50 {
            assert!(SymplecticMatrix::new(random_symplectic(3, seed).into_inner()).is_ok());
        }
    }

    #[test]
    fn pre_iwasawa_of_j() {
        let f = pre_iwasawa(&standard_j(1)).unwrap();
        assert_eq!(f.a0, Matrix::identity(1));
        assert_eq!(f.c0, Matrix::zeros(1, 1));
        assert_eq!(f.x0, Matrix::zeros(1, 1));
        assert_eq!(f.y0, Matrix::from_rows(&[[-1.0]]));
    }

    #[test]
    fn pre_iwasawa_of_shear() {
        let s = Matrix::from_rows(&[[1.0, 0.0], [0.7, 1.0]]);
        let f = pre_iwasawa(&s).unwrap();
        assert!((f.a0[(0, 0)] - 1.0).abs() < 1e-15);
        assert!((f.c0[(0, 0)] - 0.7).abs() < 1e-15);
        assert!((f.x0[(0, 0)] - 1.0).abs() < 1e-15);
        assert_eq!(f.y0[(0, 0)], 0.0);
    }

    #[test]
    fn pre_iwasawa_rejects_non_symplectic() {
        assert!(matches!(
            pre_iwasawa(&Matrix::from_diagonal(&[2.0, 2.0])),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn coordinate_planes() {
        let p = SymplecticPlane::coordinate(2, 1).unwrap();
        assert_eq!(p.u(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.v(), &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(p.omega(), 1.0);
        let p = SymplecticPlane::coordinate(2, 2).unwrap();
        assert_eq!(p.u(), &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(p.v(), &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(
            SymplecticPlane::coordinate(2, 3),
            Err(Error::IndexOutOfRange { index: 3, max: 2 })
        );
        assert!(SymplecticPlane::coordinate(2, 0).is_err());
    }

    #[test]
    fn planes_in_the_phase_plane_are_symplectic() {
        for seed in 0..20 {
            let p = SymplecticPlane::random(1, seed).unwrap();
            assert!((p.omega().abs() - 1.0).abs() < 1e-12);
        }
        assert_eq!(SymplecticPlane::random(2, 5), SymplecticPlane::random(2, 5));
    }

    #[test]
    fn lagrangian_plane_is_degenerate() {
        // span(x1, x2) is Lagrangian
        let r = SymplecticPlane::from_basis(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(r, Err(Error::DegeneratePlane));
    }

    #[test]
    fn unitary_embedding_is_orthogonal_and_symplectic() {
        let u = random_unitary(&mut random::rng(11), 3);
        assert!(u.residual() < 1e-13);
        let m = u.embed();
        assert!(m.tr_mul(&m).max_abs_diff(&Matrix::identity(6)) < 1e-13);
        assert!(is_symplectic(&m).unwrap().is_symplectic);
        assert!(UnitaryBlock::new(Matrix::identity(2).scale(2.0), Matrix::zeros(2, 2)).is_err());
    }
}
