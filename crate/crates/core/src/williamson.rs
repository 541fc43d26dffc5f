//! Williamson normal forms and symplectic spectra.
//!
//! Every SPD matrix `M` of size `2n` can be written `M = S^T D S` with `S`
//! symplectic and `D = diag(L, L)`, `L = diag(l_1, ..., l_n)`. The `l_j` are
//! the symplectic eigenvalues: `+- i l_j` are the eigenvalues of `J M`.
//!
//! The construction only needs symmetric eigensolvers. With
//! `K = M^{-1/2} J M^{-1/2}` (antisymmetric) the matrix `N = K^T K` has every
//! eigenvalue `1 / l_j^2` twice, and `K` preserves each eigenspace of `N`.
//! Choosing orthonormal pairs `(u_j, v_j = -l_j K u_j)` gives an orthogonal
//! `O` with `O^T K O = D^{-1/2} J D^{-1/2}`, hence
//! `S = D^{-1/2} O^T M^{1/2}` is symplectic and `S^T D S = M`.

use crate::error::{Error, Result};
use crate::matcore::{dot, eigh, norm, spd_eigen, Matrix};
use crate::random::{self, SeededRng};
use crate::sympcore::{standard_j, SymplecticMatrix, UnitaryBlock};
use crate::tolerance::{CLUSTER_TOL, EMBED_SLACK, MEMBERSHIP_SLACK, SPEC_TOL};

/// Boundary points sampled when verifying an ellipsoid embedding.
pub const EMBED_SAMPLES: usize = 1000;
const EMBED_SEED: u64 = 0x5eed;

/// Residual below which a Gram-Schmidt candidate is treated as already
/// spanned.
const SPAN_RESIDUAL: f64 = 1e-6;

/// Symplectic eigenvalues, positive and in decreasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    /// Sorts `values` into decreasing order; all must be finite and positive.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty spectrum".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(&bad) = values.iter().find(|v| **v <= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "symplectic eigenvalue {bad} is not positive"
            )));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `D = diag(L, L)`.
    pub fn diagonal_matrix(&self) -> Matrix {
        let d: Vec<f64> = self.values.iter().chain(&self.values).copied().collect();
        Matrix::from_diagonal(&d)
    }

    /// Williamson radii `R_j = sqrt(hbar / l_j)` of `z^T M z <= hbar`, in
    /// increasing order.
    pub fn radii(&self, hbar: f64) -> Vec<f64> {
        self.values.iter().map(|l| (hbar / l).sqrt()).collect()
    }

    /// Largest componentwise difference, scaled by `max(1, |l_j|)`.
    pub fn relative_distance(&self, other: &SymplecticSpectrum) -> f64 {
        assert_eq!(self.n(), other.n());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
            .fold(0.0, f64::max)
    }
}

/// `M = S^T D S` with `D` built from the spectrum.
#[derive(Clone, Debug)]
pub struct WilliamsonForm {
    pub s: SymplecticMatrix,
    pub spectrum: SymplecticSpectrum,
}

impl WilliamsonForm {
    pub fn d(&self) -> Matrix {
        self.spectrum.diagonal_matrix()
    }

    pub fn reconstruct(&self) -> Matrix {
        self.s.tr_mul(&(&self.d() * &self.s))
    }

    /// `||S^T D S - M||_max / ||M||_max`.
    pub fn relative_residual(&self, m: &Matrix) -> f64 {
        self.reconstruct().max_abs_diff(m) / m.max_abs().max(f64::MIN_POSITIVE)
    }
}

fn phase_space_dim(m: &Matrix) -> Result<usize> {
    let dim = m.ensure_square()?;
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    Ok(dim / 2)
}

fn antisymmetrized(k: &Matrix) -> Matrix {
    Matrix::from_fn(k.rows(), k.cols(), |i, j| 0.5 * (k[(i, j)] - k[(j, i)]))
}

/// Ranges `[start, end)` of consecutive values equal within
/// `CLUSTER_TOL * (1 + max |value|)`.
fn clusters(values: &[f64]) -> Vec<(usize, usize)> {
    let scale = 1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i] - values[i - 1]).abs() > CLUSTER_TOL * scale {
            out.push((start, i));
            start = i;
        }
    }
    out
}

/// Removes the components along `basis` (assumed orthonormal), twice.
fn project_out(mut c: Vec<f64>, basis: &[Vec<f64>]) -> Vec<f64> {
    for _ in 0..2 {
        for b in basis {
            let d = dot(b, &c);
            c.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
    }
    c
}

/// Flips `v` so that its first entry of non-negligible size is positive.
fn orient(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * scale) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Picks the column of `candidates` with the largest residual against
/// `chosen`, normalized, or `None` when everything is already spanned.
fn next_direction(candidates: &[Vec<f64>], chosen: &[Vec<f64>]) -> Option<Vec<f64>> {
    // Ties resolve to the earliest candidate.
    let (residual, size) = candidates
        .iter()
        .map(|c| {
            let r = project_out(c.clone(), chosen);
            let nr = norm(&r);
            (r, nr)
        })
        .fold(None, |best: Option<(Vec<f64>, f64)>, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        })?;
    if size < SPAN_RESIDUAL {
        return None;
    }
    let mut u: Vec<f64> = residual.iter().map(|x| x / size).collect();
    orient(&mut u);
    Some(u)
}

/// Symplectic eigenvalues of an SPD matrix, in decreasing order.
///
/// Uses `K' = M^{1/2} J M^{1/2}`: the symmetric matrix `K'^T K'` has every
/// `l_j^2` as a double eigenvalue.
pub fn symplectic_spectrum(m: &Matrix) -> Result<SymplecticSpectrum> {
    let n = phase_space_dim(m)?;
    let half = spd_eigen(m)?.map_values(f64::sqrt);
    let k = antisymmetrized(&(&(&half * &standard_j(n)) * &half));
    let e = eigh(&k.tr_mul(&k).symmetrized())?;
    let values = (0..n)
        .map(|j| {
            (0.5 * (e.values[2 * j] + e.values[2 * j + 1]))
                .max(0.0)
                .sqrt()
        })
        .collect();
    SymplecticSpectrum::new(values)
}

/// Williamson diagonalization `M = S^T D S`.
///
/// Ties between equal symplectic eigenvalues are broken deterministically;
/// the returned `S` is one representative of its `U(n)` orbit.
pub fn williamson_diagonalize(m: &Matrix) -> Result<WilliamsonForm> {
    williamson_impl(m, None)
}

/// As [`williamson_diagonalize`], but each eigenspace basis is first mixed by
/// a seeded random rotation, producing a different member of the `U(n)` orbit
/// of normalizers.
pub fn williamson_diagonalize_shuffled(m: &Matrix, seed: u64) -> Result<WilliamsonForm> {
    williamson_impl(m, Some(&mut random::rng(seed)))
}

fn williamson_impl(m: &Matrix, mut shuffle: Option<&mut SeededRng>) -> Result<WilliamsonForm> {
    let n = phase_space_dim(m)?;
    let e = spd_eigen(m)?;
    let m_half = e.map_values(f64::sqrt);
    let m_inv_half = e.map_values(|w| 1.0 / w.sqrt());
    let k = antisymmetrized(&(&(&m_inv_half * &standard_j(n)) * &m_inv_half));
    let nmat = k.tr_mul(&k).symmetrized();
    let en = eigh(&nmat)?;

    // (l, u, v) triples, eigenvalues of N ascending so l descending.
    let mut pairs: Vec<(f64, Vec<f64>, Vec<f64>)> = Vec::with_capacity(n);
    let mut chosen: Vec<Vec<f64>> = Vec::with_capacity(2 * n);
    for (start, end) in clusters(&en.values) {
        let dim = end - start;
        if dim % 2 != 0 {
            return Err(Error::DegenerateSpectrumFailure);
        }
        let mut basis: Vec<Vec<f64>> = (start..end).map(|j| en.vectors.column(j)).collect();
        if let Some(rng) = shuffle.as_deref_mut() {
            let q = random::random_orthogonal(rng, dim);
            basis = (0..dim)
                .map(|c| {
                    (0..2 * n)
                        .map(|i| (0..dim).map(|r| basis[r][i] * q[(r, c)]).sum())
                        .collect()
                })
                .collect();
        }
        for _ in 0..dim / 2 {
            let u = next_direction(&basis, &chosen).ok_or(Error::DegenerateSpectrumFailure)?;
            let lambda = 1.0 / nmat.quadratic_form(&u).sqrt();
            let ku = k.matvec(&u);
            let v: Vec<f64> = ku.iter().map(|x| -lambda * x).collect();
            let v = project_out(v, &chosen);
            let nv = norm(&v);
            if (nv - 1.0).abs() > 1e-4 {
                return Err(Error::DegenerateSpectrumFailure);
            }
            let v: Vec<f64> = v.iter().map(|x| x / nv).collect();
            chosen.push(u.clone());
            chosen.push(v.clone());
            pairs.push((lambda, u, v));
        }
    }
    if pairs.len() != n {
        return Err(Error::DegenerateSpectrumFailure);
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let cols: Vec<&Vec<f64>> = pairs
        .iter()
        .map(|p| &p.1)
        .chain(pairs.iter().map(|p| &p.2))
        .collect();
    let o = Matrix::from_columns(&cols);
    let spectrum = SymplecticSpectrum::new(pairs.iter().map(|p| p.0).collect())?;
    let scale: Vec<f64> = spectrum
        .values()
        .iter()
        .chain(spectrum.values())
        .map(|l| 1.0 / l.sqrt())
        .collect();
    let ot_half = o.tr_mul(&m_half);
    let s = Matrix::from_fn(2 * n, 2 * n, |i, j| scale[i] * ot_half[(i, j)]);
    Ok(WilliamsonForm {
        s: SymplecticMatrix::from_trusted(s),
        spectrum,
    })
}

/// Whether `Spec(S^T M S)` equals `Spec(M)` within `SPEC_TOL`.
pub fn spectrum_is_symplectically_invariant(m: &Matrix, s: &SymplecticMatrix) -> Result<bool> {
    if m.rows() != s.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: s.rows(),
        });
    }
    let before = symplectic_spectrum(m)?;
    let conjugated = s.tr_mul(&(m * s.as_matrix())).symmetrized();
    let after = symplectic_spectrum(&conjugated)?;
    Ok(before.relative_distance(&after) <= SPEC_TOL)
}

/// `a_j >= b_j` for every `j`.
pub fn spectra_dominates(a: &SymplecticSpectrum, b: &SymplecticSpectrum) -> Result<bool> {
    spectra_dominates_within(a, b, 0.0)
}

/// `a_j >= b_j - slack * (1 + b_j)` for every `j`.
pub fn spectra_dominates_within(
    a: &SymplecticSpectrum,
    b: &SymplecticSpectrum,
    slack: f64,
) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    Ok(a.values()
        .iter()
        .zip(b.values())
        .all(|(x, y)| *x >= y - slack * (1.0 + y)))
}

/// Outcome of [`embed_ellipsoid`].
#[derive(Clone, Debug, PartialEq)]
pub enum Embedding {
    /// A symplectic `S` with `S(B) ⊆ B'`.
    Embedded(SymplecticMatrix),
    Infeasible,
}

impl Embedding {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Embedding::Embedded(_))
    }
}

/// Symplectic map sending `B: z^T M z <= 1` into `B': z^T M' z <= 1`.
///
/// Exists iff `Spec(M) >= Spec(M')` componentwise. With Williamson forms
/// `M = S1^T D1 S1` and `M' = S2^T D2 S2` the map is `S2^{-1} S1`; the result
/// is checked on `EMBED_SAMPLES` seeded boundary points of `B`.
pub fn embed_ellipsoid(m: &Matrix, m_prime: &Matrix) -> Result<Embedding> {
    if m.rows() != m_prime.rows() || m.cols() != m_prime.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m_prime.rows(),
        });
    }
    let w1 = williamson_diagonalize(m)?;
    let w2 = williamson_diagonalize(m_prime)?;
    if !spectra_dominates_within(&w1.spectrum, &w2.spectrum, EMBED_SLACK)? {
        return Ok(Embedding::Infeasible);
    }
    let s = w2.s.inverse().compose(&w1.s);

    let m_inv_half = spd_eigen(m)?.map_values(|w| 1.0 / w.sqrt());
    let mut rng = random::rng(EMBED_SEED);
    for _ in 0..EMBED_SAMPLES {
        let mut u = random::uniform_vector(&mut rng, m.rows());
        let nu = norm(&u);
        if nu < 1e-6 {
            continue;
        }
        u.iter_mut().for_each(|x| *x /= nu);
        let image = s.matvec(&m_inv_half.matvec(&u));
        let level = m_prime.quadratic_form(&image);
        if level > 1.0 + MEMBERSHIP_SLACK {
            return Err(Error::InternalInconsistency(format!(
                "embedded boundary point lands at level {level}"
            )));
        }
    }
    Ok(Embedding::Embedded(s))
}

/// `S = U^T diag(L, L^{-1}) U` for symmetric positive definite symplectic `S`.
#[derive(Clone, Debug)]
pub struct SymmetricSymplecticForm {
    pub u: UnitaryBlock,
    /// `0 < l_1 <= ... <= l_n <= 1`.
    pub lambda: Vec<f64>,
}

impl SymmetricSymplecticForm {
    pub fn delta(&self) -> Matrix {
        let d: Vec<f64> = self
            .lambda
            .iter()
            .copied()
            .chain(self.lambda.iter().map(|l| 1.0 / l))
            .collect();
        Matrix::from_diagonal(&d)
    }

    pub fn reconstruct(&self) -> Matrix {
        let u = self.u.embed();
        u.tr_mul(&(&self.delta() * &u))
    }
}

/// Diagonalizes a symmetric positive definite symplectic matrix by a
/// symplectic rotation.
///
/// If `S u = l u` then `S (J u) = (1/l) J u`, so the eigenvalues come in
/// pairs `(l, 1/l)`. Eigenvectors `u_j` for the `n` smallest eigenvalues are
/// chosen orthogonal to every `J u_k`; then `W = [u, -J u]` is a symplectic
/// rotation with `S = W Delta W^T`.
pub fn diagonalize_symmetric_symplectic(s: &Matrix) -> Result<SymmetricSymplecticForm> {
    let n = phase_space_dim(s)?;
    let check = crate::sympcore::is_symplectic(s)?;
    if !check.is_symplectic {
        return Err(Error::NotSymplectic {
            residual: check.residual,
        });
    }
    let e = spd_eigen(s)?;
    let j = standard_j(n);
    let mut us: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut chosen: Vec<Vec<f64>> = Vec::with_capacity(2 * n);
    'outer: for (start, end) in clusters(&e.values) {
        let basis: Vec<Vec<f64>> = (start..end).map(|k| e.vectors.column(k)).collect();
        while let Some(u) = next_direction(&basis, &chosen) {
            // u^T J u = 0, so J u is already orthogonal to u.
            let ju = project_out(j.matvec(&u), &chosen);
            let nj = norm(&ju);
            chosen.push(u.clone());
            chosen.push(ju.iter().map(|x| x / nj).collect());
            us.push(u);
            if us.len() == n {
                break 'outer;
            }
        }
    }
    if us.len() != n {
        return Err(Error::DegenerateSpectrumFailure);
    }
    let lambda: Vec<f64> = us.iter().map(|u| s.quadratic_form(u)).collect();
    // [u_1 ... u_n] = [A; B], W = [[A, -B], [B, A]] and U = W^T.
    let a = Matrix::from_fn(n, n, |i, k| us[k][i]);
    let b = Matrix::from_fn(n, n, |i, k| us[k][n + i]);
    let u = UnitaryBlock {
        a: a.transpose(),
        b: -&b.transpose(),
    };
    Ok(SymmetricSymplecticForm { u, lambda })
}
