//! Gaussian states through their Wigner functions.
//!
//! A centered pure Gaussian
//! `psi(x) = (det X)^{1/4} (pi hbar)^{-n/4} exp(-x^T (X + iY) x / (2 hbar))`
//! has Wigner function `(pi hbar)^{-n} exp(-z^T G z / hbar)` with
//!
//! ```text
//! G = [[X + Y X^{-1} Y, Y X^{-1}], [X^{-1} Y, X^{-1}]]
//! ```
//!
//! symmetric, positive definite and symplectic, so `{z^T G z <= hbar}` is a
//! quantum blob. Mixed Gaussians replace `G` by an SPD `F` whose symplectic
//! eigenvalues are at most 1, with prefactor `(pi hbar)^{-n} sqrt(det F)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::blobs::{blob_to_ellipsoid, companion_blob, is_admissible, Ellipsoid, QuantumBlob};
use crate::error::{Error, Result};
use crate::matcore::{eigh, inv_spd, spd_eigen, Matrix, SpdMatrix};
use crate::quadrature;
use crate::random;
use crate::sympcore::{pre_iwasawa, PhasePoint, SymplecticMatrix};
use crate::tolerance::{ADM_TOL, BLOB_TOL, SYM_TOL};
use crate::williamson::symplectic_spectrum;

fn validate_hbar(hbar: f64) -> Result<()> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hbar must be positive and finite, got {hbar}"
        )));
    }
    Ok(())
}

fn check_dim(center: &PhasePoint, dim: usize) -> Result<()> {
    if center.coords().len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: center.coords().len(),
        });
    }
    Ok(())
}

/// A pure Gaussian with width matrix `X` (SPD), chirp `Y` (symmetric) and
/// phase-space center.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPureState {
    x: SpdMatrix,
    y: Matrix,
    center: PhasePoint,
    hbar: f64,
}

impl GaussianPureState {
    pub fn new(x: Matrix, y: Matrix, center: PhasePoint, hbar: f64) -> Result<Self> {
        validate_hbar(hbar)?;
        let n = x.ensure_square()?;
        if y.rows() != n || y.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: y.rows(),
            });
        }
        let asymmetry = y.asymmetry();
        if asymmetry > SYM_TOL * (1.0 + y.max_abs()) {
            return Err(Error::NonSymmetric { asymmetry });
        }
        check_dim(&center, 2 * n)?;
        Ok(Self {
            x: SpdMatrix::new(x)?,
            y: y.symmetrized(),
            center,
            hbar,
        })
    }

    pub fn centered(x: Matrix, y: Matrix, hbar: f64) -> Result<Self> {
        let n = x.rows();
        Self::new(x, y, PhasePoint::origin(n), hbar)
    }

    /// `X = I`, `Y = 0`.
    pub fn coherent(n: usize, hbar: f64) -> Result<Self> {
        Self::centered(Matrix::identity(n), Matrix::zeros(n, n), hbar)
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    pub fn center(&self) -> &PhasePoint {
        &self.center
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

/// Seeded pure state: `X` with eigenvalues log-uniform in `[0.2, 5]`, `Y`
/// with entries uniform in `[-1, 1]`, centered.
pub fn random_gaussian_state(n: usize, seed: u64, hbar: f64) -> Result<GaussianPureState> {
    let mut rng = random::rng(seed);
    let x = random::random_spd_with(&mut rng, n, 0.2, 5.0);
    let y = random::random_symmetric(&mut rng, n, 1.0);
    GaussianPureState::centered(x, y, hbar)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateKind {
    /// Every symplectic eigenvalue of the shape is 1.
    Pure,
    /// Some symplectic eigenvalue is below 1.
    Mixed,
}

/// `normalization * exp(-(z - c)^T shape (z - c) / hbar)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGaussian {
    shape: SpdMatrix,
    center: PhasePoint,
    hbar: f64,
    normalization: f64,
    kind: StateKind,
}

impl WignerGaussian {
    /// Requires every symplectic eigenvalue of `shape` to be at most
    /// `1 + ADM_TOL`; otherwise the function is not a Wigner function.
    pub fn new(shape: Matrix, center: PhasePoint, hbar: f64) -> Result<Self> {
        validate_hbar(hbar)?;
        let dim = shape.ensure_square()?;
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::OddDimension(dim));
        }
        check_dim(&center, dim)?;
        let shape = SpdMatrix::new(shape)?;
        let spectrum = symplectic_spectrum(&shape)?;
        if spectrum.largest() > 1.0 + ADM_TOL {
            return Err(Error::NotAdmissible);
        }
        let n = dim / 2;
        let base = (PI * hbar).powi(-(n as i32));
        let (kind, normalization) = if spectrum.smallest() >= 1.0 - BLOB_TOL {
            (StateKind::Pure, base)
        } else {
            (StateKind::Mixed, base * shape.determinant().sqrt())
        };
        Ok(Self {
            shape,
            center,
            hbar,
            normalization,
            kind,
        })
    }

    pub fn n(&self) -> usize {
        self.shape.rows() / 2
    }

    pub fn shape(&self) -> &Matrix {
        &self.shape
    }

    pub fn center(&self) -> &PhasePoint {
        &self.center
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    /// The ellipsoid `(z - c)^T shape (z - c) <= hbar`.
    pub fn ellipsoid(&self) -> Ellipsoid {
        Ellipsoid::new(
            self.center.clone(),
            self.shape.as_matrix().clone(),
            self.hbar,
        )
        .expect("shape was validated on construction")
    }
}

/// `Sigma = (hbar / 2) F^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    sigma: SpdMatrix,
    hbar: f64,
}

impl CovarianceMatrix {
    pub fn new(sigma: Matrix, hbar: f64) -> Result<Self> {
        validate_hbar(hbar)?;
        let dim = sigma.ensure_square()?;
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::OddDimension(dim));
        }
        Ok(Self {
            sigma: SpdMatrix::new(sigma)?,
            hbar,
        })
    }

    /// One degree of freedom from standard deviations and correlation:
    /// `[[sx^2, rho sx sp], [rho sx sp, sp^2]]`.
    pub fn from_moments(sigma_x: f64, sigma_p: f64, rho: f64, hbar: f64) -> Result<Self> {
        if rho.is_nan() || rho.abs() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "correlation must lie in (-1, 1), got {rho}"
            )));
        }
        let c = rho * sigma_x * sigma_p;
        Self::new(
            Matrix::from_rows(&[[sigma_x * sigma_x, c], [c, sigma_p * sigma_p]]),
            hbar,
        )
    }

    pub fn n(&self) -> usize {
        self.sigma.rows() / 2
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// The ellipsoid with shape `F = (hbar / 2) Sigma^{-1}`, centered.
    pub fn ellipsoid(&self) -> Result<Ellipsoid> {
        let f = inv_spd(&self.sigma)?.scale(self.hbar / 2.0);
        Ellipsoid::centered(f, self.hbar)
    }
}

/// The Wigner function of a pure Gaussian.
pub fn wigner_matrix(psi: &GaussianPureState) -> Result<WignerGaussian> {
    let x_inv = inv_spd(&psi.x)?;
    let y = &psi.y;
    let yxi = y * &x_inv;
    let xiy = &x_inv * y;
    let top = psi.x.as_matrix() + &(&yxi * y);
    let g = Matrix::from_blocks(&top, &yxi, &xiy, &x_inv).symmetrized();
    WignerGaussian::new(g, psi.center.clone(), psi.hbar)
}

pub fn wigner_eval(w: &WignerGaussian, z: &PhasePoint) -> Result<f64> {
    check_dim(z, w.shape.rows())?;
    let d = z.difference(&w.center);
    Ok(w.normalization * (-w.shape.quadratic_form(&d) / w.hbar).exp())
}

/// Numerical Wigner transform of a one-dimensional pure Gaussian,
///
/// ```text
/// W(x, p) = (1 / 2 pi hbar) Int exp(-i p y / hbar) psi(x + y/2) conj(psi(x - y/2)) dy,
/// ```
///
/// by adaptive Gauss-Kronrod on `[-L, L]`, doubling `L` from
/// `8 sqrt(hbar / X)` until the value changes by less than `1e-8`.
pub fn wigner_quadrature_oracle(psi: &GaussianPureState, z: &PhasePoint) -> Result<f64> {
    if psi.n() != 1 {
        return Err(Error::InvalidParameter(format!(
            "the quadrature oracle needs one degree of freedom, got {}",
            psi.n()
        )));
    }
    check_dim(z, 2)?;
    let hbar = psi.hbar;
    let xw = psi.x[(0, 0)];
    let yw = psi.y[(0, 0)];
    let d = z.difference(&psi.center);
    let (x, p) = (d[0], d[1]);
    let amplitude = (xw / (PI * hbar)).sqrt();
    let width = Complex64::new(xw, yw) / (2.0 * hbar);
    let integrand = |y: f64| {
        let a = x + 0.5 * y;
        let b = x - 0.5 * y;
        let exponent = -width * a * a - width.conj() * b * b - Complex64::new(0.0, p * y / hbar);
        amplitude * exponent.exp().re / (2.0 * PI * hbar)
    };

    let mut half_width = 8.0 * (hbar / xw).sqrt();
    let mut value = quadrature::integrate(integrand, -half_width, half_width, 1e-13, 1e-11)?;
    for _ in 0..12 {
        half_width *= 2.0;
        let next = quadrature::integrate(integrand, -half_width, half_width, 1e-13, 1e-11)?;
        let change = (next - value).abs();
        value = next;
        if change < 1e-8 {
            return Ok(value);
        }
    }
    Err(Error::QuadratureFailure(
        "integration window did not stabilise".into(),
    ))
}

/// The blob `{z^T G z <= hbar}` with normalizer
/// `S = [[X^{-1/2}, 0], [-Y X^{-1/2}, X^{1/2}]]`, so that `G = (S S^T)^{-1}`.
pub fn blob_from_gaussian(psi: &GaussianPureState) -> Result<QuantumBlob> {
    let n = psi.n();
    let e = spd_eigen(&psi.x)?;
    let x_half = e.map_values(f64::sqrt);
    let x_inv_half = e.map_values(|w| 1.0 / w.sqrt());
    let lower = -&(&psi.y * &x_inv_half);
    let s = Matrix::from_blocks(&x_inv_half, &Matrix::zeros(n, n), &lower, &x_half);
    QuantumBlob::new(psi.center.clone(), SymplecticMatrix::new(s)?, psi.hbar)
}

/// The pure Gaussian whose Wigner ellipsoid is the blob: with
/// `S = [[A0, 0], [C0, A0^{-1}]] R` the lower-triangular/rotation splitting,
/// `X = A0^{-2}` and `Y = -A0^{-1} C0^T`.
pub fn gaussian_from_blob(q: &QuantumBlob) -> Result<GaussianPureState> {
    let f = pre_iwasawa(q.s())?;
    let a0_sq = (&f.a0 * &f.a0).symmetrized();
    let x = inv_spd(&a0_sq)?;
    let a0_inv = inv_spd(&f.a0)?;
    let y = -&(&a0_inv * &f.c0.transpose());
    GaussianPureState::new(x, y, q.center().clone(), q.hbar())
}

/// `Sigma = (hbar / 2) shape^{-1}`.
pub fn covariance(w: &WignerGaussian) -> Result<CovarianceMatrix> {
    CovarianceMatrix::new(inv_spd(&w.shape)?.scale(w.hbar / 2.0), w.hbar)
}

/// Some eigenvalue of `Sigma` lies below `hbar / 2`.
pub fn is_squeezed(sigma: &CovarianceMatrix) -> Result<bool> {
    let min = eigh(&sigma.sigma)?.values[0];
    Ok(min < sigma.hbar / 2.0 * (1.0 - ADM_TOL))
}

/// `e` is admissible and its shape has an ordinary eigenvalue above 1.
pub fn is_squeezed_ellipsoid(e: &Ellipsoid) -> Result<bool> {
    if !is_admissible(e)? {
        return Ok(false);
    }
    let max = *eigh(e.shape())?.values.last().expect("non-empty");
    Ok(max > 1.0 + ADM_TOL)
}

/// Push-forward under `z -> S z`: shape `S^{-T} shape S^{-1}`, center `S c`.
pub fn transform_wigner(w: &WignerGaussian, s: &SymplecticMatrix) -> Result<WignerGaussian> {
    if s.rows() != w.shape.rows() {
        return Err(Error::DimensionMismatch {
            expected: w.shape.rows(),
            got: s.rows(),
        });
    }
    let inv = s.inverse();
    let shape = inv
        .tr_mul(&(w.shape.as_matrix() * inv.as_matrix()))
        .symmetrized();
    WignerGaussian::new(shape, w.center.mapped(s), w.hbar)
}

pub fn translate_wigner(w: &WignerGaussian, z0: &PhasePoint) -> Result<WignerGaussian> {
    check_dim(z0, w.shape.rows())?;
    Ok(WignerGaussian {
        center: w.center.translate(z0),
        ..w.clone()
    })
}

/// Convolution of the Wigner function `w` with the pure Gaussian of the blob
/// `q`: shape `(H^{-1} + G^{-1})^{-1}` with `G = (S S^T)^{-1}`, centers added.
pub fn smooth(w: &WignerGaussian, q: &QuantumBlob) -> Result<WignerGaussian> {
    if q.n() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: q.n(),
        });
    }
    if q.hbar() != w.hbar {
        return Err(Error::InvalidParameter(format!(
            "hbar differs: state uses {}, blob uses {}",
            w.hbar,
            q.hbar()
        )));
    }
    let g_inv = &**q.s() * &q.s().transpose();
    let sum = &inv_spd(&w.shape)? + &g_inv;
    let f = inv_spd(&sum.symmetrized())?;
    WignerGaussian::new(f, w.center.translate(q.center()), w.hbar)
}

/// Whether `|x|^2 / alpha^2 + |p|^2 / beta^2 <= hbar` is admissible, which
/// holds exactly when `alpha beta >= 1`.
pub fn debruijn_admissible(alpha: f64, beta: f64, n: usize, hbar: f64) -> Result<bool> {
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "widths must be positive, got alpha={alpha}, beta={beta}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let d: Vec<f64> = (0..2 * n)
        .map(|i| {
            if i < n {
                1.0 / (alpha * alpha)
            } else {
                1.0 / (beta * beta)
            }
        })
        .collect();
    is_admissible(&Ellipsoid::centered(Matrix::from_diagonal(&d), hbar)?)
}

/// The pure Gaussian of the companion blob of an ellipsoid of Gromov width
/// `pi hbar`.
pub fn companion_gaussian(e: &Ellipsoid) -> Result<WignerGaussian> {
    wigner_matrix(&gaussian_from_blob(&companion_blob(e)?)?)
}

/// Ellipsoid of a blob, as a pure-state Wigner function.
pub fn blob_wigner(q: &QuantumBlob) -> Result<WignerGaussian> {
    let e = blob_to_ellipsoid(q);
    WignerGaussian::new(e.shape().clone(), e.center().clone(), e.hbar())
}
