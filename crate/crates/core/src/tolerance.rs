//! Numerical tolerances shared across the crate.
//!
//! Kernel tolerances are the tightest; every layer above loosens by about an
//! order of magnitude to absorb composition error.

/// Relative symmetry tolerance: `|a_ij - a_ji| <= SYM_TOL * (1 + max|a|)`.
pub const SYM_TOL: f64 = 1e-10;
/// Positive definiteness: every eigenvalue must exceed `PD_TOL * ||A||`.
pub const PD_TOL: f64 = 1e-12;
/// Eigen-decomposition residual tolerance.
pub const EIG_TOL: f64 = 1e-10;
/// Absolute max-norm tolerance for `S^T J S = J`.
pub const SYMP_TOL: f64 = 1e-9;
/// Minimum `|omega(u, v)|` for an orthonormal pair to span a symplectic plane.
pub const PLANE_TOL: f64 = 1e-6;
/// Relative tolerance on Williamson reconstructions.
pub const WIL_TOL: f64 = 1e-8;
/// Tolerance when comparing symplectic spectra.
pub const SPEC_TOL: f64 = 1e-8;
/// Relative clustering threshold for repeated symplectic eigenvalues.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Slack on the componentwise spectral comparison used by ellipsoid embedding.
pub const EMBED_SLACK: f64 = 1e-10;
/// Membership slack for sampled boundary points of an embedded ellipsoid.
pub const MEMBERSHIP_SLACK: f64 = 1e-9;
/// Admissibility (uncertainty principle) tolerance.
pub const ADM_TOL: f64 = 1e-9;
/// Tolerance on the symplectic spectrum of a quantum blob.
pub const BLOB_TOL: f64 = 1e-8;
/// Relative tolerance on capacities.
pub const CAP_TOL: f64 = 1e-8;
/// Hermitian semi-definiteness tolerance, relative to the matrix norm.
pub const HERM_TOL: f64 = 1e-10;
/// Largest matrix handled by the non-symmetric eigenvalue routine.
pub const GENERAL_DIM_CAP: usize = 20;
/// Largest number of degrees of freedom accepted by the generators and CLI.
pub const MAX_DEGREES_OF_FREEDOM: usize = 10;
