//! Linear symplectic geometry of phase space.
//!
//! The crate is organised bottom-up:
//!
//! - [`matcore`]: small dense kernels (Jacobi eigensolver, SPD square roots and
//!   inverses, a Hessenberg/QR eigenvalue routine for non-symmetric matrices).
//! - [`sympcore`]: the symplectic group `Sp(n)`, its unitary subgroup, the
//!   lower-triangular times unitary factorization and symplectic planes.
//! - [`williamson`]: Williamson normal forms, symplectic spectra, spectral
//!   monotonicity and constructive ellipsoid embeddings.
//! - [`blobs`]: phase-space ellipsoids, quantum blobs, Gromov width and the
//!   uncertainty-principle admissibility tests.
//! - [`gaussian`]: Gaussian pure and mixed states through their Wigner
//!   functions, the blob/Gaussian correspondence and Gaussian smoothing.
//!
//! Phase-space coordinates are always ordered `(x_1, ..., x_n, p_1, ..., p_n)`
//! and the symplectic form is `omega(z, z') = z'^T J z` with
//! `J = [[0, I], [-I, 0]]`.

pub mod blobs;
pub mod error;
pub mod gaussian;
pub mod matcore;
pub mod quadrature;
pub mod random;
pub mod sympcore;
pub mod tolerance;
pub mod williamson;

pub use blobs::{AdmissibilityConditions, Ellipsoid, QuantumBlob};
pub use error::{Error, Result};
pub use gaussian::{CovarianceMatrix, GaussianPureState, StateKind, WignerGaussian};
pub use matcore::{Matrix, SpdMatrix, SymmetricEigen};
pub use sympcore::{
    PhasePoint, PreIwasawaFactors, SymplecticCheck, SymplecticMatrix, SymplecticPlane, UnitaryBlock,
};
pub use williamson::{Embedding, SymmetricSymplecticForm, SymplecticSpectrum, WilliamsonForm};
