use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("phase space matrices must have even dimension, got {0}")]
    OddDimension(usize),

    #[error("dimension {dim} exceeds the supported cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("matrix is not symmetric (asymmetry {asymmetry:.3e})")]
    NonSymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix is not symplectic (residual {residual:.3e})")]
    NotSymplectic { residual: f64 },

    #[error("blocks do not form a unitary matrix (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("{what} did not converge")]
    NoConvergence { what: &'static str },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("could not draw a non-degenerate symplectic plane")]
    DegenerateDraw,

    #[error("plane is degenerate for this ellipsoid")]
    DegeneratePlane,

    #[error("degenerate symplectic eigenspace could not be paired")]
    DegenerateSpectrumFailure,

    #[error("ellipsoid capacity {capacity} differs from the required {required}")]
    CapacityMismatch { capacity: f64, required: f64 },

    #[error("ellipsoid is not quantum mechanically admissible")]
    NotAdmissible,

    #[error("ellipsoid is not a quantum blob")]
    NotAQuantumBlob,

    #[error("index set is empty")]
    EmptyIndexSet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
