use super::Matrix;
use crate::error::{Error, Result};
use crate::tolerance::SYM_TOL;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V diag(values) V^T` of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthogonal matrix whose columns are the matching eigenvectors.
    pub vectors: Matrix,
}

impl SymmetricEigen {
    /// Rebuilds `V f(diag) V^T` for a scalar function of the eigenvalues.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&w| f(w)).collect();
        let v = &self.vectors;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)]).sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.map_values(|w| w)
    }
}

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
///
/// Input must be symmetric within `SYM_TOL * (1 + max|a|)`; it is symmetrized
/// before iterating. Rotations sweep all `(p, q)` pairs until the off-diagonal
/// Frobenius norm drops below machine precision relative to the whole matrix.
pub fn eigh(a: &Matrix) -> Result<SymmetricEigen> {
    let n = a.ensure_square()?;
    let asymmetry = a.asymmetry();
    if asymmetry > SYM_TOL * (1.0 + a.max_abs()) {
        return Err(Error::NonSymmetric { asymmetry });
    }
    let mut w = a.symmetrized();
    let mut v = Matrix::identity(n);
    let scale = w.frobenius();

    let mut converged = scale == 0.0 || n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| w[(p, q)] * w[(p, q)])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut w, &mut v, p, q, c, s);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Jacobi eigensolver",
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].total_cmp(&w[(j, j)]));
    let values = order.iter().map(|&i| w[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(SymmetricEigen { values, vectors })
}

fn rotate(w: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = w.rows();
    for k in 0..n {
        let (wkp, wkq) = (w[(k, p)], w[(k, q)]);
        w[(k, p)] = c * wkp - s * wkq;
        w[(k, q)] = s * wkp + c * wkq;
    }
    for k in 0..n {
        let (wpk, wqk) = (w[(p, k)], w[(q, k)]);
        w[(p, k)] = c * wpk - s * wqk;
        w[(q, k)] = s * wpk + c * wqk;
    }
    w[(p, q)] = 0.0;
    w[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_is_sorted() {
        let e = eigh(&Matrix::from_diagonal(&[3.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 3.0]);
        assert_eq!(e.vectors[(0, 0)].abs(), 0.0);
        assert_eq!(e.vectors[(1, 0)].abs(), 1.0);
        assert_eq!(e.vectors[(0, 1)].abs(), 1.0);
    }

    #[test]
    fn swap_matrix() {
        let e = eigh(&Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvector for -1 is (1, -1)/sqrt 2 up to sign
        assert!((e.vectors[(0, 0)].abs() - h).abs() < 1e-15);
        assert!((e.vectors[(0, 0)] + e.vectors[(1, 0)]).abs() < 1e-15);
        assert!((e.vectors[(0, 1)] - e.vectors[(1, 1)]).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        assert!(matches!(eigh(&a), Err(Error::NonSymmetric { .. })));
    }

    #[test]
    fn zero_and_scalar() {
        let e = eigh(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = eigh(&Matrix::from_rows(&[[-2.5]])).unwrap();
        assert_eq!(e.values, vec![-2.5]);
    }
}
