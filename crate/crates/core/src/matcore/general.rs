//! Eigenvalues of a general real square matrix: balancing, Householder
//! reduction to upper Hessenberg form and the Francis double-shift QR
//! iteration.

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};
use crate::tolerance::GENERAL_DIM_CAP;

const MAX_ITERATIONS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of `a`, with multiplicity, sorted by real then imaginary
/// part.
pub fn eigvals_general(a: &Matrix) -> Result<Vec<Complex64>> {
    let n = a.ensure_square()?;
    if n > GENERAL_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: n,
            cap: GENERAL_DIM_CAP,
        });
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let mut values = hqr(&mut h)?;
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(values)
}

/// Diagonal similarity scaling by powers of two so rows and columns have
/// comparable norms.
fn balance(a: &mut Matrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= g;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
    }
}

/// In-place orthogonal reduction to upper Hessenberg form.
fn hessenberg(a: &mut Matrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut v: Vec<f64> = ((k + 1)..n).map(|i| a[(i, k)]).collect();
        let alpha = super::norm(&v);
        if alpha == 0.0 {
            continue;
        }
        let alpha = if v[0] > 0.0 { -alpha } else { alpha };
        v[0] -= alpha;
        let vnorm = super::norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= vnorm);

        // A <- (I - 2vv^T) A on rows k+1..n
        for j in 0..n {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr * a[(k + 1 + r, j)])
                .sum();
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] -= 2.0 * vr * s;
            }
        }
        // A <- A (I - 2vv^T) on columns k+1..n
        for i in 0..n {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(c, vc)| vc * a[(i, k + 1 + c)])
                .sum();
            for (c, vc) in v.iter().enumerate() {
                a[(i, k + 1 + c)] -= 2.0 * vc * s;
            }
        }
        for i in (k + 2)..n {
            a[(i, k)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
fn hqr(a: &mut Matrix) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(out);
    }
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }

    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let at = |a: &Matrix, i: isize, j: isize| a[(i as usize, j as usize)];

    while nn >= 0 {
        let mut its = 0;
        loop {
            // Find a negligible subdiagonal element.
            let mut l = nn;
            while l >= 1 {
                let mut s = at(a, l - 1, l - 1).abs() + at(a, l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at(a, l, l - 1).abs() + s == s {
                    a[(l as usize, (l - 1) as usize)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = at(a, nn, nn);
            if l == nn {
                out[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = at(a, nn - 1, nn - 1);
            let mut w = at(a, nn, nn - 1) * at(a, nn - 1, nn);
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign(z, p);
                    let hi = x + z;
                    let lo = if z != 0.0 { x - w / z } else { hi };
                    out[(nn - 1) as usize] = Complex64::new(hi, 0.0);
                    out[nn as usize] = Complex64::new(lo, 0.0);
                } else {
                    out[(nn - 1) as usize] = Complex64::new(x + p, -z);
                    out[nn as usize] = Complex64::new(x + p, z);
                }
                nn -= 2;
                break;
            }
            if its == MAX_ITERATIONS_PER_EIGENVALUE {
                return Err(Error::NoConvergence {
                    what: "Hessenberg QR iteration",
                });
            }
            if its == 10 || its == 20 || its == 40 {
                // exceptional shift
                t += x;
                for i in 0..=nn {
                    a[(i as usize, i as usize)] -= x;
                }
                let s = at(a, nn, nn - 1).abs() + at(a, nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Look for two consecutive small subdiagonal elements.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = at(a, m, m);
                let r0 = x - z;
                let s0 = y - z;
                p = (r0 * s0 - w) / at(a, m + 1, m) + at(a, m, m + 1);
                q = at(a, m + 1, m + 1) - z - r0 - s0;
                r = at(a, m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = at(a, m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (at(a, m - 1, m - 1).abs() + z.abs() + at(a, m + 1, m + 1).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[(i as usize, (i - 2) as usize)] = 0.0;
                if i != m + 2 {
                    a[(i as usize, (i - 3) as usize)] = 0.0;
                }
            }

            // Double QR step on rows l..=nn and columns m..=nn.
            let mut k = m;
            while k < nn {
                let mut xk = 0.0;
                if k != m {
                    p = at(a, k, k - 1);
                    q = at(a, k + 1, k - 1);
                    r = if k != nn - 1 {
                        at(a, k + 2, k - 1)
                    } else {
                        0.0
                    };
                    xk = p.abs() + q.abs() + r.abs();
                    if xk != 0.0 {
                        p /= xk;
                        q /= xk;
                        r /= xk;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[(k as usize, (k - 1) as usize)] = -at(a, k, k - 1);
                        }
                    } else {
                        a[(k as usize, (k - 1) as usize)] = -s * xk;
                    }
                    p += s;
                    let xs = p / s;
                    let ys = q / s;
                    let zs = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let (ku, ju) = (k as usize, j as usize);
                        let mut pp = a[(ku, ju)] + q * a[(ku + 1, ju)];
                        if k != nn - 1 {
                            pp += r * a[(ku + 2, ju)];
                            a[(ku + 2, ju)] -= pp * zs;
                        }
                        a[(ku + 1, ju)] -= pp * ys;
                        a[(ku, ju)] -= pp * xs;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let (iu, ku) = (i as usize, k as usize);
                        let mut pp = xs * a[(iu, ku)] + ys * a[(iu, ku + 1)];
                        if k != nn - 1 {
                            pp += zs * a[(iu, ku + 2)];
                            a[(iu, ku + 2)] -= pp * r;
                        }
                        a[(iu, ku + 1)] -= pp * q;
                        a[(iu, ku)] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: Complex64, re: f64, im: f64) -> bool {
        (z.re - re).abs() < 1e-12 && (z.im - im).abs() < 1e-12
    }

    #[test]
    fn rotation_generator() {
        let j = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]);
        let e = eigvals_general(&j).unwrap();
        assert!(close(e[0], 0.0, -1.0));
        assert!(close(e[1], 0.0, 1.0));
    }

    #[test]
    fn j_times_diagonal() {
        // J diag(2, 8) = [[0, 8], [-2, 0]] -> +-4i
        let a = Matrix::from_rows(&[[0.0, 8.0], [-2.0, 0.0]]);
        let e = eigvals_general(&a).unwrap();
        assert!(close(e[0], 0.0, -4.0));
        assert!(close(e[1], 0.0, 4.0));
    }

    #[test]
    fn triangular_and_companion() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 3.0], [0.0, 4.0, 5.0], [0.0, 0.0, 6.0]]);
        let e = eigvals_general(&a).unwrap();
        for (z, want) in e.iter().zip([1.0, 4.0, 6.0]) {
            assert!(close(*z, want, 0.0), "{z}");
        }
        // companion matrix of (x-1)(x-2)(x-3)(x-4) = x^4 - 10x^3 + 35x^2 - 50x + 24
        let c = Matrix::from_rows(&[
            [10.0, -35.0, 50.0, -24.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
        ]);
        let e = eigvals_general(&c).unwrap();
        for (z, want) in e.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((z.re - want).abs() < 1e-9 && z.im.abs() < 1e-9, "{z}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = Matrix::identity(GENERAL_DIM_CAP + 1);
        assert!(matches!(
            eigvals_general(&a),
            Err(Error::DimensionCap { .. })
        ));
    }
}
