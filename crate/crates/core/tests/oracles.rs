//! Cross-checks against computations that share no code with the library:
//! nalgebra's eigensolvers, brute-force grids and polygon areas.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use symblob_core::blobs::{
    companion_blob, coordinate_subspace_section, section_area, section_outline, Ellipsoid,
    QuantumBlob,
};
use symblob_core::gaussian::{
    random_gaussian_state, smooth, wigner_eval, wigner_matrix, WignerGaussian,
};
use symblob_core::matcore::{eigh, eigvals_general};
use symblob_core::random::{random_orthogonal, random_spd, rng};
use symblob_core::sympcore::{random_symplectic, standard_j, PhasePoint, SymplecticPlane};
use symblob_core::williamson::symplectic_spectrum;
use symblob_core::Matrix;

fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

#[test]
fn eigh_recovers_known_spectrum() {
    let mut r = rng(77);
    let q = random_orthogonal(&mut r, 6);
    let d = [-3.0, -0.5, 0.25, 1.0, 2.0, 7.5];
    let a = (&Matrix::from_fn(6, 6, |i, j| q[(i, j)] * d[j]) * &q.transpose()).symmetrized();
    let e = eigh(&a).unwrap();
    for (got, want) in e.values.iter().zip(d) {
        assert!((got - want).abs() < 1e-10);
    }
}

#[test]
fn eigh_agrees_with_nalgebra() {
    for seed in 0..30 {
        let a = random_spd(2 + seed as usize % 7, seed);
        let ours = eigh(&a).unwrap();
        let mut theirs: Vec<f64> = to_na(&a)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        theirs.sort_by(f64::total_cmp);
        for (x, y) in ours.values.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-12 * (1.0 + y.abs()), "seed {seed}");
        }
        let av = &a * &ours.vectors;
        let vd = Matrix::from_fn(a.rows(), a.cols(), |i, j| {
            ours.vectors[(i, j)] * ours.values[j]
        });
        assert!(av.max_abs_diff(&vd) < 1e-10 * a.max_abs());
    }
}

#[test]
fn general_eigenvalues_agree_with_nalgebra() {
    for seed in 0..20 {
        let n = 2 + seed as usize % 6;
        let a = Matrix::from_fn(n, n, |i, j| {
            ((i * 7 + j * 3 + seed as usize) % 11) as f64 - 5.0
        });
        let mut ours = eigvals_general(&a).unwrap();
        let mut theirs: Vec<_> = to_na(&a).complex_eigenvalues().iter().copied().collect();
        let key = |z: &num_complex::Complex64| {
            (z.re * 1e6).round() as i64 * 1_000_000 + (z.im * 1e3).round() as i64
        };
        ours.sort_by_key(key);
        theirs.sort_by_key(|z| key(&num_complex::Complex64::new(z.re, z.im)));
        for (x, y) in ours.iter().zip(&theirs) {
            assert!(
                (x.re - y.re).abs() < 1e-8 && (x.im - y.im).abs() < 1e-8,
                "seed {seed}: {x} vs {y}"
            );
        }
    }
}

#[test]
fn symplectic_spectrum_matches_eigenvalues_of_jm() {
    for seed in 0..40 {
        let n = 1 + seed as usize % 4;
        let m = random_spd(2 * n, seed);
        let jm = &standard_j(n) * &m;
        let mut moduli: Vec<f64> = to_na(&jm)
            .complex_eigenvalues()
            .iter()
            .filter(|z| z.im > 0.0)
            .map(|z| z.im)
            .collect();
        moduli.sort_by(|a, b| b.total_cmp(a));
        let spec = symplectic_spectrum(&m).unwrap();
        assert_eq!(moduli.len(), n);
        for (a, b) in spec.values().iter().zip(&moduli) {
            assert!((a - b).abs() < 1e-10 * b.max(1.0), "seed {seed}");
        }
        // the library's own general solver gives the same moduli
        let ours = eigvals_general(&jm).unwrap();
        for z in &ours {
            assert!(z.re.abs() < 1e-9 * spec.largest());
        }
    }
}

/// Trapezoid rule over `[-l, l]^d`; exact to rounding for Gaussians that
/// have decayed at the edges.
fn grid_integral(dim: usize, l: f64, steps: usize, f: impl Fn(&[f64]) -> f64) -> f64 {
    let h = 2.0 * l / steps as f64;
    let pts = steps + 1;
    let mut idx = vec![0usize; dim];
    let mut z = vec![0.0; dim];
    let mut sum = 0.0;
    loop {
        for k in 0..dim {
            z[k] = -l + h * idx[k] as f64;
        }
        sum += f(&z);
        let mut k = 0;
        loop {
            if k == dim {
                return sum * h.powi(dim as i32);
            }
            idx[k] += 1;
            if idx[k] < pts {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn pure_wigner_functions_integrate_to_one() {
    for seed in 0..5 {
        let w = wigner_matrix(&random_gaussian_state(1, seed, 1.0).unwrap()).unwrap();
        let total = grid_integral(2, 14.0, 560, |z| {
            wigner_eval(&w, &PhasePoint::new(z.to_vec()).unwrap()).unwrap()
        });
        assert!((total - 1.0).abs() < 1e-9, "seed {seed}: {total}");
    }
    // a mildly squeezed and chirped state keeps the 4-d grid affordable
    let psi = symblob_core::GaussianPureState::centered(
        Matrix::from_rows(&[[1.2, 0.3], [0.3, 0.8]]),
        Matrix::from_rows(&[[0.2, -0.1], [-0.1, 0.3]]),
        1.0,
    )
    .unwrap();
    let w = wigner_matrix(&psi).unwrap();
    let total = grid_integral(4, 8.0, 40, |z| {
        wigner_eval(&w, &PhasePoint::new(z.to_vec()).unwrap()).unwrap()
    });
    assert!((total - 1.0).abs() < 1e-6, "{total}");
}

#[test]
fn smoothing_matches_grid_convolution() {
    let hbar = 1.0;
    for seed in 0..3 {
        let h_shape = {
            let s = random_symplectic(1, seed);
            let d = Matrix::from_diagonal(&[0.6, 0.6]);
            s.tr_mul(&(&d * &s))
        };
        let w = WignerGaussian::new(h_shape, PhasePoint::origin(1), hbar).unwrap();
        let q = QuantumBlob::centered(random_symplectic(1, seed + 100), hbar).unwrap();
        let g = q.to_ellipsoid();
        let wg = WignerGaussian::new(g.shape().clone(), PhasePoint::origin(1), hbar).unwrap();
        let out = smooth(&w, &q).unwrap();
        for z in [[0.0, 0.0], [0.4, -0.3], [1.0, 1.2]] {
            let conv = grid_integral(2, 6.0, 240, |zp| {
                let shifted = PhasePoint::new(vec![z[0] - zp[0], z[1] - zp[1]]).unwrap();
                wigner_eval(&w, &shifted).unwrap()
                    * wigner_eval(&wg, &PhasePoint::new(zp.to_vec()).unwrap()).unwrap()
            });
            let exact = wigner_eval(&out, &PhasePoint::new(z.to_vec()).unwrap()).unwrap();
            assert!(
                (conv - exact).abs() < 1e-4,
                "seed {seed}: {conv} vs {exact}"
            );
        }
    }
}

fn shoelace(points: &[(f64, f64, f64)]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|k| {
            let (_, x0, y0) = points[k];
            let (_, x1, y1) = points[(k + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum::<f64>()
        .abs()
}

#[test]
fn outline_polygon_area_converges_to_section_area() {
    for seed in 0..10 {
        let e = QuantumBlob::centered(random_symplectic(2, seed), 1.0)
            .unwrap()
            .to_ellipsoid();
        let plane = SymplecticPlane::random(2, seed).unwrap();
        let exact = section_area(&e, &plane).unwrap();
        for samples in [100usize, 1000] {
            let poly = shoelace(&section_outline(&e, &plane, samples).unwrap());
            let bound = 20.0 * exact / (samples * samples) as f64;
            assert!(poly <= exact && exact - poly < bound, "seed {seed}");
        }
    }
}

#[test]
fn subspace_section_boundary_lies_on_the_blob() {
    for seed in 0..10 {
        let q = QuantumBlob::centered(random_symplectic(3, seed), 1.0).unwrap();
        let e = q.to_ellipsoid();
        let sec = coordinate_subspace_section(&q, &[1, 3]).unwrap();
        let keep = [0usize, 2, 3, 5];
        let mut r = rng(seed);
        for _ in 0..50 {
            let u = random_unit(&mut r, 4);
            let scale = (sec.hbar() / sec.shape().quadratic_form(&u)).sqrt();
            let mut z = vec![0.0; 6];
            for (k, &i) in keep.iter().enumerate() {
                z[i] = scale * u[k];
            }
            assert!((e.level(&z) - 1.0).abs() < 1e-12);
        }
    }
}

fn random_unit(r: &mut symblob_core::random::SeededRng, len: usize) -> Vec<f64> {
    let v = symblob_core::random::uniform_vector(r, len);
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

#[test]
fn companion_blob_is_contained_in_its_ellipsoid() {
    for seed in 0..20 {
        // spectrum (1, l) with l < 1: Gromov width exactly pi hbar
        let s = random_symplectic(2, seed);
        let l = 0.2 + 0.7 * (seed as f64 / 20.0);
        let d = Matrix::from_diagonal(&[1.0, l, 1.0, l]);
        let e = Ellipsoid::centered(s.tr_mul(&(&d * &s)), 1.0).unwrap();
        let q = companion_blob(&e).unwrap();
        let mut r = rng(seed);
        for _ in 0..200 {
            let w = random_unit(&mut r, 4);
            let z = q.s().matvec(&w);
            assert!(e.level(&z) <= 1.0 + 1e-9, "seed {seed}");
        }
        assert!((symblob_core::blobs::gromov_width(&q.to_ellipsoid()).unwrap() - PI).abs() < 1e-9);
    }
}
