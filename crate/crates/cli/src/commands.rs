//! One function per command. Each reads its inputs, calls into the core
//! crate and fills a [`Report`].

use std::f64::consts::PI;
use std::path::Path;

use serde_json::json;
use symblob_core::blobs::{
    admissibility_conditions, ball_volume, blob_volume, companion_blob,
    coordinate_subspace_section, gromov_width, is_admissible, is_quantum_blob, projection_area,
    quant_manifold_dim, section_area, section_outline,
};
use symblob_core::gaussian::{
    blob_from_gaussian, covariance, debruijn_admissible, gaussian_from_blob, is_squeezed,
    is_squeezed_ellipsoid, random_gaussian_state, smooth, wigner_eval, wigner_matrix,
    wigner_quadrature_oracle,
};
use symblob_core::random::random_spd;
use symblob_core::sympcore::{is_symplectic, random_symplectic};
use symblob_core::tolerance::MAX_DEGREES_OF_FREEDOM;
use symblob_core::williamson::{symplectic_spectrum, williamson_diagonalize};
use symblob_core::{
    CovarianceMatrix, Ellipsoid, PhasePoint, QuantumBlob, StateKind, SymplecticPlane,
    WignerGaussian,
};

use crate::error::{CliError, CliResult};
use crate::io::{self, GaussianFile, Input, MatrixFile};
use crate::report::Report;

/// What a command prints on success.
pub enum Output {
    Report(Report),
    /// Raw text written verbatim, e.g. CSV or a generated file.
    Text(String),
}

/// Either a 1-based coordinate plane index or a `2n x 2` basis file.
pub enum PlaneSpec {
    Coordinate(usize),
    File(Input),
}

impl PlaneSpec {
    pub fn parse(raw: &str) -> CliResult<Self> {
        match raw.parse::<usize>() {
            Ok(j) => Ok(Self::Coordinate(j)),
            Err(_) => Ok(Self::File(Input::read(Path::new(raw))?)),
        }
    }

    fn resolve(&self, n: usize, report: &mut Report) -> CliResult<SymplecticPlane> {
        match self {
            Self::Coordinate(j) => {
                report.arg("plane", j);
                Ok(SymplecticPlane::coordinate(n, *j)?)
            }
            Self::File(input) => {
                report.arg("plane", input.name());
                report.input("plane", input);
                let b = input.matrix()?;
                if b.rows() != 2 * n || b.cols() != 2 {
                    return Err(CliError::from(symblob_core::Error::DimensionMismatch {
                        expected: 2 * n,
                        got: b.rows(),
                    })
                    .context(&format!(
                        "{}: plane basis must be {}x2, got {}x{}",
                        input.name(),
                        2 * n,
                        b.rows(),
                        b.cols()
                    )));
                }
                Ok(SymplecticPlane::from_basis(&b.column(0), &b.column(1))?)
            }
        }
    }
}

pub struct Ctx {
    pub hbar: f64,
}

impl Ctx {
    fn report(&self, name: &str) -> Report {
        let mut r = Report::new(name);
        r.arg("hbar", self.hbar);
        r
    }

    fn ellipsoid(&self, input: &Input) -> CliResult<Ellipsoid> {
        Ellipsoid::centered(input.matrix()?, self.hbar)
            .map_err(|e| CliError::from(e).context(&input.name()))
    }

    fn blob(&self, input: &Input) -> CliResult<QuantumBlob> {
        Ok(self.ellipsoid(input)?.to_blob()?)
    }

    fn gaussian(&self, input: &Input) -> CliResult<symblob_core::GaussianPureState> {
        input
            .json::<GaussianFile>()?
            .to_state(self.hbar)
            .map_err(|e| e.context(&input.name()))
    }
}

fn spectrum_fields(r: &mut Report, e: &Ellipsoid) -> CliResult<()> {
    let spec = e.symplectic_spectrum()?;
    r.result("spectrum", spec.values());
    r.result("radii", spec.radii(e.hbar()));
    r.result("capacity", gromov_width(e)?);
    r.result("admissible", is_admissible(e)?);
    Ok(())
}

fn write_out(r: &mut Report, out: Option<&Path>, text: &str) -> CliResult<()> {
    if let Some(path) = out {
        io::write_text(path, text)?;
        r.arg("out", io::file_name(path));
        r.result("out_sha256", io::sha256_hex(text.as_bytes()));
    }
    Ok(())
}

pub fn spectrum(ctx: &Ctx, matrix: &Input) -> CliResult<Output> {
    let mut r = ctx.report("spectrum");
    r.input("matrix", matrix);
    let e = ctx.ellipsoid(matrix)?;
    r.result("n", e.n());
    spectrum_fields(&mut r, &e)?;
    Ok(Output::Report(r))
}

pub fn williamson(ctx: &Ctx, matrix: &Input, out: Option<&Path>) -> CliResult<Output> {
    let mut r = ctx.report("williamson");
    r.input("matrix", matrix);
    let e = ctx.ellipsoid(matrix)?;
    let w = williamson_diagonalize(e.shape())?;
    r.result("spectrum", w.spectrum.values());
    r.matrix("d", &w.d());
    r.matrix("s", &w.s);
    r.result("residual", w.reconstruct().max_abs_diff(e.shape()));
    r.result("relative_residual", w.relative_residual(e.shape()));
    r.result("symplectic_residual", is_symplectic(&w.s)?.residual);
    write_out(&mut r, out, &io::to_json_text(&MatrixFile::from(&*w.s)))?;
    Ok(Output::Report(r))
}

pub fn blob_check(ctx: &Ctx, matrix: &Input) -> CliResult<Output> {
    let mut r = ctx.report("blob check");
    r.input("matrix", matrix);
    let e = ctx.ellipsoid(matrix)?;
    r.result("blob", is_quantum_blob(&e)?);
    spectrum_fields(&mut r, &e)?;
    Ok(Output::Report(r))
}

pub fn blob_area(ctx: &Ctx, matrix: &Input, plane: &PlaneSpec, project: bool) -> CliResult<Output> {
    let mut r = ctx.report(if project {
        "blob project"
    } else {
        "blob section"
    });
    r.input("matrix", matrix);
    let e = ctx.ellipsoid(matrix)?;
    let plane = plane.resolve(e.n(), &mut r)?;
    let area = if project {
        projection_area(&e, &plane)?
    } else {
        section_area(&e, &plane)?
    };
    r.result("area", area);
    r.result("area_over_pi_hbar", area / (PI * ctx.hbar));
    Ok(Output::Report(r))
}

pub fn blob_volume_cmd(ctx: &Ctx, matrix: &Input) -> CliResult<Output> {
    let mut r = ctx.report("blob volume");
    r.input("matrix", matrix);
    let q = ctx.blob(matrix)?;
    r.result("volume", blob_volume(&q));
    r.result("ball_volume", ball_volume(q.n(), ctx.hbar));
    r.result("quant_manifold_dim", quant_manifold_dim(q.n()));
    Ok(Output::Report(r))
}

pub fn blob_companion(ctx: &Ctx, matrix: &Input, out: Option<&Path>) -> CliResult<Output> {
    let mut r = ctx.report("blob companion");
    r.input("matrix", matrix);
    let e = ctx.ellipsoid(matrix)?;
    let q = companion_blob(&e)?;
    let f = q.to_ellipsoid().shape().clone();
    r.matrix("blob", &f);
    r.matrix("s", q.s());
    write_out(&mut r, out, &io::to_json_text(&MatrixFile::from(&f)))?;
    Ok(Output::Report(r))
}

pub fn parse_indices(raw: &str) -> CliResult<Vec<usize>> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::parse(format!("bad index '{s}' in --indices")))
        })
        .collect()
}

pub fn blob_subspace(ctx: &Ctx, matrix: &Input, indices: &str) -> CliResult<Output> {
    let mut r = ctx.report("blob subspace");
    r.input("matrix", matrix);
    let idx = parse_indices(indices)?;
    r.arg("indices", &idx);
    let q = ctx.blob(matrix)?;
    let sec = coordinate_subspace_section(&q, &idx)?;
    r.matrix("shape", sec.shape());
    r.result("blob", is_quantum_blob(&sec)?);
    r.result("spectrum", sec.symplectic_spectrum()?.values());
    Ok(Output::Report(r))
}

pub fn gaussian_from_blob_cmd(ctx: &Ctx, matrix: &Input, out: Option<&Path>) -> CliResult<Output> {
    let mut r = ctx.report("gaussian from-blob");
    r.input("matrix", matrix);
    let psi = gaussian_from_blob(&ctx.blob(matrix)?)?;
    r.matrix("x", psi.x());
    r.matrix("y", psi.y());
    write_out(
        &mut r,
        out,
        &io::to_json_text(&GaussianFile::from_state(&psi)),
    )?;
    Ok(Output::Report(r))
}

pub fn gaussian_to_blob_cmd(ctx: &Ctx, gaussian: &Input, out: Option<&Path>) -> CliResult<Output> {
    let mut r = ctx.report("gaussian to-blob");
    r.input("gaussian", gaussian);
    let q = blob_from_gaussian(&ctx.gaussian(gaussian)?)?;
    let f = q.to_ellipsoid().shape().clone();
    r.matrix("blob", &f);
    r.matrix("s", q.s());
    write_out(&mut r, out, &io::to_json_text(&MatrixFile::from(&f)))?;
    Ok(Output::Report(r))
}

pub fn parse_point(raw: &str) -> CliResult<PhasePoint> {
    let coords = raw
        .split(',')
        .map(str::trim)
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::parse(format!("bad coordinate '{s}' in --point")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    Ok(PhasePoint::new(coords)?)
}

fn kind_name(w: &WignerGaussian) -> &'static str {
    match w.kind() {
        StateKind::Pure => "pure",
        StateKind::Mixed => "mixed",
    }
}

pub fn gaussian_wigner(ctx: &Ctx, gaussian: &Input, point: &str) -> CliResult<Output> {
    let mut r = ctx.report("gaussian wigner");
    r.input("gaussian", gaussian);
    let z = parse_point(point)?;
    r.arg("point", z.coords());
    let psi = ctx.gaussian(gaussian)?;
    let w = wigner_matrix(&psi)?;
    let value = wigner_eval(&w, &z)?;
    r.result("value", value);
    r.result("normalization", w.normalization());
    r.result("kind", kind_name(&w));
    r.matrix("shape", w.shape());
    if psi.n() == 1 {
        let q = wigner_quadrature_oracle(&psi, &z)?;
        r.result("quadrature", q);
        r.result("quadrature_error", (q - value).abs());
    }
    Ok(Output::Report(r))
}

pub fn gaussian_covariance(ctx: &Ctx, matrix: &Input) -> CliResult<Output> {
    let mut r = ctx.report("gaussian covariance");
    r.input("matrix", matrix);
    let e = ctx.ellipsoid(matrix)?;
    let w = WignerGaussian::new(e.shape().clone(), e.center().clone(), ctx.hbar)?;
    let sigma = covariance(&w)?;
    r.matrix("sigma", sigma.sigma());
    r.result("kind", kind_name(&w));
    r.result("normalization", w.normalization());
    let c = admissibility_conditions(&w.ellipsoid())?;
    r.result(
        "conditions",
        json!({ "a": c.a, "b": c.b, "c": c.c, "d": c.d }),
    );
    Ok(Output::Report(r))
}

pub fn gaussian_squeezed(ctx: &Ctx, matrix: &Input) -> CliResult<Output> {
    let mut r = ctx.report("gaussian squeezed");
    r.input("matrix", matrix);
    let e = ctx.ellipsoid(matrix)?;
    let inv = e
        .shape()
        .inverse()
        .ok_or_else(|| CliError::domain("shape matrix is singular"))?;
    let sigma = CovarianceMatrix::new(inv.symmetrized().scale(ctx.hbar / 2.0), ctx.hbar)?;
    r.matrix("sigma", sigma.sigma());
    r.result("admissible", is_admissible(&e)?);
    r.result("sigma_squeezed", is_squeezed(&sigma)?);
    r.result("squeezed", is_squeezed_ellipsoid(&e)?);
    Ok(Output::Report(r))
}

pub fn gaussian_smooth(ctx: &Ctx, state: &Input, blob: &Input) -> CliResult<Output> {
    let mut r = ctx.report("gaussian smooth");
    r.input("matrix", state);
    r.input("matrix2", blob);
    let h = ctx.ellipsoid(state)?;
    let w = WignerGaussian::new(h.shape().clone(), h.center().clone(), ctx.hbar)?;
    let q = ctx.blob(blob)?;
    if q.n() != w.n() {
        return Err(symblob_core::Error::DimensionMismatch {
            expected: 2 * w.n(),
            got: 2 * q.n(),
        }
        .into());
    }
    let out = smooth(&w, &q)?;
    r.matrix("shape", out.shape());
    r.result("spectrum", symplectic_spectrum(out.shape())?.values());
    r.result("kind", kind_name(&out));
    r.result("admissible", is_admissible(&out.ellipsoid())?);
    Ok(Output::Report(r))
}

pub fn gaussian_debruijn(ctx: &Ctx, alpha: f64, beta: f64, n: usize) -> CliResult<Output> {
    let mut r = ctx.report("gaussian debruijn");
    r.arg("alpha", alpha).arg("beta", beta).arg("n", n);
    check_n(n)?;
    r.result("product", alpha * beta);
    r.result("admissible", debruijn_admissible(alpha, beta, n, ctx.hbar)?);
    Ok(Output::Report(r))
}

pub fn plot_section(
    ctx: &Ctx,
    matrix: &Input,
    plane: &PlaneSpec,
    samples: usize,
    out: Option<&Path>,
) -> CliResult<Output> {
    let mut r = ctx.report("plot-section");
    r.input("matrix", matrix);
    r.arg("samples", samples);
    let e = ctx.ellipsoid(matrix)?;
    let plane = plane.resolve(e.n(), &mut r)?;
    let points = section_outline(&e, &plane, samples)?;
    let area = section_area(&e, &plane)?;
    let csv = io::section_csv(&points, area);
    r.result("area", area);
    match out {
        Some(_) => {
            write_out(&mut r, out, &csv)?;
            Ok(Output::Report(r))
        }
        None => Ok(Output::Text(csv)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RandomKind {
    Spd,
    Symplectic,
    Blob,
    Gaussian,
}

fn check_n(n: usize) -> CliResult<()> {
    if n == 0 || n > MAX_DEGREES_OF_FREEDOM {
        return Err(CliError::domain(format!(
            "degrees of freedom must be in 1..={MAX_DEGREES_OF_FREEDOM}, got {n}"
        )));
    }
    Ok(())
}

pub fn random(
    ctx: &Ctx,
    kind: RandomKind,
    n: usize,
    seed: u64,
    out: Option<&Path>,
) -> CliResult<Output> {
    check_n(n)?;
    let text = match kind {
        RandomKind::Spd => io::to_json_text(&MatrixFile::from(&random_spd(2 * n, seed))),
        RandomKind::Symplectic => io::to_json_text(&MatrixFile::from(&*random_symplectic(n, seed))),
        RandomKind::Blob => {
            let q = QuantumBlob::centered(random_symplectic(n, seed), ctx.hbar)?;
            io::to_json_text(&MatrixFile::from(q.to_ellipsoid().shape()))
        }
        RandomKind::Gaussian => io::to_json_text(&GaussianFile::from_state(
            &random_gaussian_state(n, seed, ctx.hbar)?,
        )),
    };
    let Some(path) = out else {
        return Ok(Output::Text(text));
    };
    let mut r = ctx.report("random");
    let kind_value = json!(match kind {
        RandomKind::Spd => "spd",
        RandomKind::Symplectic => "symplectic",
        RandomKind::Blob => "blob",
        RandomKind::Gaussian => "gaussian",
    });
    r.arg("kind", kind_value).arg("n", n).arg("seed", seed);
    write_out(&mut r, Some(path), &text)?;
    Ok(Output::Report(r))
}
