//! `symblob`: symplectic spectra, quantum blobs and Gaussian states from the
//! command line.
//!
//! Exit codes: 0 success, 2 parse error, 3 input invariant violation,
//! 4 domain precondition failure.

mod commands;
mod error;
mod io;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Ctx, Output, PlaneSpec, RandomKind};
use error::{CliError, CliResult};
use io::Input;

#[derive(Parser)]
#[command(name = "symblob", version, about = "Symplectic phase-space toolkit")]
struct Cli {
    /// Reduced Planck constant used by every command.
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,

    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArg {
    /// JSON matrix file `{"rows", "cols", "data"}`.
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct PlaneArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// Coordinate plane index j (1-based) or a 2n x 2 basis file.
    #[arg(long)]
    plane: String,
}

#[derive(Subcommand)]
enum Command {
    /// Symplectic spectrum, Williamson radii, capacity and admissibility.
    Spectrum(MatrixArg),
    /// Williamson normal form `M = S^T D S`.
    Williamson {
        #[arg(long)]
        matrix: PathBuf,
        /// Write the normalizing symplectic matrix S here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantum blob operations on a shape matrix F.
    Blob {
        #[command(subcommand)]
        command: BlobCommand,
    },
    /// Gaussian state operations.
    Gaussian {
        #[command(subcommand)]
        command: GaussianCommand,
    },
    /// Boundary of the section of an ellipsoid by a plane, as CSV.
    PlotSection {
        #[command(flatten)]
        plane: PlaneArgs,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random inputs.
    Random {
        #[arg(value_enum)]
        kind: RandomKind,
        /// Degrees of freedom.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination file; the generated JSON goes to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BlobCommand {
    /// Is the ellipsoid a quantum blob?
    Check(MatrixArg),
    /// Area of the section by a plane through the center.
    Section(PlaneArgs),
    /// Area of the orthogonal projection onto a plane.
    Project(PlaneArgs),
    /// Volume of a quantum blob.
    Volume(MatrixArg),
    /// The blob inscribed in an ellipsoid of capacity pi*hbar.
    Companion {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersection with a coordinate subspace.
    Subspace {
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated 1-based degrees of freedom, e.g. "1,3".
        #[arg(long)]
        indices: String,
    },
}

#[derive(Subcommand)]
enum GaussianCommand {
    /// Gaussian `(X, Y)` of a quantum blob.
    FromBlob {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantum blob of a Gaussian file `{"x", "y"}`.
    ToBlob {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wigner function of a Gaussian file at a phase-space point.
    Wigner {
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated coordinates x1..xn,p1..pn.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Covariance matrix of a Wigner Gaussian with shape F.
    Covariance(MatrixArg),
    /// Squeezing tests for a shape F.
    Squeezed(MatrixArg),
    /// Convolve a Wigner Gaussian (`--matrix`) with a blob (`--matrix2`).
    Smooth {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        matrix2: PathBuf,
    },
    /// Admissibility of the Gaussian with widths alpha and beta.
    Debruijn {
        #[arg(allow_hyphen_values = true)]
        alpha: f64,
        #[arg(allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

fn read(path: &Path) -> CliResult<Input> {
    Input::read(path)
}

fn run(cli: &Cli) -> CliResult<Output> {
    if !(cli.hbar.is_finite() && cli.hbar > 0.0) {
        return Err(CliError::parse(format!(
            "--hbar must be positive and finite, got {}",
            cli.hbar
        )));
    }
    let ctx = Ctx { hbar: cli.hbar };
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(&ctx, &read(&a.matrix)?),
        Command::Williamson { matrix, out } => {
            commands::williamson(&ctx, &read(matrix)?, out.as_deref())
        }
        Command::Blob { command } => match command {
            BlobCommand::Check(a) => commands::blob_check(&ctx, &read(&a.matrix)?),
            BlobCommand::Section(a) => {
                commands::blob_area(&ctx, &read(&a.matrix)?, &PlaneSpec::parse(&a.plane)?, false)
            }
            BlobCommand::Project(a) => {
                commands::blob_area(&ctx, &read(&a.matrix)?, &PlaneSpec::parse(&a.plane)?, true)
            }
            BlobCommand::Volume(a) => commands::blob_volume_cmd(&ctx, &read(&a.matrix)?),
            BlobCommand::Companion { matrix, out } => {
                commands::blob_companion(&ctx, &read(matrix)?, out.as_deref())
            }
            BlobCommand::Subspace { matrix, indices } => {
                commands::blob_subspace(&ctx, &read(matrix)?, indices)
            }
        },
        Command::Gaussian { command } => match command {
            GaussianCommand::FromBlob { matrix, out } => {
                commands::gaussian_from_blob_cmd(&ctx, &read(matrix)?, out.as_deref())
            }
            GaussianCommand::ToBlob { matrix, out } => {
                commands::gaussian_to_blob_cmd(&ctx, &read(matrix)?, out.as_deref())
            }
            GaussianCommand::Wigner { matrix, point } => {
                commands::gaussian_wigner(&ctx, &read(matrix)?, point)
            }
            GaussianCommand::Covariance(a) => {
                commands::gaussian_covariance(&ctx, &read(&a.matrix)?)
            }
            GaussianCommand::Squeezed(a) => commands::gaussian_squeezed(&ctx, &read(&a.matrix)?),
            GaussianCommand::Smooth { matrix, matrix2 } => {
                commands::gaussian_smooth(&ctx, &read(matrix)?, &read(matrix2)?)
            }
            GaussianCommand::Debruijn { alpha, beta, n } => {
                commands::gaussian_debruijn(&ctx, *alpha, *beta, *n)
            }
        },
        Command::PlotSection {
            plane,
            samples,
            out,
        } => commands::plot_section(
            &ctx,
            &read(&plane.matrix)?,
            &PlaneSpec::parse(&plane.plane)?,
            *samples,
            out.as_deref(),
        ),
        Command::Random { kind, n, seed, out } => {
            commands::random(&ctx, *kind, *n, *seed, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            if cli.json {
                print!("{}", io::to_json_text(&r.to_value()));
            } else {
                print!("{}", r.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("symblob: {e}");
            ExitCode::from(e.code())
        }
    }
}
