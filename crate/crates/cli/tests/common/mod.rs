//! Shared helpers for the CLI integration tests: running the binary and the
//! table of golden-file cases.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_symblob")
}

pub fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[String]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn run_str(args: &[&str]) -> Output {
    run(&args.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

/// A command whose stdout is pinned byte for byte. `{f}` expands to the
/// fixture directory and `{out}` to a scratch directory.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static str,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase { name: "spectrum_identity", args: "spectrum --json --matrix {f}/identity2.json" },
    GoldenCase { name: "spectrum_diag14", args: "spectrum --json --matrix {f}/diag14.json" },
    GoldenCase { name: "spectrum_diag14_text", args: "spectrum --matrix {f}/diag14.json" },
    GoldenCase { name: "williamson_identity", args: "williamson --json --matrix {f}/identity2.json" },
    GoldenCase {
        name: "williamson_diag14",
        args: "williamson --json --matrix {f}/diag14.json --out {out}/s.json",
    },
    GoldenCase { name: "williamson_random_spd6", args: "williamson --json --matrix {f}/random_spd6.json" },
    GoldenCase { name: "blob_check_ball", args: "blob check --json --matrix {f}/ball4.json" },
    GoldenCase {
        name: "blob_section_diag_j1",
        args: "blob section --json --matrix {f}/diag_blob4.json --plane 1",
    },
    GoldenCase {
        name: "blob_project_diag_plane_file",
        args: "blob project --json --matrix {f}/diag_blob4.json --plane {f}/plane_x1p1.json",
    },
    GoldenCase { name: "blob_volume_ball", args: "blob volume --json --matrix {f}/ball4.json" },
    GoldenCase {
        name: "blob_companion",
        args: "blob companion --json --matrix {f}/capacity_pi4.json --out {out}/q.json",
    },
    GoldenCase {
        name: "blob_subspace",
        args: "blob subspace --json --matrix {f}/diag_blob4.json --indices 2",
    },
    GoldenCase {
        name: "gaussian_from_blob_ball",
        args: "gaussian from-blob --json --matrix {f}/identity2.json",
    },
    GoldenCase {
        name: "gaussian_to_blob",
        args: "gaussian to-blob --json --matrix {f}/squeezed1.json --out {out}/f.json",
    },
    GoldenCase {
        name: "gaussian_wigner",
        args: "gaussian wigner --json --matrix {f}/squeezed1.json --point 0.3,-0.2",
    },
    GoldenCase {
        name: "gaussian_covariance",
        args: "gaussian covariance --json --matrix {f}/identity2.json",
    },
    GoldenCase { name: "gaussian_squeezed", args: "gaussian squeezed --json --matrix {f}/diag14.json" },
    GoldenCase {
        name: "gaussian_smooth_ball",
        args: "gaussian smooth --json --matrix {f}/identity2.json --matrix2 {f}/identity2.json",
    },
    GoldenCase { name: "gaussian_debruijn", args: "gaussian debruijn --json 2 0.4" },
    GoldenCase {
        name: "plot_section_ball",
        args: "plot-section --matrix {f}/identity2.json --plane 1 --samples 4",
    },
    GoldenCase {
        name: "plot_section_blob_report",
        args: "plot-section --json --matrix {f}/diag_blob4.json --plane 2 --samples 16 --out {out}/s.csv",
    },
    GoldenCase { name: "random_spd", args: "random spd --n 2 --seed 3" },
    GoldenCase { name: "random_symplectic", args: "random symplectic --n 2 --seed 7" },
    GoldenCase { name: "random_blob", args: "random blob --n 2 --seed 11" },
    GoldenCase { name: "random_gaussian", args: "random gaussian --n 1 --seed 5" },
    GoldenCase {
        name: "random_blob_report",
        args: "random blob --json --n 2 --seed 11 --out {out}/b.json",
    },
];

impl GoldenCase {
    pub fn expand(&self, scratch: &Path) -> Vec<String> {
        let f = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
        self.args
            .split_whitespace()
            .map(|a| {
                a.replace("{f}", &f.display().to_string())
                    .replace("{out}", &scratch.display().to_string())
            })
            .collect()
    }

    pub fn golden_path(&self) -> PathBuf {
        golden_dir().join(format!("{}.out", self.name))
    }
}

/// Runs every golden case. With `UPDATE_GOLDEN=1` the files are rewritten
/// instead of compared. Returns the names of mismatching cases.
pub fn check_golden() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1");
    let scratch = tempfile::tempdir().expect("scratch dir");
    let mut bad = Vec::new();
    for case in GOLDEN_CASES {
        let out = run(&case.expand(scratch.path()));
        if !out.status.success() {
            bad.push(format!(
                "{}: exit {:?}: {}",
                case.name,
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
            continue;
        }
        let path = case.golden_path();
        if update {
            std::fs::write(&path, &out.stdout).expect("write golden file");
            continue;
        }
        match std::fs::read(&path) {
            Ok(want) if want == out.stdout => {}
            Ok(_) => bad.push(format!(
                "{}: output differs from {}",
                case.name,
                path.display()
            )),
            Err(e) => bad.push(format!("{}: {}: {e}", case.name, path.display())),
        }
    }
    bad
}
