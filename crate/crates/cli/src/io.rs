//! File formats: matrices and Gaussian states as JSON, plot data as CSV.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use symblob_core::{GaussianPureState, Matrix, PhasePoint};

use crate::error::{CliError, CliResult};

/// `{"rows": R, "cols": C, "data": [...]}`, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> CliResult<Matrix> {
        Ok(Matrix::new(self.rows, self.cols, self.data.clone())?)
    }
}

impl From<&Matrix> for MatrixFile {
    fn from(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            // `+ 0.0` folds -0.0 into 0.0 so files do not show signed zeros
            data: m.data().iter().map(|v| v + 0.0).collect(),
        }
    }
}

/// A pure Gaussian: width `x`, chirp `y` and an optional center.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianFile {
    pub x: MatrixFile,
    pub y: MatrixFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<f64>>,
}

impl GaussianFile {
    pub fn from_state(psi: &GaussianPureState) -> Self {
        let center = (!psi.center().is_origin()).then(|| psi.center().coords().to_vec());
        Self {
            x: psi.x().into(),
            y: psi.y().into(),
            center,
        }
    }

    pub fn to_state(&self, hbar: f64) -> CliResult<GaussianPureState> {
        let x = self.x.to_matrix()?;
        let y = self.y.to_matrix()?;
        let center = match &self.center {
            Some(c) => PhasePoint::new(c.clone())?,
            None => PhasePoint::origin(x.rows()),
        };
        Ok(GaussianPureState::new(x, y, center, hbar)?)
    }
}

/// The raw bytes of an input file, kept for digesting.
pub struct Input {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
}

impl Input {
    pub fn read(path: &Path) -> CliResult<Self> {
        let bytes = fs::read(path)
            .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
        Ok(Self {
            path: path.to_path_buf(),
            bytes,
        })
    }

    /// File name without directories, so reports do not depend on where the
    /// command ran.
    pub fn name(&self) -> String {
        file_name(&self.path)
    }

    pub fn sha256(&self) -> String {
        sha256_hex(&self.bytes)
    }

    pub fn json<T: for<'de> Deserialize<'de>>(&self) -> CliResult<T> {
        serde_json::from_slice(&self.bytes)
            .map_err(|e| CliError::parse(format!("{}: malformed JSON: {e}", self.name())))
    }

    pub fn matrix(&self) -> CliResult<Matrix> {
        self.json::<MatrixFile>()?
            .to_matrix()
            .map_err(|e| e.context(&self.name()))
    }
}

pub fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| CliError::parse(format!("cannot write {}: {e}", path.display())))
}

/// `theta,u,v` rows followed by `# area=<value>`.
pub fn section_csv(points: &[(f64, f64, f64)], area: f64) -> String {
    let mut out = String::from("theta,u,v\n");
    for (theta, u, v) in points {
        out.push_str(&format!("{theta:?},{u:?},{v:?}\n"));
    }
    out.push_str(&format!("# area={area:?}\n"));
    out
}
