//! The matrix interchange file: one JSON object with `rows`, `cols` and
//! row-major `entries` given as `[re, im]` pairs.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so write → read → write is byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::dense::{Complex, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&Matrix> for MatrixFile {
    fn from(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixFile> for Matrix {
    type Error = crate::error::Error;

    fn try_from(f: MatrixFile) -> Result<Self, Self::Error> {
        Matrix::from_vec(
            f.rows,
            f.cols,
            f.entries.into_iter().map(|[re, im]| Complex::new(re, im)).collect(),
        )
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(Matrix::try_from(file)?)
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_matrix(&text).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite f64 serializes")
}

/// Canonical text form.
pub fn write_matrix(m: &Matrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{{");
    let _ = writeln!(s, "  \"rows\": {},", m.rows());
    let _ = writeln!(s, "  \"cols\": {},", m.cols());
    let _ = writeln!(s, "  \"entries\": [");
    let last = m.as_slice().len() - 1;
    for (k, z) in m.as_slice().iter().enumerate() {
        let sep = if k == last { "" } else { "," };
        let _ = writeln!(s, "    [{}, {}]{sep}", number(z.re), number(z.im));
    }
    let _ = writeln!(s, "  ]");
    let _ = writeln!(s, "}}");
    s
}

pub fn save_matrix(path: &Path, m: &Matrix) -> Result<(), CliError> {
    std::fs::write(path, write_matrix(m)).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
