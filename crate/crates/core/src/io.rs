//! Matrix file format: `{"dim": n, "entries": [row-major n*n numbers]}`.
//!
//! The writer prints every entry with 17 significant digits so that a write
//! followed by a read reproduces the matrix bit for bit.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    dim: usize,
    entries: Vec<f64>,
}

/// Parses the JSON matrix format, validating shape, finiteness and symmetry.
pub fn parse_matrix_json(text: &str) -> Result<HermitianMatrix> {
    let file: MatrixFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed matrix file: {e}")))?;
    HermitianMatrix::from_row_major(file.dim, &file.entries)
}

/// Serializes to the JSON matrix format with 17 significant digits per entry.
pub fn write_matrix_json(m: &HermitianMatrix) -> String {
    let mut out = String::new();
    write!(out, "{{\"dim\": {}, \"entries\": [", m.dim()).unwrap();
    for (i, x) in m.to_row_major().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{x:.16e}").unwrap();
    }
    out.push_str("]}\n");
    out
}
