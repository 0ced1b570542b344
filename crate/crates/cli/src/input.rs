//! The JSON input document.
//!
//! ```json
//! {"schema": 1, "n": 2, "A": [..], "B": [..], "C": [..],
//!  "settings": {"tol": 1e-9, "k_max": 6, "quotient": "spi"}}
//! ```
//!
//! A matrix is given either as blocks `A`, `B`, `C` (row-major, `n×n`) or as
//! the full `M` (row-major, `2n×2n`). Family files carry a `family` array of
//! entries `{"param": s, ...blocks or M...}`.

use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use symclass::components::Quotient;
use symclass::wonenburger::from_matrix;
use symclass::{SquareMatrix, WonenburgerTriple};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct MatrixFields {
    pub n: Option<usize>,
    #[serde(rename = "A")]
    pub a: Option<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Option<Vec<f64>>,
    #[serde(rename = "C")]
    pub c: Option<Vec<f64>>,
    #[serde(rename = "M")]
    pub m: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilyEntry {
    pub param: f64,
    #[serde(flatten)]
    pub matrix: MatrixFields,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct Settings {
    pub tol: Option<f64>,
    pub k_max: Option<u32>,
    pub quotient: Option<Quotient>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct InputDocument {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(flatten)]
    pub matrix: MatrixFields,
    pub family: Option<Vec<FamilyEntry>>,
    #[serde(default)]
    pub settings: Settings,
}

/// A parsed document with the SHA-256 of its bytes.
#[derive(Debug, Clone)]
pub struct LoadedInput {
    pub doc: InputDocument,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn parse_input(bytes: &[u8]) -> Result<LoadedInput> {
    let doc: InputDocument = serde_json::from_slice(bytes)?;
    if doc.schema != SCHEMA_VERSION {
        return Err(CliError::Schema(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    Ok(LoadedInput {
        doc,
        sha256: sha256_hex(bytes),
    })
}

pub fn load_input(path: &Path) -> Result<LoadedInput> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    parse_input(&bytes)
}

fn square(what: &str, entries: &[f64], n: usize) -> Result<SquareMatrix> {
    if entries.len() != n * n {
        return Err(CliError::Schema(format!(
            "{what} has {} entries, expected {}",
            entries.len(),
            n * n
        )));
    }
    if let Some(i) = entries.iter().position(|x| !x.is_finite()) {
        return Err(CliError::Schema(format!("{what}[{i}] is not finite")));
    }
    Ok(SquareMatrix::from_row_major(n, entries)?)
}

fn side(len: usize) -> Option<usize> {
    (1..=4).find(|k| k * k == len)
}

impl MatrixFields {
    pub fn is_empty(&self) -> bool {
        self.a.is_none() && self.b.is_none() && self.c.is_none() && self.m.is_none()
    }

    /// Checks shapes and the structure equations at `tol`.
    pub fn to_triple(&self, tol: f64) -> Result<WonenburgerTriple> {
        let blocks = [&self.a, &self.b, &self.c];
        if let Some(m) = &self.m {
            if blocks.iter().any(|x| x.is_some()) {
                return Err(CliError::Schema("give either M or A, B, C, not both".into()));
            }
            let dim = side(m.len()).ok_or_else(|| {
                CliError::Schema(format!("M has {} entries, not a 2x2 or 4x4 matrix", m.len()))
            })?;
            if let Some(n) = self.n {
                if 2 * n != dim {
                    return Err(CliError::Schema(format!("M is {dim}x{dim} but n = {n}")));
                }
            }
            return Ok(from_matrix(&square("M", m, dim)?, tol)?);
        }
        let (Some(a), Some(b), Some(c)) = (&self.a, &self.b, &self.c) else {
            return Err(CliError::Schema("missing matrix: give M or all of A, B, C".into()));
        };
        let n = match self.n {
            Some(n) => n,
            None => side(a.len())
                .ok_or_else(|| CliError::Schema(format!("A has {} entries, not a square", a.len())))?,
        };
        if !(n == 1 || n == 2) {
            return Err(CliError::Schema(format!("n = {n} is not supported (use 1 or 2)")));
        }
        Ok(WonenburgerTriple::new(
            square("A", a, n)?,
            square("B", b, n)?,
            square("C", c, n)?,
            tol,
        )?)
    }
}

impl InputDocument {
    pub fn triple(&self, tol: f64) -> Result<WonenburgerTriple> {
        if self.matrix.is_empty() {
            return Err(CliError::Schema("no matrix at the top level".into()));
        }
        self.matrix.to_triple(tol)
    }

    /// Family samples in file order; monotonicity is left to the analyzer.
    pub fn family(&self, tol: f64) -> Result<Vec<(f64, WonenburgerTriple)>> {
        let Some(family) = &self.family else {
            return Err(CliError::Schema("no family array".into()));
        };
        family
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if !e.param.is_finite() {
                    return Err(CliError::Schema(format!("family[{i}].param is not finite")));
                }
                let t = e.matrix.to_triple(tol).map_err(|err| match err {
                    CliError::Schema(m) => CliError::Schema(format!("family[{i}]: {m}")),
                    other => other,
                })?;
                Ok((e.param, t))
            })
            .collect()
    }
}
