//! JSON orbit files (schema 1). Numbers are strings so that data stays exact:
//! rationals as `"p/q"`, complex rationals as `"a/b+c/di"`.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::{CRat, CRatMatrix, Rat, RatMatrix};
use crate::period::{validate_orbit, NilpotentOrbitData, RawOrbit, ValidationReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitFile {
    pub schema: u32,
    pub name: String,
    #[serde(default)]
    pub metadata: serde_json::Map<String, serde_json::Value>,
    pub rank: usize,
    pub weight: u32,
    #[serde(rename = "Q")]
    pub form: Vec<Vec<String>>,
    pub hodge_numbers: Vec<usize>,
    #[serde(rename = "N")]
    pub nilpotents: Vec<Vec<Vec<String>>>,
    #[serde(rename = "F")]
    pub limit: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, thiserror::Error)]
pub enum OrbitFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed orbit JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("orbit fails validation:\n{0}")]
    Invalid(ValidationReport),
}

fn parse_rat(s: &str, at: &str) -> Result<Rat, OrbitFileError> {
    Rat::from_str(s.trim()).map_err(|_| OrbitFileError::Schema(format!("{at}: '{s}' is not a rational")))
}

fn parse_crat(s: &str, at: &str) -> Result<CRat, OrbitFileError> {
    CRat::from_str(s).map_err(|_| OrbitFileError::Schema(format!("{at}: '{s}' is not a complex rational")))
}

fn rat_matrix(rows: &[Vec<String>], at: &str) -> Result<RatMatrix, OrbitFileError> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().map(|s| parse_rat(s, &format!("{at} row {i}"))).collect())
        .collect::<Result<Vec<Vec<Rat>>, _>>()?;
    RatMatrix::from_rows(parsed).map_err(|e| OrbitFileError::Schema(format!("{at}: {e}")))
}

fn crat_matrix(rows: &[Vec<String>], at: &str) -> Result<CRatMatrix, OrbitFileError> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().map(|s| parse_crat(s, &format!("{at} row {i}"))).collect())
        .collect::<Result<Vec<Vec<CRat>>, _>>()?;
    CRatMatrix::from_rows(parsed).map_err(|e| OrbitFileError::Schema(format!("{at}: {e}")))
}

impl OrbitFile {
    pub fn to_raw(&self) -> Result<RawOrbit, OrbitFileError> {
        if self.schema != SCHEMA_VERSION {
            return Err(OrbitFileError::Schema(format!("unsupported schema version {}", self.schema)));
        }
        let form = rat_matrix(&self.form, "Q")?;
        if form.rows() != self.rank {
            return Err(OrbitFileError::Schema(format!("rank is {} but Q has {} rows", self.rank, form.rows())));
        }
        let nilpotents = self
            .nilpotents
            .iter()
            .enumerate()
            .map(|(j, m)| rat_matrix(m, &format!("N[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let limit = self
            .limit
            .iter()
            .enumerate()
            .map(|(p, vs)| {
                vs.iter()
                    .map(|v| v.iter().map(|s| parse_crat(s, &format!("F[{p}]"))).collect())
                    .collect::<Result<Vec<Vec<CRat>>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let psi = match &self.psi {
            None => None,
            Some(ms) => Some(
                ms.iter()
                    .enumerate()
                    .map(|(j, m)| crat_matrix(m, &format!("psi[{j}]")))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(RawOrbit {
            name: self.name.clone(),
            weight: self.weight,
            form,
            hodge_numbers: self.hodge_numbers.clone(),
            nilpotents,
            limit,
            psi,
        })
    }
}

pub fn parse_raw(text: &str) -> Result<RawOrbit, OrbitFileError> {
    serde_json::from_str::<OrbitFile>(text)?.to_raw()
}

/// Parse and validate; a failing validation lists every violated check.
pub fn parse_orbit(text: &str) -> Result<NilpotentOrbitData, OrbitFileError> {
    let raw = parse_raw(text)?;
    let report = validate_orbit(&raw, false);
    if !report.passed() {
        return Err(OrbitFileError::Invalid(report));
    }
    Ok(NilpotentOrbitData::new(raw).expect("validated"))
}

pub fn read_raw(path: &Path) -> Result<RawOrbit, OrbitFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| OrbitFileError::Io { path: path.display().to_string(), source })?;
    parse_raw(&text)
}

pub fn load_orbit(path: &Path) -> Result<NilpotentOrbitData, OrbitFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| OrbitFileError::Io { path: path.display().to_string(), source })?;
    parse_orbit(&text)
}
