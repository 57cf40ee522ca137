use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use periodgeom::datasets;
use periodgeom::linalg::{CRat, Rat};
use periodgeom::orbit_file::{self, OrbitFileError};
use periodgeom::period::{NilpotentOrbitData, RawOrbit};

/// Where an orbit comes from: a file on disk, or a bundled dataset name.
pub enum OrbitSource {
    None,
    Bundled(&'static str),
    File(String),
}

impl OrbitSource {
    pub fn resolve(arg: &str) -> Result<Self> {
        if arg == "none" {
            return Ok(OrbitSource::None);
        }
        if Path::new(arg).is_file() {
            return Ok(OrbitSource::File(arg.to_string()));
        }
        match datasets::source(arg) {
            Some(text) => Ok(OrbitSource::Bundled(text)),
            None => bail!("no file or bundled orbit named '{arg}' (bundled: {})", datasets::names().collect::<Vec<_>>().join(", ")),
        }
    }

    pub fn raw(&self) -> Result<Option<RawOrbit>, OrbitFileError> {
        match self {
            OrbitSource::None => Ok(None),
            OrbitSource::Bundled(text) => orbit_file::parse_raw(text).map(Some),
            OrbitSource::File(path) => orbit_file::read_raw(Path::new(path)).map(Some),
        }
    }

    pub fn load(&self) -> Result<NilpotentOrbitData> {
        match self {
            OrbitSource::None => bail!("this command needs an orbit"),
            OrbitSource::Bundled(text) => Ok(orbit_file::parse_orbit(text)?),
            OrbitSource::File(path) => Ok(orbit_file::load_orbit(Path::new(path))?),
        }
    }
}

pub fn load_orbit(arg: &str) -> Result<NilpotentOrbitData> {
    OrbitSource::resolve(arg)?.load()
}

pub fn rational(s: &str) -> Result<Rat> {
    CRat::from_str(s)
        .ok()
        .filter(CRat::is_real)
        .map(|c| c.re)
        .ok_or_else(|| anyhow!("'{s}' is not a rational number"))
}

pub fn complex(s: &str) -> Result<CRat> {
    CRat::from_str(s).map_err(|e| anyhow!("{e}"))
}

/// `e3` is the third standard basis vector; anything else is a
/// comma-separated list of rationals.
pub fn vector(s: &str, rank: usize) -> Result<Vec<Rat>> {
    if let Some(k) = s.strip_prefix('e').and_then(|k| k.parse::<usize>().ok()) {
        if k == 0 || k > rank {
            bail!("basis vector e{k} does not exist in rank {rank}");
        }
        return Ok((0..rank).map(|i| Rat::from_integer(i64::from(i + 1 == k).into())).collect());
    }
    let v = s.split(',').map(rational).collect::<Result<Vec<_>>>().with_context(|| format!("vector '{s}'"))?;
    if v.len() != rank {
        bail!("vector '{s}' has {} entries, the orbit has rank {rank}", v.len());
    }
    Ok(v)
}

pub fn points(s: &str) -> Result<Vec<CRat>> {
    s.split(',').map(complex).collect()
}

pub fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
