//! Line-based `key=value` model files.
//!
//! ```text
//! # elliptic curve over F_2 with 2-torsion in the class group
//! p = 2
//! q = 2
//! genus = 1
//! l_poly = 1, -1, 2
//! clp_order = 2
//! ```

use std::fs;
use std::path::Path;

use asdist_core::FieldModel;
use num_bigint::{BigInt, BigUint};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: bad value `{value}` for `{key}`")]
    BadValue { line: usize, key: String, value: String },
}

/// Model parameters, any of which may be missing until defaults are applied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelSpec {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub genus: Option<u32>,
    pub l_poly: Option<Vec<BigInt>>,
    pub clp_order: Option<BigUint>,
}

pub fn parse_l_poly(text: &str) -> Option<Vec<BigInt>> {
    text.split(',').map(|c| c.trim().parse().ok()).collect()
}

pub fn parse_model(text: &str) -> Result<ModelSpec, ModelFileError> {
    let mut spec = ModelSpec::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ModelFileError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || ModelFileError::BadValue { line, key: key.to_string(), value: value.to_string() };
        let dup = || ModelFileError::Duplicate { line, key: key.to_string() };
        match key {
            "p" => {
                if spec.p.replace(value.parse().map_err(|_| bad())?).is_some() {
                    return Err(dup());
                }
            }
            "q" => {
                if spec.q.replace(value.parse().map_err(|_| bad())?).is_some() {
                    return Err(dup());
                }
            }
            "genus" => {
                if spec.genus.replace(value.parse().map_err(|_| bad())?).is_some() {
                    return Err(dup());
                }
            }
            "l_poly" => {
                if spec.l_poly.replace(parse_l_poly(value).ok_or_else(bad)?).is_some() {
                    return Err(dup());
                }
            }
            "clp_order" => {
                if spec.clp_order.replace(value.parse().map_err(|_| bad())?).is_some() {
                    return Err(dup());
                }
            }
            _ => return Err(ModelFileError::UnknownKey { line, key: key.to_string() }),
        }
    }
    Ok(spec)
}

pub fn read_model_file(path: &Path) -> Result<ModelSpec, ModelFileError> {
    let text =
        fs::read_to_string(path).map_err(|source| ModelFileError::Io { path: path.display().to_string(), source })?;
    parse_model(&text)
}

impl ModelSpec {
    /// Fields set in `overrides` win.
    pub fn merged_with(self, overrides: ModelSpec) -> ModelSpec {
        ModelSpec {
            p: overrides.p.or(self.p),
            q: overrides.q.or(self.q),
            genus: overrides.genus.or(self.genus),
            l_poly: overrides.l_poly.or(self.l_poly),
            clp_order: overrides.clp_order.or(self.clp_order),
        }
    }

    /// Applies defaults (`p` from `q`, genus 0, trivial `L` and `Cl[p]`) and validates.
    pub fn build(&self) -> Result<FieldModel, String> {
        let q = self.q.ok_or("the field size q is required (--q or model file)")?;
        let p = match self.p {
            Some(p) => p,
            None => (2..=q.max(2)).find(|d| q % d == 0).unwrap_or(q),
        };
        let genus = self.genus.unwrap_or(0);
        let l_poly = match &self.l_poly {
            Some(l) => l.clone(),
            None if genus == 0 => vec![BigInt::from(1)],
            None => return Err(format!("genus {genus} needs an L-polynomial (--l-poly)")),
        };
        let clp = self.clp_order.clone().unwrap_or_else(|| BigUint::from(1u32));
        FieldModel::new(p, q, genus, l_poly, clp).map_err(|e| e.to_string())
    }
}
