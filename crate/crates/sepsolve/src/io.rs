//! Instance files: a documented JSON schema that round-trips losslessly.
//!
//! Layout (see the README for the full schema):
//!
//! ```json
//! {
//!   "version": 1,
//!   "spec": { "m": 30, "k": 20, "seed": 7, "variant": "general", ... },
//!   "instance": { "sep": { "c": ..., "q": ..., "a": {"rows":20,"cols":30,"data":[...]}, ... } }
//! }
//! ```
//!
//! `f64` values survive the round trip exactly (shortest-round-trip
//! formatting on write, exact parse on read).

use crate::error::{Error, Result};
use crate::generator::{generate_scep_instance, generate_sep_instance, InstanceSpec, Variant};
use crate::problem::{ScepInstance, SepInstance};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const INSTANCE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceData {
    Sep(SepInstance),
    Scep(ScepInstance),
}

impl InstanceData {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            InstanceData::Sep(i) => i.dims(),
            InstanceData::Scep(i) => i.dims(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InstanceData::Sep(i) => i.validate(),
            InstanceData::Scep(i) => i.validate(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub spec: InstanceSpec,
    pub instance: InstanceData,
}

/// Materialize the instance a spec describes.
pub fn instance_from_spec(spec: &InstanceSpec) -> Result<InstanceData> {
    match spec.variant {
        Variant::Scep { .. } => Ok(InstanceData::Scep(generate_scep_instance(spec)?)),
        _ => Ok(InstanceData::Sep(generate_sep_instance(spec)?)),
    }
}

pub fn instance_file_from_spec(spec: &InstanceSpec) -> Result<InstanceFile> {
    Ok(InstanceFile {
        version: INSTANCE_FORMAT_VERSION,
        spec: *spec,
        instance: instance_from_spec(spec)?,
    })
}

pub fn save_instance(path: &Path, file: &InstanceFile) -> Result<()> {
    let json = serde_json::to_string_pretty(file)?;
    std::fs::write(path, json)?;
    Ok(())
}

pub fn load_instance(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path)?;
    let file: InstanceFile = serde_json::from_str(&text)?;
    if file.version != INSTANCE_FORMAT_VERSION {
        return Err(Error::Validation {
            field: "version".into(),
            detail: format!(
                "unsupported format version {} (expected {})",
                file.version, INSTANCE_FORMAT_VERSION
            ),
        });
    }
    file.spec.validate()?;
    file.instance.validate()?;
    Ok(file)
}
