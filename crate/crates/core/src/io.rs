//! Line-class files and certificate envelopes.
//!
//! A class file is `{"geometry":"PG(3,4)","provenance":{…},"lines":[…]}` with
//! strictly increasing canonical line indices; `provenance` is optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cl::LineClass;
use crate::error::{Error, Result};
use crate::geometry::{parse_descriptor, Geometry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    pub geometry: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub lines: Vec<usize>,
}

impl ClassFile {
    pub fn new(c: &LineClass, provenance: Option<Provenance>) -> Self {
        ClassFile { geometry: c.geometry_descriptor(), provenance, lines: c.lines() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: ClassFile = serde_json::from_str(text)?;
        parse_descriptor(&file.geometry)?;
        if let Some(w) = file.lines.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Malformed(format!("line indices must be strictly increasing: {} then {}", w[0], w[1])));
        }
        Ok(file)
    }

    /// (n, q) of the declared geometry.
    pub fn dimensions(&self) -> Result<(usize, usize)> {
        parse_descriptor(&self.geometry)
    }

    pub fn to_class(&self, g: &Geometry) -> Result<LineClass> {
        if parse_descriptor(&self.geometry)? != (g.n(), g.q()) {
            return Err(Error::MismatchedGeometry { expected: g.descriptor(), detail: format!("file declares {}", self.geometry) });
        }
        LineClass::from_lines(g, self.lines.iter().copied())
    }

    /// Compact single-line JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("class files serialize");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Envelope written by every command: what ran, on which input, and the result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate<T> {
    pub command: String,
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub result: T,
}

impl<T: Serialize> Certificate<T> {
    /// Pretty JSON with a trailing newline; byte-identical for identical inputs.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
