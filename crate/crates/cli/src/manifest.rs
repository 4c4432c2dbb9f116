//! Run manifests and output writing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::{Failure, Format};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to rerun a command. No wall-clock fields, so equal
/// manifests give byte-identical outputs.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub command_line: Vec<String>,
    pub seed: u64,
    pub backend: String,
    pub version: String,
    pub inputs: Vec<InputDigest>,
}

impl Manifest {
    pub fn new(seed: u64) -> Manifest {
        let mut args: Vec<String> = std::env::args().skip(1).collect();
        args.insert(0, "monopaths".into());
        Manifest {
            command_line: args,
            seed,
            backend: "rational".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs: Vec::new(),
        }
    }

    /// Read `path`, record its digest and return its contents.
    pub fn read_input(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))
    }

    fn json(&self) -> Value {
        serde_json::to_value(self).expect("manifest serializes")
    }
}

/// Where and how results are written.
pub struct Sink {
    pub manifest: Manifest,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Sink {
    /// Write the main result. CSV output carries the manifest as a leading
    /// `#` line, JSON output as a `manifest` member.
    pub fn emit(&self, csv: &str, json: Value) -> Result<(), Failure> {
        let text = match self.format {
            Format::Csv => format!("# manifest: {}\n{csv}", self.manifest.json()),
            Format::Json => pretty(self.stamp(json)),
        };
        write_to(self.out.as_deref(), &text)
    }

    /// Write a JSON document to a side file, stamped with the manifest.
    pub fn emit_json_to(&self, path: &Path, json: Value) -> Result<(), Failure> {
        write_to(Some(path), &pretty(self.stamp(json)))
    }

    pub fn stamp(&self, json: Value) -> Value {
        let mut map = Map::new();
        map.insert("manifest".into(), self.manifest.json());
        match json {
            Value::Object(inner) => map.extend(inner),
            other => {
                map.insert("result".into(), other);
            }
        }
        Value::Object(map)
    }
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json serializes");
    s.push('\n');
    s
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}
