use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Record of one invocation: what went in, what came out.
#[derive(Debug, Default, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub tool_version: String,
    pub input_hashes: BTreeMap<String, String>,
    pub tolerances: BTreeMap<String, f64>,
    pub output_hashes: BTreeMap<String, String>,
    pub wall_time_secs: f64,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>) -> Self {
        RunManifest { command_line, tool_version: env!("CARGO_PKG_VERSION").into(), ..Default::default() }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.input_hashes.insert(name.into(), sha256(bytes));
    }

    pub fn output(&mut self, name: &str, bytes: &[u8]) {
        self.output_hashes.insert(name.into(), sha256(bytes));
    }

    pub fn tolerance(&mut self, name: &str, value: f64) {
        self.tolerances.insert(name.into(), value);
    }
}
