//! Persisted runs: `<runs-dir>/<result digest>/{report.json, manifest.json}`.

use std::path::Path;
use std::time::Duration;

use rbgroups::io::{to_canonical_json, FORMAT};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::commands::Inputs;
use crate::config::{Caps, Settings};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything except `wall_time_seconds` is a function of the inputs and
/// caps, so identical reruns land in the same directory.
#[derive(Serialize)]
pub struct RunManifest {
    pub format: u32,
    pub command_line: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub caps: Caps,
    pub extended: bool,
    pub wall_time_seconds: f64,
    pub result_digest: String,
}

impl RunManifest {
    pub fn new(argv: &[String], inputs: &Inputs, settings: &Settings, wall: Duration, report: &str) -> Self {
        RunManifest {
            format: FORMAT,
            command_line: argv.to_vec(),
            inputs: inputs
                .digests()
                .into_iter()
                .map(|(path, sha256)| InputDigest { path, sha256 })
                .collect(),
            caps: settings.caps.clone(),
            extended: settings.extended,
            wall_time_seconds: wall.as_secs_f64(),
            result_digest: sha256_hex(report.as_bytes()),
        }
    }

    pub fn persist(&self, root: &Path, report: &str) -> std::io::Result<()> {
        let dir = root.join(&self.result_digest);
        std::fs::create_dir_all(&dir)?;
        std::fs::write(dir.join("report.json"), report)?;
        std::fs::write(dir.join("manifest.json"), to_canonical_json(self))
    }
}
