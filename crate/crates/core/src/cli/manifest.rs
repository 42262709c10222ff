use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Record of one command: what ran, on which config, what it wrote.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    /// SHA-256 of the canonical config text.
    pub config_hash: Option<String>,
    pub outputs: Vec<PathBuf>,
    /// `(stage, seconds)`.
    pub timings: Vec<(String, f64)>,
    pub exit_code: i32,
    pub blowup_time: Option<f64>,
    pub error: Option<String>,
    /// Manifests of sweep members.
    pub children: Vec<RunManifest>,
}

pub fn config_hash(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(command: Vec<String>) -> Self {
        Self { command, ..Default::default() }
    }

    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push((stage.into(), start.elapsed().as_secs_f64()));
        out
    }

    /// Writes `contents` to `dir/name` and lists it.
    pub fn write(&mut self, dir: &Path, name: &str, contents: &str) -> std::io::Result<PathBuf> {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        self.outputs.push(path.clone());
        Ok(path)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_hex() {
        let h = config_hash("eps = 0.01\n");
        assert_eq!(h.len(), 64);
        assert_eq!(h, config_hash("eps = 0.01\n"));
        assert_ne!(h, config_hash("eps = 0.02\n"));
        assert_eq!(config_hash(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
