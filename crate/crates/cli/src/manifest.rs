use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::time::Instant;

/// Provenance block embedded in every report.
#[derive(Debug)]
pub struct RunManifest {
    argv: Vec<String>,
    seeds: Vec<u64>,
    threads: usize,
    started: Instant,
    inputs: Vec<(String, String)>,
    outputs: Vec<(String, String)>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(argv: Vec<String>, threads: usize) -> Self {
        RunManifest { argv, seeds: Vec::new(), threads, started: Instant::now(), inputs: Vec::new(), outputs: Vec::new() }
    }

    pub fn seed(&mut self, seed: u64) {
        self.seeds.push(seed);
    }

    pub fn input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push((path.to_string(), sha256_hex(bytes)));
    }

    pub fn output(&mut self, path: &str, bytes: &[u8]) {
        self.outputs.push((path.to_string(), sha256_hex(bytes)));
    }

    pub fn to_json(&self) -> Value {
        let files = |v: &[(String, String)]| v.iter().map(|(p, h)| json!({"path": p, "sha256": h})).collect::<Vec<_>>();
        json!({
            "command_line": self.argv,
            "seeds": self.seeds,
            "threads": self.threads,
            "versions": {"dicycles": env!("CARGO_PKG_VERSION")},
            "wall_time_s": self.started.elapsed().as_secs_f64(),
            "inputs": files(&self.inputs),
            "outputs": files(&self.outputs),
        })
    }
}
