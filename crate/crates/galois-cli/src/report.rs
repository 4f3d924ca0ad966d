//! Canonical reports: key-sorted JSON on stdout, a one-line human summary
//! on stderr. Two runs on identical inputs emit byte-identical payloads.

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::path::Path;

pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<(String, String)>,
    pub result: Value,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &[String]) -> Report {
        Report {
            command: command.to_vec(),
            inputs: Vec::new(),
            result: Value::Null,
            notes: Vec::new(),
        }
    }

    pub fn add_input_digest(&mut self, path: &Path, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push((path.display().to_string(), hex));
    }

    /// Serializes with sorted keys throughout (serde_json's default map is
    /// a BTreeMap, so object keys come out ordered).
    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert(
            "command".into(),
            Value::Array(self.command.iter().map(|s| Value::String(s.clone())).collect()),
        );
        let mut inputs = Map::new();
        for (path, digest) in &self.inputs {
            inputs.insert(path.clone(), Value::String(digest.clone()));
        }
        top.insert("inputs".into(), Value::Object(inputs));
        top.insert("result".into(), self.result.clone());
        top.insert(
            "notes".into(),
            Value::Array(self.notes.iter().map(|s| Value::String(s.clone())).collect()),
        );
        Value::Object(top)
    }

    pub fn emit(&self, summary: &str) {
        println!("{}", serde_json::to_string_pretty(&self.to_json()).expect("serializable"));
        eprintln!("{summary}");
    }
}
