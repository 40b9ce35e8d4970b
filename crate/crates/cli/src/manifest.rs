//! Run manifest: everything needed to reproduce a run plus what it produced.

use crate::json::Json;

/// Written as `<prefix>.manifest.json` after a successful experiment run.
/// The config snapshot and seed reproduce the output files byte-identically;
/// `timings_ms` is wall-clock and the one field expected to vary across runs.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub toolkit_version: String,
    pub command: String,
    pub label: String,
    pub master_seed: u64,
    pub seed_source: String,
    pub input_digest: String,
    pub config: Vec<(String, String)>,
    pub outputs: Vec<String>,
    pub timings_ms: Vec<(String, u128)>,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let config = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Json::Str(v.clone())))
            .collect();
        let outputs = self.outputs.iter().map(|p| Json::Str(p.clone())).collect();
        let timings = self
            .timings_ms
            .iter()
            .map(|(k, v)| (k.clone(), Json::Int(*v as i64)))
            .collect();
        Json::obj(vec![
            ("toolkit_version", Json::Str(self.toolkit_version.clone())),
            ("command", Json::Str(self.command.clone())),
            ("label", Json::Str(self.label.clone())),
            ("master_seed", Json::Int(self.master_seed as i64)),
            ("seed_source", Json::Str(self.seed_source.clone())),
            ("input_digest", Json::Str(self.input_digest.clone())),
            ("config", Json::Obj(config)),
            ("outputs", Json::Arr(outputs)),
            ("timings_ms", Json::Obj(timings)),
        ])
        .render()
    }
}

/// SHA-256 of the input file, as lowercase hex.
pub fn file_digest(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            file_digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn manifest_renders_all_sections() {
        let m = RunManifest {
            toolkit_version: "0.1.0".into(),
            command: "exp1-subsets".into(),
            label: "income".into(),
            master_seed: 42,
            seed_source: "default".into(),
            input_digest: "00".into(),
            config: vec![("subsets".into(), "66".into())],
            outputs: vec!["records.csv".into()],
            timings_ms: vec![("total".into(), 1234)],
        };
        let text = m.to_json();
        assert!(text.contains("\"master_seed\": 42"));
        assert!(text.contains("\"subsets\": \"66\""));
        assert!(text.contains("records.csv"));
    }
}
