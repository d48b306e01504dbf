use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Positive,
    Negative,
    InputError,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::InputError => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

/// What every command emits. Keys come out sorted because the report goes
/// through `serde_json::Value`, whose maps are ordered.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub message: String,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
        text.push('\n');
        text
    }
}

/// SHA-256 over the command, its flags and the bytes of each input, in a
/// fixed order.
pub fn digest(command: &str, flags: &[(String, String)], inputs: &[(String, Vec<u8>)]) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    let mut flags = flags.to_vec();
    flags.sort();
    for (k, v) in &flags {
        h.update([0]);
        h.update(k.as_bytes());
        h.update([0]);
        h.update(v.as_bytes());
    }
    let mut inputs: Vec<&(String, Vec<u8>)> = inputs.iter().collect();
    inputs.sort_by(|a, b| a.0.cmp(&b.0));
    for (k, bytes) in inputs {
        h.update([1]);
        h.update(k.as_bytes());
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn digest_ignores_flag_order_but_not_values() {
        let a = digest("nerve", &flags(&[("trunc", "2"), ("mode", "descent")]), &[]);
        let b = digest("nerve", &flags(&[("mode", "descent"), ("trunc", "2")]), &[]);
        let c = digest("nerve", &flags(&[("mode", "descent"), ("trunc", "3")]), &[]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn digest_separates_inputs() {
        let one = digest("x", &[], &[("a".into(), b"12".to_vec()), ("b".into(), b"3".to_vec())]);
        let two = digest("x", &[], &[("a".into(), b"1".to_vec()), ("b".into(), b"23".to_vec())]);
        assert_ne!(one, two);
    }

    #[test]
    fn report_keys_are_sorted() {
        let r = Report {
            schema_version: SCHEMA_VERSION,
            command: "check-site".into(),
            inputs_digest: String::new(),
            verdict: Verdict::Inconclusive,
            message: "m".into(),
            result: serde_json::json!({"z": 1, "a": 2}),
            timings_ms: None,
        };
        let text = r.to_json();
        let keys: Vec<usize> = ["command", "inputs_digest", "message", "result", "schema_version", "verdict"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
        assert!(!text.contains("timings_ms"));
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
    }
}
