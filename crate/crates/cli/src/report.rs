use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, inputs: &[u8]) -> Self {
        Report {
            command: command.into(),
            inputs_digest: hex::encode(Sha256::digest(inputs)),
            verdicts: Vec::new(),
            output: None,
            error: None,
            timing_ms: 0.0,
        }
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl Serialize) {
        let detail = serde_json::to_value(detail).unwrap_or(Value::Null);
        self.verdicts.push(Verdict { name: name.into(), pass, detail });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// One line per verdict, for stderr.
    pub fn summary(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for v in &self.verdicts {
            let detail = match &v.detail {
                Value::String(x) => x.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            };
            let detail: String = detail.chars().take(160).collect();
            s.push_str(&format!("  [{}] {}: {}\n", if v.pass { "pass" } else { "FAIL" }, v.name, detail));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("  error: {e}\n"));
        }
        s
    }
}
