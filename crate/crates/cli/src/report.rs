//! Machine-readable run reports. Identical invocations (including seeds)
//! must render byte-identically, so every collection here iterates in a
//! fixed order.

use std::collections::BTreeMap;

use serde::Serialize;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    /// Exact values serialized as decimal strings (rationals as `p/q`).
    pub numbers: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: u32,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            verdicts: Vec::new(),
            numbers: BTreeMap::new(),
            seed: None,
            version: REPORT_VERSION,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn number(&mut self, key: &str, value: impl ToString) {
        self.numbers.insert(key.to_string(), value.to_string());
    }

    pub fn verdict(&mut self, check: &str, pass: bool, witness: Option<String>) {
        self.verdicts.push(Verdict {
            check: check.to_string(),
            pass,
            witness,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("octarank report v{}\n", self.version));
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.parameters {
            out.push_str(&format!("param {k} = {v}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for (k, v) in &self.numbers {
            out.push_str(&format!("number {k} = {v}\n"));
        }
        for v in &self.verdicts {
            let status = if v.pass { "pass" } else { "FAIL" };
            match &v.witness {
                Some(w) => out.push_str(&format!("verdict {}: {status} witness={w}\n", v.check)),
                None => out.push_str(&format!("verdict {}: {status}\n", v.check)),
            }
        }
        let overall = if self.all_pass() { "pass" } else { "FAIL" };
        out.push_str(&format!("overall: {overall}\n"));
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
