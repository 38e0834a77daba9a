//! Run configuration echoed into every report.

use serde::{Deserialize, Serialize};

/// Everything that shaped a run: the subcommand, its flags, and the ambient
/// settings. Round-trips through serde so report headers reproduce runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sieve_limit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub deterministic: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub args: Vec<(String, String)>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            version: format!("halasz-lab {}", env!("CARGO_PKG_VERSION")),
            function: None,
            sieve_limit: None,
            threads: None,
            seed: None,
            deterministic: false,
            args: Vec::new(),
        }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> Self {
        self.args.push((key.to_string(), value.to_string()));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips() {
        let mut c = RunConfig::new("sum").arg("xmax", 1000).arg("format", "csv");
        c.function = Some("liouville".into());
        c.seed = Some(7);
        let json = serde_json::to_string(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(c, back);
    }
}
