//! Scenario registry, runner and reports for the `norm-attain` command.

pub mod config;
pub mod registry;
pub mod report;
pub mod scenario;

use std::path::Path;

use serde_json::Value;

pub use config::{Config, OutputFormat};
pub use report::{Report, ScenarioResult, Status, Summary};
pub use scenario::{Check, Expected, ScenarioSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Unreadable { path: String, source: std::io::Error },
    #[error("{path} is not a JSON array of scenarios: {reason}")]
    InvalidFile { path: String, reason: String },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    /// Every error here is a usage or input problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// A runnable scenario. `spec` holds the parse error for malformed entries.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub kind: String,
    pub anchor: Option<String>,
    pub spec: Result<ScenarioSpec, String>,
    pub expected: Option<Expected>,
}

impl Scenario {
    /// Parse one `{"kind": ..., "id"?: ..., "expected"?: ..., ...}` object.
    pub fn from_json(value: &Value, fallback_id: String) -> Self {
        let mut fields = match value {
            Value::Object(m) => m.clone(),
            other => {
                return Self {
                    id: fallback_id,
                    kind: "?".into(),
                    anchor: None,
                    spec: Err(format!("scenario must be an object, got {other}")),
                    expected: None,
                }
            }
        };
        let id = match fields.remove("id") {
            Some(Value::String(s)) => s,
            _ => fallback_id,
        };
        let anchor = match fields.remove("anchor") {
            Some(Value::String(s)) => Some(s),
            _ => None,
        };
        let kind = fields.get("kind").and_then(Value::as_str).unwrap_or("?").to_string();
        let mut problems = Vec::new();
        let expected = match fields.remove("expected") {
            None => None,
            Some(v) => match serde_json::from_value::<Expected>(v) {
                Ok(e) => Some(e),
                Err(e) => {
                    problems.push(format!("bad \"expected\": {e}"));
                    None
                }
            },
        };
        let spec = serde_json::from_value::<ScenarioSpec>(Value::Object(fields)).map_err(|e| format!("{e}"));
        let spec = match (spec, problems.pop()) {
            (Ok(_), Some(p)) => Err(p),
            (s, _) => s,
        };
        Self { id, kind, anchor, spec, expected }
    }
}

/// Run the built-in registry.
pub fn run_paper_check(config: &Config) -> Result<Report, CliError> {
    config.validate()?;
    let scenarios: Vec<Scenario> = registry::registry().into_iter().filter(|s| config.selects(&s.id)).collect();
    Ok(report::run(&scenarios, config))
}

/// Run a JSON array of scenarios from `path`.
pub fn run_scenario_file(path: &Path, config: &Config) -> Result<Report, CliError> {
    config.validate()?;
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Unreadable { path: shown.clone(), source })?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::InvalidFile { path: shown.clone(), reason: e.to_string() })?;
    let Value::Array(items) = value else {
        return Err(CliError::InvalidFile { path: shown, reason: "top level is not an array".into() });
    };
    let scenarios: Vec<Scenario> = items
        .iter()
        .enumerate()
        .map(|(i, v)| Scenario::from_json(v, format!("scenario-{}", i + 1)))
        .filter(|s| config.selects(&s.id))
        .collect();
    Ok(report::run(&scenarios, config))
}
