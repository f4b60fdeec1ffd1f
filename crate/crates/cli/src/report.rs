use std::fmt::Write as _;
use std::time::Instant;

use norm_attain::Verdict;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::scenario::{execute, expectation_checks, Check, Expected};
use crate::Scenario;

pub const SCHEMA: &str = "norm-attain/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Errored,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub id: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    pub status: Status,
    pub verdict: Option<Verdict>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub config: Config,
    pub summary: Summary,
    pub results: Vec<ScenarioResult>,
}

fn run_one(s: &Scenario, config: &Config) -> ScenarioResult {
    let start = Instant::now();
    let mut result = ScenarioResult {
        id: s.id.clone(),
        kind: s.kind.clone(),
        anchor: s.anchor.clone(),
        status: Status::Errored,
        verdict: None,
        checks: Vec::new(),
        expected: s.expected.clone(),
        error: None,
        wall_time_ms: 0.0,
    };
    let outcome = match &s.spec {
        Err(e) => Err(e.clone()),
        Ok(spec) => {
            result.kind = spec.kind().to_string();
            execute(spec, config)
        }
    };
    match outcome {
        Ok(mut o) => {
            if let Some(exp) = &s.expected {
                let extra = expectation_checks(exp, &o);
                o.checks.extend(extra);
            }
            result.status = if o.checks.iter().all(|c| c.pass) { Status::Passed } else { Status::Failed };
            result.verdict = o.verdict;
            result.checks = o.checks;
        }
        Err(e) => result.error = Some(e),
    }
    result.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    result
}

/// Run scenarios in parallel; results keep input order.
pub fn run(scenarios: &[Scenario], config: &Config) -> Report {
    let results: Vec<ScenarioResult> = scenarios.par_iter().map(|s| run_one(s, config)).collect();
    let count = |st| results.iter().filter(|r| r.status == st).count();
    let summary = Summary {
        total: results.len(),
        passed: count(Status::Passed),
        failed: count(Status::Failed),
        errored: count(Status::Errored),
    };
    Report { schema: SCHEMA.to_string(), config: config.clone(), summary, results }
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Copy with every wall time zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for row in &mut r.results {
            row.wall_time_ms = 0.0;
        }
        r
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let t = &self.config.tolerance;
        let _ = writeln!(s, "# norm-attain report ({})\n", self.schema);
        let _ = writeln!(
            s,
            "abs_eps = {:e}, rel_eps = {:e}, max_iter = {}, seed = {}, prefix = {}\n",
            t.abs_eps, t.rel_eps, t.max_iter, self.config.seed, self.config.prefix
        );
        let m = &self.summary;
        let _ = writeln!(s, "{} scenarios: {} passed, {} failed, {} errored\n", m.total, m.passed, m.failed, m.errored);
        let _ = writeln!(s, "| id | anchor | kind | status | verdict | norm | worst check | time (ms) |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|---|");
        for r in &self.results {
            let verdict = r.verdict.as_ref().map_or("-".to_string(), |v| v.kind().to_string());
            let norm = r.verdict.as_ref().and_then(Verdict::norm).map_or("-".to_string(), |n| format!("{n:.12}"));
            let worst = worst_check(&r.checks)
                .map_or("-".to_string(), |c| format!("{}: {:.3e} ≤ {:.3e}", c.name, c.value, c.bound));
            let status = match r.status {
                Status::Passed => "pass",
                Status::Failed => "FAIL",
                Status::Errored => "ERROR",
            };
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {:.1} |",
                cell(&r.id),
                cell(r.anchor.as_deref().unwrap_or("")),
                r.kind,
                status,
                verdict,
                norm,
                cell(&worst),
                r.wall_time_ms
            );
        }
        let troubled: Vec<_> = self.results.iter().filter(|r| r.status != Status::Passed).collect();
        if !troubled.is_empty() {
            let _ = writeln!(s, "\n## Problems\n");
            for r in troubled {
                if let Some(e) = &r.error {
                    let _ = writeln!(s, "- `{}`: {}", r.id, e);
                }
                for c in r.checks.iter().filter(|c| !c.pass) {
                    let _ = writeln!(s, "- `{}`: {} = {:.3e} exceeds {:.3e}", r.id, c.name, c.value, c.bound);
                }
            }
        }
        s
    }
}

/// A failing check if any, else the one closest to its bound.
fn worst_check(checks: &[Check]) -> Option<&Check> {
    if let Some(c) = checks.iter().find(|c| !c.pass) {
        return Some(c);
    }
    let margin = |c: &Check| if c.bound > 0.0 { c.value / c.bound } else { f64::NEG_INFINITY };
    checks.iter().filter(|c| c.bound > 0.0).max_by(|a, b| margin(a).total_cmp(&margin(b))).or(checks.first())
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}
