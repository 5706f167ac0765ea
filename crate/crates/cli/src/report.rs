use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use ecom_core::group::{load_group, FiniteGroup, GroupSpec, LoadOptions};

use crate::GlobalOpts;

pub const TOOL: &str = "ecom";
pub const BUDGET_ENV: &str = "ECOM_BUDGET_MB";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read group spec: {0}")]
    Parse(String),
    #[error("budget exceeded: {what}")]
    Budget { what: String, report: Option<Value> },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Budget { .. } => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn report(&self) -> Option<&Value> {
        match self {
            CliError::Budget { report, .. } => report.as_ref(),
            _ => None,
        }
    }
}

/// Resolves inline JSON, a file path or `family:param` shorthand.
pub fn resolve_spec(text: &str) -> Result<GroupSpec, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return GroupSpec::from_json(text).map_err(|e| CliError::Parse(e.to_string()));
    }
    let path = std::path::Path::new(text);
    if path.is_file() {
        let bytes = std::fs::read(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        return GroupSpec::from_json_bytes(&bytes).map_err(|e| CliError::Parse(e.to_string()));
    }
    if text.contains(':') {
        return GroupSpec::parse_shorthand(text).map_err(|e| CliError::Parse(e.to_string()));
    }
    Err(CliError::Parse(format!("`{text}` is not JSON, an existing file, or family:param")))
}

pub fn load(g: &GlobalOpts, text: &str) -> Result<(GroupSpec, FiniteGroup), CliError> {
    let spec = resolve_spec(text)?;
    let opts = LoadOptions { max_order: g.max_order, ..LoadOptions::default() };
    let group = load_group(&spec, &opts).map_err(|e| match e {
        ecom_core::group::GroupError::OrderTooLarge { .. } | ecom_core::group::GroupError::BudgetExceeded { .. } => {
            CliError::Budget { what: e.to_string(), report: None }
        }
        other => CliError::Parse(other.to_string()),
    })?;
    Ok((spec, group))
}

pub fn memory_budget_mb() -> Result<Option<u64>, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a whole number of megabytes, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// Builds a report and enforces the soft limits between phases.
pub struct Session<'a> {
    opts: &'a GlobalOpts,
    command: &'static str,
    start: Instant,
    last: Instant,
    timings: Vec<(String, f64)>,
    memory_mb: Option<u64>,
}

impl<'a> Session<'a> {
    pub fn new(opts: &'a GlobalOpts, command: &'static str) -> Result<Self, CliError> {
        let now = Instant::now();
        Ok(Session { opts, command, start: now, last: now, timings: Vec::new(), memory_mb: memory_budget_mb()? })
    }

    pub fn opts(&self) -> &GlobalOpts {
        self.opts
    }

    /// Records the end of a phase and checks the time limit.
    pub fn phase(&mut self, name: &str) -> Result<(), CliError> {
        let now = Instant::now();
        self.timings.push((name.to_string(), (now - self.last).as_secs_f64() * 1e3));
        self.last = now;
        if let Some(limit) = self.opts.time_limit {
            let spent = (now - self.start).as_secs_f64();
            if spent > limit {
                return Err(CliError::Budget {
                    what: format!("time limit of {limit} s passed after phase `{name}`"),
                    report: None,
                });
            }
        }
        Ok(())
    }

    /// Fails when an estimated allocation exceeds the memory budget.
    pub fn check_memory(&self, what: &str, bytes: u128) -> Result<(), CliError> {
        if let Some(mb) = self.memory_mb {
            if bytes > mb as u128 * 1024 * 1024 {
                return Err(CliError::Budget {
                    what: format!("{what} needs an estimated {} MB, over {BUDGET_ENV}={mb}", bytes / (1024 * 1024)),
                    report: None,
                });
            }
        }
        Ok(())
    }

    pub fn finish(&self, group: Option<(&GroupSpec, &FiniteGroup)>, payload: impl Serialize) -> Value {
        let mut report = json!({
            "tool": TOOL,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
        });
        let map = report.as_object_mut().expect("object");
        if let Some((spec, g)) = group {
            map.insert(
                "group".into(),
                json!({
                    "spec": spec,
                    "name": g.name(),
                    "order": g.order(),
                    "associativity": g.associativity(),
                }),
            );
        }
        map.insert("payload".into(), serde_json::to_value(payload).expect("payload serializes"));
        map.insert(
            "budget".into(),
            json!({
                "max_order": self.opts.max_order,
                "max_simplices": self.opts.max_simplices,
                "max_cosets": self.opts.max_cosets,
                "time_limit_s": self.opts.time_limit,
                "memory_mb": self.memory_mb,
            }),
        );
        if self.opts.timings {
            let t: serde_json::Map<String, Value> =
                self.timings.iter().map(|(k, v)| (k.clone(), json!((v * 1e3).round() / 1e3))).collect();
            map.insert("timings_ms".into(), Value::Object(t));
        }
        report
    }

    pub fn render(&self, report: &Value) -> String {
        if self.opts.pretty {
            serde_json::to_string_pretty(report).expect("report serializes")
        } else {
            serde_json::to_string(report).expect("report serializes")
        }
    }
}
