//! Counting occurrences of configurations in Steiner triple systems.

mod builtin;
mod interp;
mod oracle;

use std::time::Instant;

pub use builtin::{count_builtin, BUILTIN_COUNTERS};
pub use interp::{execute_plan, execute_plan_wide, CompiledPlan};
pub use oracle::{
    blocks_configuration, count_oracle, list_occurrences, oracle_admits, LISTER_MAX_STARTS, ORACLE_MAX_BLOCKS,
    ORACLE_MAX_LINES, ORACLE_MAX_LINES_LARGE,
};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Builtin,
    Plan,
    Oracle,
    List,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Builtin => "builtin",
            Method::Plan => "plan",
            Method::Oracle => "oracle",
            Method::List => "list",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountResult {
    pub config: String,
    pub count: u64,
    /// Wall-clock seconds.
    pub elapsed: f64,
    pub method: Method,
}

impl CountResult {
    /// `config,method,count,seconds`.
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{:.6}", self.config, self.method.as_str(), self.count, self.elapsed)
    }
}

/// Runs `f` and wraps its count with timing.
pub fn timed(config: &str, method: Method, f: impl FnOnce() -> Result<u64>) -> Result<CountResult> {
    let start = Instant::now();
    let count = f()?;
    Ok(CountResult { config: config.to_string(), count, elapsed: start.elapsed().as_secs_f64(), method })
}
