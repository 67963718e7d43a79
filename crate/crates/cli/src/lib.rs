//! Command implementations behind the `ut4k` binary.
//!
//! Every command returns a [`RunReport`]: exact JSON outputs, human-readable
//! lines, warnings and the process exit code.

mod commands;
mod spec;

use std::fmt;

use serde::Serialize;
use serde_json::Value;

pub use commands::{cmd_classify, cmd_equivalents, cmd_invariant, cmd_kgroups, cmd_verify, resolve_theta, MatrixInput, Preset};
pub use spec::ThetaSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ISOMORPHIC: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CAVEAT: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or unusable input (exit 2).
    Input(String),
    /// Well-formed input outside the mathematical domain (exit 3).
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ut4k::Error> for CliError {
    fn from(e: ut4k::Error) -> Self {
        use ut4k::Error as E;
        match e {
            E::Rational(_) | E::PerfectSquare(_) | E::Domain(_) | E::FieldMismatch | E::Reducible(_) => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// The result of one command.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub warnings: Vec<String>,
    pub exit_code: i32,
    #[serde(skip)]
    pub human: Vec<String>,
}

impl RunReport {
    fn new(command: &str, inputs: Value) -> Self {
        RunReport { command: command.into(), inputs, outputs: Value::Null, warnings: Vec::new(), exit_code: EXIT_OK, human: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.human.push(s.into());
    }

    /// Pretty JSON, byte-identical for identical inputs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        for l in &self.human {
            out.push_str(l);
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str("warning: ");
            out.push_str(w);
            out.push('\n');
        }
        out
    }
}
