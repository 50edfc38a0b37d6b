//! The `porc` command line: argument parsing, dispatch into `porc-core` and
//! JSON/CSV emission.

pub mod args;
mod commands;
pub mod output;

use std::fmt;

use serde_json::{json, Map, Value};

pub use args::{Cli, Command, Format, Global};
pub use output::{Document, SCHEMA_VERSION};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const REFUSED: i32 = 3;
    pub const INCONSISTENT: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Core(porc_core::Error),
    Input(String),
}

impl From<porc_core::Error> for CliError {
    fn from(e: porc_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) => write!(f, "bad input: {s}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(porc_core::Error::Refusal { .. }) => exit::REFUSED,
            CliError::Core(porc_core::Error::Inconsistency(_)) => exit::INCONSISTENT,
            _ => exit::FAILURE,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Core(porc_core::Error::Refusal { what, estimate, cap }) => json!({
                "kind": "refusal",
                "message": self.to_string(),
                "what": what,
                "estimate": estimate,
                "cap": cap,
            }),
            CliError::Core(porc_core::Error::Inconsistency(_)) => {
                json!({"kind": "inconsistency", "message": self.to_string()})
            }
            CliError::Core(porc_core::Error::Domain(_)) => json!({"kind": "domain", "message": self.to_string()}),
            CliError::Input(_) => json!({"kind": "input", "message": self.to_string()}),
        }
    }
}

/// What a command produced, before it is wrapped in a [`Document`].
pub(crate) struct Report {
    pub columns: Vec<&'static str>,
    pub results: Vec<Value>,
    pub diagnostics: Map<String, Value>,
    /// A check failed without raising an error (selftest).
    pub failed: bool,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            results: Vec::new(),
            diagnostics: Map::new(),
            failed: false,
        }
    }
}

/// Runs one command and returns the document to emit with the exit code.
pub fn run(cli: &Cli) -> (Document, i32) {
    let caps = cli.global.caps();
    let mut diagnostics = Map::new();
    diagnostics.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    diagnostics.insert(
        "caps".into(),
        json!({"group_size": caps.group_size.to_string(), "module_size": caps.module_size.to_string()}),
    );
    let mut doc = Document {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name().into(),
        inputs: commands::inputs(&cli.command),
        results: Vec::new(),
        diagnostics,
        columns: Vec::new(),
    };
    match commands::execute(&cli.command, &caps) {
        Ok(report) => {
            doc.columns = report.columns.iter().map(|c| c.to_string()).collect();
            doc.results = report.results;
            doc.diagnostics.extend(report.diagnostics);
            let code = if report.failed { exit::INCONSISTENT } else { exit::OK };
            (doc, code)
        }
        Err(e) => {
            doc.diagnostics.insert("error".into(), e.to_json());
            let code = e.exit_code();
            (doc, code)
        }
    }
}

/// Renders a document in the requested format.
pub fn render(doc: &Document, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(doc.to_json()),
        Format::Csv => doc.to_csv().map_err(|e| CliError::Input(e.to_string())),
    }
}
