//! One module per subcommand. Each `run_*` returns the rendered document;
//! [`emit`] writes it.

pub mod bounds;
pub mod region;
pub mod test;
pub mod tolerance;
pub mod verify;

use std::io::Write;

use serde::Serialize;

use crate::args::{Format, OutputArgs};
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Writes `body` to `--output` or stdout.
pub fn emit(out: &OutputArgs, body: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

pub fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!(
        "{command} does not support --format {}",
        format_name(format)
    ))
}

pub fn format_name(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Svg => "svg",
    }
}

pub fn form(f: crate::args::BoundForm) -> sdwitness_core::WStarForm {
    match f {
        crate::args::BoundForm::Piecewise => sdwitness_core::WStarForm::Piecewise,
        crate::args::BoundForm::LowBranch => sdwitness_core::WStarForm::LowBranchOnly,
    }
}

pub fn form_name(f: crate::args::BoundForm) -> &'static str {
    match f {
        crate::args::BoundForm::Piecewise => "piecewise",
        crate::args::BoundForm::LowBranch => "low-branch",
    }
}
