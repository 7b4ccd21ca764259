pub mod asymptotics;
pub mod jacobi;
pub mod pollaczek;
pub mod smilansky;
pub mod verify;

use serde::Serialize;
use serde_json::json;

use crate::args::Format;
use crate::error::CliError;
use crate::report::Report;

pub struct Context {
    pub format: Format,
    pub seed: u64,
}

impl Context {
    /// Report seeded with `{command, args, format, seed}` as inputs.
    pub fn report(&self, command: &str, args: impl Serialize) -> Result<Report, CliError> {
        Report::new(json!({
            "command": command,
            "args": serde_json::to_value(args)?,
            "format": self.format,
            "seed": self.seed,
        }))
    }
}

pub(crate) fn require_nonempty<T>(values: &[T], flag: &str) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(CliError::Usage(format!(
            "at least one --{flag} is required"
        )));
    }
    Ok(())
}
