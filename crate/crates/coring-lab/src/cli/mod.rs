//! Document loading, command dispatch and reports for the `coring-lab` binary.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run, Command, RunError, RunOptions};
pub use document::{load_document, load_str, LoadError, LoadErrors, Workspace};
pub use report::{Report, Status, TaskReport};

/// Environment variable overriding the cochain-space guardrail.
pub const MAX_SPACE_ENV: &str = "CORING_LAB_MAX_SPACE";

/// The guardrail from the environment, or the default.
pub fn max_space_from_env() -> Result<usize, RunError> {
    match std::env::var(MAX_SPACE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| RunError::Input(format!("{MAX_SPACE_ENV} must be a positive integer, found {v:?}"))),
        Err(_) => Ok(crate::cochain::DEFAULT_MAX_SPACE),
    }
}
