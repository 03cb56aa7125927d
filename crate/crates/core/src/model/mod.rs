//! Domain types: balanced states, measurement scenarios, events and global
//! assignments, plus the JSON scenario file format.

mod event;
mod io;
mod scenario;
mod state;

use std::path::PathBuf;

pub use event::{Event, GlobalAssignment};
pub use io::{load_scenario, parse_scenario, save_scenario, scenario_to_json};
pub use scenario::{MeasurementScenario, QuantumScenario};
pub use state::BalancedState;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("{field}: {message}")]
    Validation { field: String, message: String },
    #[error("malformed scenario file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl ModelError {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        ModelError::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Qubit label used in field names and reports (`m1`, `m2`, `m3`).
pub(crate) fn set_name(qubit: usize) -> &'static str {
    ["m1", "m2", "m3"][qubit]
}
