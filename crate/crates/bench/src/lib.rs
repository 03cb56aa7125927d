//! Shared fixtures for the benchmarks.

use paradox_forge_core::families::{generate, FamilySpec};
use paradox_forge_core::QuantumScenario;

/// Generated family-(b) instance `B(n, s, t)`.
pub fn family_b(n: i64, s: i64, t: i64) -> QuantumScenario {
    generate(&FamilySpec::b(n, s, t)).expect("valid family parameters").scenario
}
