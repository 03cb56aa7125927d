//! Deciding strong nonlocality: conditional ℤ₂-linear systems for
//! interpolant states, exhaustive search for any balanced state, and the
//! structural classification built on both.

mod bruteforce;
mod classify;
pub mod gf2;
mod systems;

pub use bruteforce::{is_paradox_bruteforce, CompiledEvents, DEFAULT_MAX_BITS};
pub use classify::{
    classify, minimality, parity_profile, verify, ContextCount, DeletedMeasurement, KFunction,
    Method, RankEntry, VerificationReport,
};
pub use gf2::{BitMatrix, Equation, Gf2System};
pub use systems::{build_systems, is_paradox_logic, r_table, r_value, ConditionalSystem, RTable, RValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("state is not an interpolant (requires λ₁ = λ₂ = 0 and Φ = 0)")]
    NotInterpolant,
    #[error("exhaustive search over {bits} measurements exceeds the limit of {limit}")]
    TooManyMeasurements { bits: usize, limit: usize },
    #[error("{0}")]
    Precondition(String),
}
