//! Three-qubit strong-nonlocality paradoxes on balanced states.
//!
//! The crate evaluates the β/δ impossibility criteria, decides strong
//! nonlocality by conditional ℤ₂-linear systems and by exhaustive search,
//! synthesizes the known paradox families, decides equivalence between
//! scenarios, and scans parameter space for non-interpolant paradoxes.

pub mod amplitudes;
pub mod angle;
pub mod equivalence;
pub mod families;
pub mod logic;
pub mod model;
pub mod scan;
pub mod tolerance;

pub use amplitudes::{amplitude, beta, delta, impossible_events, is_impossible, BetaValue, DeltaValue};
pub use angle::{canonical_angle, Angle, AngleRange};
pub use model::{BalancedState, Event, GlobalAssignment, MeasurementScenario, QuantumScenario};
pub use tolerance::Tolerances;
