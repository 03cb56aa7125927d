//! Exhaustive search over global assignments; valid for any balanced state.

use rayon::prelude::*;

use super::LogicError;
use crate::amplitudes::{context_masks, outcomes_of};
use crate::model::{GlobalAssignment, QuantumScenario};
use crate::tolerance::Tolerances;

/// Default cap on `|M₁| + |M₂| + |M₃|`.
pub const DEFAULT_MAX_BITS: usize = 30;

const BLOCK_BITS: u32 = 14;

/// Impossible events packed against the assignment index: an assignment `g`
/// hits event `(mask, value)` iff `g & mask == value`.
#[derive(Clone, Debug)]
pub struct CompiledEvents {
    pub bits: usize,
    pub events: Vec<(u64, u64)>,
}

impl CompiledEvents {
    pub fn compile(scenario: &QuantumScenario, tol: &Tolerances) -> Self {
        let sizes = scenario.measurements.sizes();
        let offsets = [0, sizes[0], sizes[0] + sizes[1]];
        let mut events = Vec::new();
        for (idx, mask) in context_masks(scenario, tol) {
            let positions: [usize; 3] = std::array::from_fn(|q| offsets[q] + idx[q]);
            let ctx_mask = positions.iter().fold(0u64, |m, p| m | 1 << p);
            for o in 0..8 {
                if mask & (1 << o) == 0 {
                    continue;
                }
                let outs = outcomes_of(o);
                let value = positions
                    .iter()
                    .zip(outs)
                    .fold(0u64, |v, (p, bit)| v | (bit as u64) << p);
                events.push((ctx_mask, value));
            }
        }
        CompiledEvents {
            bits: scenario.measurements.total(),
            events,
        }
    }

    pub fn is_consistent(&self, g: u64) -> bool {
        self.events.iter().all(|&(m, v)| g & m != v)
    }

    /// Smallest consistent assignment index, found by parallel block search.
    pub fn first_consistent(&self) -> Option<u64> {
        let total = 1u64 << self.bits;
        let block = 1u64 << BLOCK_BITS.min(self.bits as u32);
        let blocks = total / block;
        (0..blocks).into_par_iter().find_map_first(|b| {
            let start = b * block;
            (start..start + block).find(|&g| self.is_consistent(g))
        })
    }
}

/// `(true, None)` for a paradox, else `(false, Some(first consistent assignment))`.
pub fn is_paradox_bruteforce(
    scenario: &QuantumScenario,
    tol: &Tolerances,
    max_bits: usize,
) -> Result<(bool, Option<GlobalAssignment>), LogicError> {
    let bits = scenario.measurements.total();
    if bits > max_bits || bits > 62 {
        return Err(LogicError::TooManyMeasurements {
            bits,
            limit: max_bits.min(62),
        });
    }
    let compiled = CompiledEvents::compile(scenario, tol);
    Ok(match compiled.first_consistent() {
        Some(g) => (
            false,
            Some(GlobalAssignment::from_index(scenario.measurements.sizes(), g)),
        ),
        None => (true, None),
    })
}
