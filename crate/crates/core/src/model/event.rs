use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{set_name, MeasurementScenario};
use crate::angle::{Angle, AngleRange};

/// A context `(A, B, C)` together with outcome bits `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Event {
    pub context: [Angle; 3],
    pub outcomes: [u8; 3],
}

impl Event {
    pub fn new(context: [Angle; 3], outcomes: [u8; 3]) -> Self {
        assert!(outcomes.iter().all(|&o| o <= 1), "outcomes must be bits");
        Event { context, outcomes }
    }

    /// Eigenstate angles `φᵢ + oᵢπ`, reduced mod 2π.
    pub fn eigen_angles(&self) -> [Angle; 3] {
        let mut out = [Angle::zero(AngleRange::Mod2Pi); 3];
        for i in 0..3 {
            let a = self.context[i].in_range(AngleRange::Mod2Pi);
            out[i] = if self.outcomes[i] == 1 { a.plus_pi() } else { a };
        }
        out
    }

    pub fn with_outcomes(&self, outcomes: [u8; 3]) -> Event {
        Event::new(self.context, outcomes)
    }
}

/// Outcome bit for every measurement of a scenario, indexed like its sets.
///
/// Measurements are represented in `[0, π)`; the assignment on `φ + π` is
/// the flipped bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalAssignment {
    bits: [Vec<u8>; 3],
}

impl GlobalAssignment {
    pub fn zeros(sizes: [usize; 3]) -> Self {
        GlobalAssignment {
            bits: [vec![0; sizes[0]], vec![0; sizes[1]], vec![0; sizes[2]]],
        }
    }

    /// Decodes an enumeration index: bit `i` of `index` is the outcome of
    /// the `i`-th measurement in the order `M₁`, `M₂`, `M₃`.
    pub fn from_index(sizes: [usize; 3], index: u64) -> Self {
        let mut g = Self::zeros(sizes);
        let mut pos = 0;
        for q in 0..3 {
            for i in 0..sizes[q] {
                g.bits[q][i] = ((index >> pos) & 1) as u8;
                pos += 1;
            }
        }
        g
    }

    /// Builds from per-qubit bit vectors.
    pub fn from_bits(bits: [Vec<u8>; 3]) -> Self {
        assert!(bits.iter().flatten().all(|&b| b <= 1), "outcomes must be bits");
        GlobalAssignment { bits }
    }

    pub fn bit(&self, qubit: usize, index: usize) -> u8 {
        self.bits[qubit][index]
    }

    pub fn bits(&self, qubit: usize) -> &[u8] {
        &self.bits[qubit]
    }

    /// Outcome on an arbitrary angle of `qubit`, extended to `φ + π` by flipping.
    pub fn outcome_for(
        &self,
        scenario: &MeasurementScenario,
        qubit: usize,
        angle: &Angle,
        eps: f64,
    ) -> Option<u8> {
        let idx = scenario.position(qubit, angle, eps)?;
        let angle = angle.in_range(AngleRange::Mod2Pi);
        let rep = scenario.set(qubit)[idx].in_range(AngleRange::Mod2Pi);
        let flipped = angle.circular_distance(&rep.plus_pi()) < angle.circular_distance(&rep);
        Some(self.bits[qubit][idx] ^ u8::from(flipped))
    }

    /// Outcomes the assignment induces on a context.
    pub fn outcomes_on(&self, context: [usize; 3]) -> [u8; 3] {
        [
            self.bits[0][context[0]],
            self.bits[1][context[1]],
            self.bits[2][context[2]],
        ]
    }
}

impl Serialize for GlobalAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        for q in 0..3 {
            map.serialize_entry(set_name(q), &self.bits[q])?;
        }
        map.end()
    }
}
