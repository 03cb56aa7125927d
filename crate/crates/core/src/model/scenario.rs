use serde::Serialize;

use super::{set_name, BalancedState, ModelError};
use crate::angle::{Angle, AngleRange};
use crate::tolerance::Tolerances;

/// Three sets of equatorial measurement angles, one per qubit.
///
/// Angles are kept reduced into `[0, π)`, sorted ascending and pairwise
/// distinct. A global assignment on `φ + π` is the flipped assignment on `φ`,
/// so the reduction loses nothing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasurementScenario {
    sets: [Vec<Angle>; 3],
}

impl MeasurementScenario {
    pub fn new(
        m1: Vec<Angle>,
        m2: Vec<Angle>,
        m3: Vec<Angle>,
        tol: &Tolerances,
    ) -> Result<Self, ModelError> {
        let mut sets = [m1, m2, m3];
        for (q, set) in sets.iter_mut().enumerate() {
            for a in set.iter_mut() {
                *a = a.in_range(AngleRange::ModPi);
            }
            set.sort_by(|a, b| a.cmp_value(b));
            for i in 0..set.len() {
                for j in (i + 1)..set.len() {
                    if set[i].approx_eq(&set[j], tol.angle) {
                        return Err(ModelError::invalid(
                            format!("measurements.{}", set_name(q)),
                            format!("duplicate measurement {} (mod π)", set[j]),
                        ));
                    }
                }
            }
        }
        Ok(MeasurementScenario { sets })
    }

    pub fn set(&self, qubit: usize) -> &[Angle] {
        &self.sets[qubit]
    }

    pub fn sets(&self) -> &[Vec<Angle>; 3] {
        &self.sets
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.sets[0].len(), self.sets[1].len(), self.sets[2].len()]
    }

    pub fn total(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn num_contexts(&self) -> usize {
        self.sizes().iter().product()
    }

    /// Context index triples in lexicographic order.
    pub fn contexts(&self) -> impl Iterator<Item = [usize; 3]> {
        let [n1, n2, n3] = self.sizes();
        (0..n1).flat_map(move |j| (0..n2).flat_map(move |k| (0..n3).map(move |l| [j, k, l])))
    }

    pub fn context_angles(&self, idx: [usize; 3]) -> [Angle; 3] {
        [
            self.sets[0][idx[0]],
            self.sets[1][idx[1]],
            self.sets[2][idx[2]],
        ]
    }

    /// Copy with measurement `index` of `qubit` removed.
    pub fn without(&self, qubit: usize, index: usize) -> MeasurementScenario {
        let mut sets = self.sets.clone();
        sets[qubit].remove(index);
        MeasurementScenario { sets }
    }

    pub fn position(&self, qubit: usize, angle: &Angle, eps: f64) -> Option<usize> {
        let angle = angle.in_range(AngleRange::ModPi);
        self.sets[qubit].iter().position(|a| a.approx_eq(&angle, eps))
    }
}

/// A balanced state together with the measurements performed on it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantumScenario {
    pub state: BalancedState,
    pub measurements: MeasurementScenario,
}

impl QuantumScenario {
    pub fn new(state: BalancedState, measurements: MeasurementScenario) -> Self {
        QuantumScenario {
            state,
            measurements,
        }
    }

    pub fn is_interpolant(&self, tol: &Tolerances) -> bool {
        self.state.is_interpolant(tol.angle)
    }

    pub fn without(&self, qubit: usize, index: usize) -> QuantumScenario {
        QuantumScenario {
            state: self.state,
            measurements: self.measurements.without(qubit, index),
        }
    }
}
