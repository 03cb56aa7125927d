use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::ModelError;
use crate::angle::{Angle, AngleRange};

/// `(|v_λ⟩ + e^{iΦ}|w_λ⟩)/√2` with `λᵢ ∈ [0, π/2)` and `Φ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BalancedState {
    lambdas: [Angle; 3],
    phase: Angle,
}

fn lambda_in_range(lambda: &Angle) -> bool {
    match lambda.pi_fraction() {
        Some(f) => f < num_rational::Ratio::new(1, 2),
        None => lambda.radians() < FRAC_PI_2,
    }
}

impl BalancedState {
    pub fn new(lambdas: [Angle; 3], phase: Angle) -> Result<Self, ModelError> {
        let mut stored = [Angle::zero(AngleRange::ModPi); 3];
        for (i, l) in lambdas.iter().enumerate() {
            let l = l.in_range(AngleRange::ModPi);
            if !lambda_in_range(&l) {
                return Err(ModelError::invalid(
                    format!("state.lambdas[{i}]"),
                    format!("lambda out of range [0, π/2): {l}"),
                ));
            }
            stored[i] = l;
        }
        Ok(BalancedState {
            lambdas: stored,
            phase: phase.in_range(AngleRange::Mod2Pi),
        })
    }

    /// The interpolant state `|B((0,0,λ),0)⟩`.
    pub fn interpolant(lambda: Angle) -> Result<Self, ModelError> {
        let zero = Angle::zero(AngleRange::ModPi);
        Self::new([zero, zero, lambda], Angle::zero(AngleRange::Mod2Pi))
    }

    pub fn ghz() -> Self {
        let zero = Angle::zero(AngleRange::ModPi);
        BalancedState {
            lambdas: [zero; 3],
            phase: Angle::zero(AngleRange::Mod2Pi),
        }
    }

    pub fn lambdas(&self) -> &[Angle; 3] {
        &self.lambdas
    }

    pub fn lambda(&self, qubit: usize) -> &Angle {
        &self.lambdas[qubit]
    }

    pub fn phase(&self) -> &Angle {
        &self.phase
    }

    /// `λ₁ = λ₂ = 0` and `Φ = 0`.
    pub fn is_interpolant(&self, eps: f64) -> bool {
        self.lambdas[0].is_zero(eps) && self.lambdas[1].is_zero(eps) && self.phase.is_zero(eps)
    }

    /// `λ` of an interpolant state.
    pub fn interpolant_lambda(&self, eps: f64) -> Option<Angle> {
        self.is_interpolant(eps).then_some(self.lambdas[2])
    }
}
