//! β and δ phase functionals, the Born-rule amplitude, and impossibility.
//!
//! An event `φ⃗ → o⃗` on `|B(λ⃗,Φ)⟩` is impossible exactly when
//! `Σᵢ β(λᵢ, φᵢ + oᵢπ) ≡ π − Φ (mod 2π)`. [`amplitude`] computes the same
//! inner product from the explicit eight-component state vector and never
//! touches β, so the two routes check each other.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use crate::angle::{Angle, AngleRange};
use crate::model::{BalancedState, Event, QuantumScenario};
use crate::tolerance::Tolerances;

/// A β value, reduced mod 2π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaValue(pub Angle);

/// A δ value, reduced mod 2π. Lies in `(0, π]` for `φ ∈ [0, π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeltaValue(pub Angle);

impl BetaValue {
    pub fn angle(&self) -> Angle {
        self.0
    }
    pub fn radians(&self) -> f64 {
        self.0.radians()
    }
}

impl DeltaValue {
    pub fn angle(&self) -> Angle {
        self.0
    }
    pub fn radians(&self) -> f64 {
        self.0.radians()
    }
}

/// `φ − 2·atan2(cos(λ/2)·sin φ, sin(λ/2) + cos(λ/2)·cos φ)` in `[0, 2π)`.
///
/// The two-argument arctangent keeps β continuous mod 2π where the
/// denominator vanishes.
pub fn beta_radians(lambda: f64, phi: f64) -> f64 {
    let (s, c) = (lambda / 2.0).sin_cos();
    let v = phi - 2.0 * (c * phi.sin()).atan2(s + c * phi.cos());
    Angle::from_radians(v, AngleRange::Mod2Pi).radians()
}

/// `π − 2·arctan(sin φ · tan λ)` in `[0, 2π)`.
pub fn delta_radians(lambda: f64, phi: f64) -> f64 {
    let v = PI - 2.0 * (phi.sin() * lambda.tan()).atan();
    Angle::from_radians(v, AngleRange::Mod2Pi).radians()
}

fn quarter_turns(phi: &Angle) -> Option<i64> {
    let f = phi.in_range(AngleRange::Mod2Pi).pi_fraction()?;
    let twice = f * 2;
    twice.is_integer().then(|| *twice.numer())
}

fn exact_zero(a: &Angle) -> bool {
    a.pi_fraction().is_some_and(|f| *f.numer() == 0)
}

/// β(λ, φ). Exact whenever one of the closed forms applies:
/// `β(λ,0) ≡ 0`, `β(λ,π) ≡ π`, `β(0,φ) ≡ −φ`, `β(λ,π/2) ≡ λ − π/2`, `β(λ,3π/2) ≡ π/2 − λ`.
pub fn beta(lambda: &Angle, phi: &Angle) -> BetaValue {
    let phi = phi.in_range(AngleRange::Mod2Pi);
    let lam = lambda.in_range(AngleRange::Mod2Pi);
    let half_pi = Angle::exact(Ratio::new(1, 2), AngleRange::Mod2Pi);
    let value = match quarter_turns(&phi) {
        Some(0) => Angle::zero(AngleRange::Mod2Pi),
        Some(2) => Angle::pi(AngleRange::Mod2Pi),
        _ if exact_zero(lambda) => -phi,
        Some(1) if lam.is_exact() => lam - half_pi,
        Some(3) if lam.is_exact() => half_pi - lam,
        _ => Angle::from_radians(
            beta_radians(lambda.radians(), phi.radians()),
            AngleRange::Mod2Pi,
        ),
    };
    BetaValue(value)
}

/// δ(λ, φ) = β(λ, φ+π) − β(λ, φ), via its closed arctangent form.
pub fn delta(lambda: &Angle, phi: &Angle) -> DeltaValue {
    let phi = phi.in_range(AngleRange::Mod2Pi);
    let lam = lambda.in_range(AngleRange::Mod2Pi);
    let pi = Angle::pi(AngleRange::Mod2Pi);
    let value = match quarter_turns(&phi) {
        Some(0) | Some(2) => pi,
        _ if exact_zero(lambda) => pi,
        Some(1) if lam.is_exact() => pi - lam.times(2),
        Some(3) if lam.is_exact() => pi + lam.times(2),
        _ => Angle::from_radians(
            delta_radians(lambda.radians(), phi.radians()),
            AngleRange::Mod2Pi,
        ),
    };
    DeltaValue(value)
}

/// ⟨φ⃗ + o⃗π | B(λ⃗,Φ)⟩ from the explicit tensor expansion.
pub fn amplitude(state: &BalancedState, event: &Event) -> Complex64 {
    let mut cs = [(0.0, 0.0); 3];
    for (q, slot) in cs.iter_mut().enumerate() {
        let (s, c) = (state.lambda(q).radians() / 2.0).sin_cos();
        *slot = (c, s);
    }
    let mut theta = [0.0; 3];
    for q in 0..3 {
        theta[q] = event.context[q].radians() + event.outcomes[q] as f64 * PI;
    }
    let phase = Complex64::from_polar(1.0, state.phase().radians());

    let mut total = Complex64::new(0.0, 0.0);
    for x in 0..8usize {
        let bits = [(x >> 2) & 1, (x >> 1) & 1, x & 1];
        let mut v = 1.0;
        let mut w = 1.0;
        let mut bra = Complex64::new(1.0, 0.0);
        for q in 0..3 {
            let (c, s) = cs[q];
            if bits[q] == 0 {
                v *= c;
                w *= s;
            } else {
                v *= s;
                w *= c;
                bra *= Complex64::from_polar(1.0, -theta[q]);
            }
        }
        let ket = (Complex64::new(v, 0.0) + phase * w) * FRAC_1_SQRT_2;
        total += bra * ket * FRAC_1_SQRT_2.powi(3);
    }
    total
}

fn sum_matches(sum: Angle, state: &BalancedState, tol: &Tolerances) -> bool {
    let lhs = sum + *state.phase();
    lhs.approx_eq(&Angle::pi(AngleRange::Mod2Pi), tol.angle)
}

/// True iff `Σᵢ β(λᵢ, φᵢ + oᵢπ) ≡ π − Φ`; exact when every term is exact.
pub fn is_impossible(state: &BalancedState, event: &Event, tol: &Tolerances) -> bool {
    let eig = event.eigen_angles();
    let mut sum = Angle::zero(AngleRange::Mod2Pi);
    for q in 0..3 {
        sum = sum + beta(state.lambda(q), &eig[q]).0;
    }
    sum_matches(sum, state, tol)
}

/// Outcome index `4a + 2b + c`.
pub fn outcome_index(outcomes: [u8; 3]) -> usize {
    ((outcomes[0] as usize) << 2) | ((outcomes[1] as usize) << 1) | outcomes[2] as usize
}

pub fn outcomes_of(index: usize) -> [u8; 3] {
    [((index >> 2) & 1) as u8, ((index >> 1) & 1) as u8, (index & 1) as u8]
}

/// β of each measurement angle for both outcomes: `[β(λ,φ), β(λ,φ+π)]`.
pub fn beta_pair(lambda: &Angle, phi: &Angle) -> [Angle; 2] {
    let phi = phi.in_range(AngleRange::Mod2Pi);
    [beta(lambda, &phi).0, beta(lambda, &phi.plus_pi()).0]
}

/// Bitmask of impossible outcome indices for one context, given the β
/// pairs of its three measurements.
pub fn impossible_mask_from_betas(
    betas: [&[Angle; 2]; 3],
    state: &BalancedState,
    tol: &Tolerances,
) -> u8 {
    let mut mask = 0u8;
    for o in 0..8 {
        let [a, b, c] = outcomes_of(o);
        let sum = betas[0][a as usize] + betas[1][b as usize] + betas[2][c as usize];
        if sum_matches(sum, state, tol) {
            mask |= 1 << o;
        }
    }
    mask
}

/// Bitmask of impossible outcome indices (`4a + 2b + c`) for a context.
pub fn impossible_mask(state: &BalancedState, context: &[Angle; 3], tol: &Tolerances) -> u8 {
    let pairs = [
        beta_pair(state.lambda(0), &context[0]),
        beta_pair(state.lambda(1), &context[1]),
        beta_pair(state.lambda(2), &context[2]),
    ];
    impossible_mask_from_betas([&pairs[0], &pairs[1], &pairs[2]], state, tol)
}

/// An event located in a scenario by the indices of its measurements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocatedEvent {
    pub indices: [usize; 3],
    pub event: Event,
}

/// Impossible outcome masks for every context, in [`MeasurementScenario::contexts`] order.
///
/// [`MeasurementScenario::contexts`]: crate::model::MeasurementScenario::contexts
pub fn context_masks(scenario: &QuantumScenario, tol: &Tolerances) -> Vec<([usize; 3], u8)> {
    let m = &scenario.measurements;
    let st = &scenario.state;
    let tables: Vec<Vec<[Angle; 2]>> = (0..3)
        .map(|q| m.set(q).iter().map(|a| beta_pair(st.lambda(q), a)).collect())
        .collect();
    m.contexts()
        .map(|idx| {
            let betas = [
                &tables[0][idx[0]],
                &tables[1][idx[1]],
                &tables[2][idx[2]],
            ];
            (idx, impossible_mask_from_betas(betas, st, tol))
        })
        .collect()
}

/// Every impossible event of the scenario, contexts in lexicographic order.
pub fn impossible_events(scenario: &QuantumScenario, tol: &Tolerances) -> Vec<LocatedEvent> {
    let m = &scenario.measurements;
    let mut out = Vec::new();
    for (idx, mask) in context_masks(scenario, tol) {
        let context = m.context_angles(idx);
        for o in 0..8 {
            if mask & (1 << o) != 0 {
                out.push(LocatedEvent {
                    indices: idx,
                    event: Event::new(context, outcomes_of(o)),
                });
            }
        }
    }
    out
}
