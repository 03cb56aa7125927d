//! Conditional systems `Ψ(z⃗)` for interpolant scenarios.

use num_rational::Ratio;
use serde::Serialize;

use super::gf2::{Equation, Gf2System};
use super::LogicError;
use crate::amplitudes::beta;
use crate::angle::{Angle, AngleRange};
use crate::model::QuantumScenario;
use crate::tolerance::Tolerances;

/// `r` in units of π, reduced into `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RValue {
    Exact(Ratio<i64>),
    Numeric(f64),
}

impl RValue {
    fn from_angle(x: Angle) -> RValue {
        match x.pi_fraction() {
            Some(f) => RValue::Exact(f),
            None => RValue::Numeric(x.radians() / std::f64::consts::PI),
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            RValue::Exact(f) => *f.numer() as f64 / *f.denom() as f64,
            RValue::Numeric(x) => x,
        }
    }

    /// The bit when `r ∈ ℤ₂`: exact values decide exactly, numeric ones
    /// within `eps` (in units of π, wrapping at 2).
    pub fn bit(&self, eps: f64) -> Option<u8> {
        match *self {
            RValue::Exact(f) => f.is_integer().then(|| (*f.numer() & 1) as u8),
            RValue::Numeric(x) => {
                let nearest = x.round();
                ((x - nearest).abs() < eps).then(|| (nearest.rem_euclid(2.0)) as u8)
            }
        }
    }
}

/// λ of an interpolant scenario, or the precondition error.
pub(crate) fn interpolant_lambda(
    scenario: &QuantumScenario,
    tol: &Tolerances,
) -> Result<Angle, LogicError> {
    scenario
        .state
        .interpolant_lambda(tol.angle)
        .ok_or(LogicError::NotInterpolant)
}

/// `π⁻¹[(A_j + B_k) − β(λ, C_l + zπ)] mod 2`.
pub fn r_value(
    scenario: &QuantumScenario,
    j: usize,
    k: usize,
    l: usize,
    z: u8,
    tol: &Tolerances,
) -> Result<RValue, LogicError> {
    let lambda = interpolant_lambda(scenario, tol)?;
    let m = &scenario.measurements;
    let c = m.set(2)[l].in_range(AngleRange::Mod2Pi);
    let c = if z == 1 { c.plus_pi() } else { c };
    let b = beta(&lambda, &c).0;
    Ok(r_from(&m.set(0)[j], &m.set(1)[k], b))
}

fn r_from(a: &Angle, b: &Angle, beta_c: Angle) -> RValue {
    let sum = a.in_range(AngleRange::Mod2Pi) + b.in_range(AngleRange::Mod2Pi);
    RValue::from_angle(sum - beta_c)
}

/// Bits `r_{jkl}(z)` where integral, indexed `[l][z][j][k]`.
pub type RTable = Vec<[Vec<Vec<Option<u8>>>; 2]>;

pub fn r_table(scenario: &QuantumScenario, tol: &Tolerances) -> Result<RTable, LogicError> {
    let lambda = interpolant_lambda(scenario, tol)?;
    let m = &scenario.measurements;
    let mut out = Vec::with_capacity(m.set(2).len());
    for c in m.set(2) {
        let c = c.in_range(AngleRange::Mod2Pi);
        let per_z = [c, c.plus_pi()].map(|cz| {
            let bc = beta(&lambda, &cz).0;
            m.set(0)
                .iter()
                .map(|a| {
                    m.set(1)
                        .iter()
                        .map(|b| r_from(a, b, bc).bit(tol.r))
                        .collect()
                })
                .collect()
        });
        out.push(per_z);
    }
    Ok(out)
}

/// `Ψ_l(z)` for every `(l, z)`, equations ordered by `j` then `k`.
fn partial_systems(table: &RTable) -> Vec<[Vec<Equation>; 2]> {
    table
        .iter()
        .enumerate()
        .map(|(l, per_z)| {
            [0u8, 1].map(|z| {
                let mut eqs = Vec::new();
                for (j, row) in per_z[z as usize].iter().enumerate() {
                    for (k, bit) in row.iter().enumerate() {
                        if let Some(rhs) = bit {
                            eqs.push(Equation {
                                a: j,
                                b: k,
                                rhs: *rhs,
                                provenance: (l, z),
                            });
                        }
                    }
                }
                eqs
            })
        })
        .collect()
}

/// One conditional system together with the third-qubit outcomes it assumes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionalSystem {
    pub z: Vec<u8>,
    pub system: Gf2System,
}

fn z_vector(index: u64, n: usize) -> Vec<u8> {
    (0..n).map(|l| (index >> l & 1) as u8).collect()
}

fn assemble(partials: &[[Vec<Equation>; 2]], sizes: [usize; 3], z: &[u8]) -> Gf2System {
    let mut sys = Gf2System::new(sizes[0], sizes[1]);
    for (l, &zl) in z.iter().enumerate() {
        for eq in &partials[l][zl as usize] {
            sys.push(*eq);
        }
    }
    sys
}

fn check_width(n: usize) -> Result<(), LogicError> {
    if n >= 63 {
        return Err(LogicError::Precondition(format!(
            "{n} third-qubit measurements give too many conditional systems"
        )));
    }
    Ok(())
}

/// `Ψ(z⃗)` for every `z⃗ ∈ ℤ₂ⁿ`; `z_l` is bit `l` of the position in the list.
pub fn build_systems(
    scenario: &QuantumScenario,
    tol: &Tolerances,
) -> Result<Vec<ConditionalSystem>, LogicError> {
    let table = r_table(scenario, tol)?;
    let n = table.len();
    check_width(n)?;
    let partials = partial_systems(&table);
    let sizes = scenario.measurements.sizes();
    Ok((0..1u64 << n)
        .map(|i| {
            let z = z_vector(i, n);
            let system = assemble(&partials, sizes, &z);
            ConditionalSystem { z, system }
        })
        .collect())
}

/// First consistent `Ψ(z⃗)` with a solution, or `None` for a paradox.
pub(crate) fn first_consistent(
    scenario: &QuantumScenario,
    tol: &Tolerances,
) -> Result<Option<(Vec<u8>, Vec<u8>, Vec<u8>)>, LogicError> {
    let table = r_table(scenario, tol)?;
    let n = table.len();
    check_width(n)?;
    let partials = partial_systems(&table);
    let sizes = scenario.measurements.sizes();
    for i in 0..1u64 << n {
        let z = z_vector(i, n);
        if let Some((a, b)) = assemble(&partials, sizes, &z).solve() {
            return Ok(Some((a, b, z)));
        }
    }
    Ok(None)
}

/// Paradox iff every conditional system is inconsistent.
pub fn is_paradox_logic(scenario: &QuantumScenario, tol: &Tolerances) -> Result<bool, LogicError> {
    Ok(first_consistent(scenario, tol)?.is_none())
}
