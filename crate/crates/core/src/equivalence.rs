//! Equivalence of interpolant scenarios under the local unitaries that
//! preserve equatorial measurements and the state, plus qubit relabelling.
//!
//! For `λ ≠ 0` only `P_θ ⊗ P_{−θ} ⊗ I` and its `X`-conjugate qualify, with an
//! optional swap of qubits 1 and 2. At `λ = 0` (GHZ) the search widens to
//! independent phases on all three qubits and all six permutations.

use serde::Serialize;

use crate::amplitudes::context_masks;
use crate::angle::{Angle, AngleRange};
use crate::families::{generate, FamilyError, FamilySpec};
use crate::model::QuantumScenario;
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    PhaseRotation,
    XConjugateRotation,
}

/// Maps the second scenario onto the first: qubit `q` of the second
/// scenario plays qubit `permutation[q]` of the first, its angles are
/// reflected `φ ↦ −φ` for the `X` kind, then shifted by `thetas[q]` (mod π).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EquivalenceWitness {
    pub kind: WitnessKind,
    pub thetas: [Angle; 3],
    pub permutation: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivalenceError {
    #[error("scenario {0} is not an interpolant state")]
    NotInterpolant(usize),
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
    [1, 2, 0],
    [2, 0, 1],
];

fn sets_match(a: &[Angle], b: &[Angle], eps: f64) -> bool {
    a.len() == b.len() && b.iter().all(|x| a.iter().any(|y| y.approx_eq(x, eps)))
}

fn transform(set: &[Angle], reflect: bool, theta: Angle) -> Vec<Angle> {
    set.iter()
        .map(|a| {
            let a = if reflect { -*a } else { *a };
            (a + theta).in_range(AngleRange::ModPi)
        })
        .collect()
}

/// Shifts taking some element of `from` onto some element of `to`, ascending.
fn shift_candidates(from: &[Angle], to: &[Angle], eps: f64) -> Vec<Angle> {
    let mut out: Vec<Angle> = Vec::new();
    for a in to {
        for b in from {
            let d = (*a - *b).in_range(AngleRange::ModPi);
            if !out.iter().any(|x| x.approx_eq(&d, eps)) {
                out.push(d);
            }
        }
    }
    out.sort_by(|x, y| x.cmp_value(y));
    out
}

/// The second scenario's sets after applying a witness, in first-scenario order.
fn mapped_sets(s2: &QuantumScenario, w: &EquivalenceWitness) -> [Vec<Angle>; 3] {
    let mut out: [Vec<Angle>; 3] = Default::default();
    let reflect = w.kind == WitnessKind::XConjugateRotation;
    for q in 0..3 {
        out[w.permutation[q]] = transform(s2.measurements.set(q), reflect, w.thetas[q]);
    }
    out
}

/// Operational check: after the witness, every context of the first
/// scenario has the same number of impossible events as its image.
fn counts_agree(
    s1: &QuantumScenario,
    s2: &QuantumScenario,
    w: &EquivalenceWitness,
    tol: &Tolerances,
) -> bool {
    let mapped = mapped_sets(s2, w);
    let m1 = &s1.measurements;
    // index_map[p][i]: index in s2's qubit q (with permutation[q] = p) of s1's measurement i on qubit p.
    let mut index_map: [Vec<usize>; 3] = Default::default();
    for p in 0..3 {
        for a in m1.set(p) {
            match mapped[p].iter().position(|b| b.approx_eq(a, tol.angle)) {
                Some(i) => index_map[p].push(i),
                None => return false,
            }
        }
    }
    let c1 = context_masks(s1, tol);
    let c2: std::collections::HashMap<[usize; 3], u8> = context_masks(s2, tol).into_iter().collect();
    c1.iter().all(|(idx, mask)| {
        let mut idx2 = [0usize; 3];
        for q in 0..3 {
            let p = w.permutation[q];
            idx2[q] = index_map[p][idx[p]];
        }
        c2.get(&idx2).map(|m| m.count_ones()) == Some(mask.count_ones())
    })
}

fn search(
    s1: &QuantumScenario,
    s2: &QuantumScenario,
    perms: &[[usize; 3]],
    free_third_phase: bool,
    tol: &Tolerances,
) -> Option<EquivalenceWitness> {
    let eps = tol.angle;
    for kind in [WitnessKind::PhaseRotation, WitnessKind::XConjugateRotation] {
        let reflect = kind == WitnessKind::XConjugateRotation;
        for perm in perms {
            // Inverse permutation: src[p] is the qubit of s2 that lands on p.
            let mut src = [0usize; 3];
            for q in 0..3 {
                src[perm[q]] = q;
            }
            let zero = Angle::zero(AngleRange::ModPi);
            let base: [Vec<Angle>; 3] =
                std::array::from_fn(|p| transform(s2.measurements.set(src[p]), reflect, zero));
            if (0..3).any(|p| base[p].len() != s1.measurements.set(p).len()) {
                continue;
            }
            let cands0 = shift_candidates(&base[0], s1.measurements.set(0), eps);
            let cands1 = if free_third_phase {
                shift_candidates(&base[1], s1.measurements.set(1), eps)
            } else {
                Vec::new()
            };
            for r0 in &cands0 {
                let r1_list: Vec<Angle> = if free_third_phase { cands1.clone() } else { vec![-*r0] };
                for r1 in r1_list {
                    let r2 = -(*r0 + r1);
                    let shifts = [*r0, r1, r2];
                    let ok = (0..3).all(|p| {
                        sets_match(
                            s1.measurements.set(p),
                            &transform(&base[p], false, shifts[p]),
                            eps,
                        )
                    });
                    if !ok {
                        continue;
                    }
                    let mut thetas = [zero; 3];
                    for q in 0..3 {
                        thetas[q] = shifts[perm[q]];
                    }
                    let w = EquivalenceWitness {
                        kind,
                        thetas,
                        permutation: *perm,
                    };
                    if counts_agree(s1, s2, &w, tol) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// A witness mapping `s2` onto `s1`, or `None` when the scenarios are
/// inequivalent. Both states must be interpolant.
pub fn are_equivalent(
    s1: &QuantumScenario,
    s2: &QuantumScenario,
    tol: &Tolerances,
) -> Result<Option<EquivalenceWitness>, EquivalenceError> {
    let l1 = s1
        .state
        .interpolant_lambda(tol.angle)
        .ok_or(EquivalenceError::NotInterpolant(1))?;
    let l2 = s2
        .state
        .interpolant_lambda(tol.angle)
        .ok_or(EquivalenceError::NotInterpolant(2))?;
    let (z1, z2) = (l1.is_zero(tol.angle), l2.is_zero(tol.angle));
    if z1 && z2 {
        return Ok(search(s1, s2, &PERMS, true, tol));
    }
    if z1 != z2 || !l1.approx_eq(&l2, tol.angle) {
        return Ok(None);
    }
    Ok(search(s1, s2, &PERMS[..2], false, tol))
}

/// `(λ, {C₀, C₁})` of a generated instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleKey {
    pub lambda: f64,
    pub third_qubit: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceClass {
    pub key: TripleKey,
    pub members: Vec<FamilySpec>,
}

/// Groups family instances into equivalence classes, comparing each new
/// instance against the representative of every existing class.
pub fn distinct_triples(
    specs: &[FamilySpec],
    tol: &Tolerances,
) -> Result<Vec<EquivalenceClass>, FamilyError> {
    let mut reps: Vec<QuantumScenario> = Vec::new();
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    for spec in specs {
        let g = generate(spec)?;
        let found = reps.iter().position(|r| {
            matches!(are_equivalent(r, &g.scenario, tol), Ok(Some(_)))
        });
        match found {
            Some(i) => classes[i].members.push(*spec),
            None => {
                let third_qubit = g.scenario.measurements.set(2).iter().map(Angle::radians).collect();
                classes.push(EquivalenceClass {
                    key: TripleKey {
                        lambda: g.parameters.lambda.radians(),
                        third_qubit,
                    },
                    members: vec![*spec],
                });
                reps.push(g.scenario);
            }
        }
    }
    Ok(classes)
}
