//! Verification reports and structural classification of scenarios.

use serde::Serialize;

use super::bruteforce::is_paradox_bruteforce;
use super::systems::{first_consistent, r_table, RTable};
use super::LogicError;
use crate::amplitudes::context_masks;
use crate::angle::Angle;
use crate::model::{GlobalAssignment, QuantumScenario};
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Logic,
    Bruteforce,
    Both,
}

/// For each third-qubit measurement `l` and outcome `z`, the bijection
/// sending `j` to the unique `k` with `r_{jkl}(z) ∈ ℤ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KFunction {
    /// `table[l][z][j] = k`.
    pub table: Vec<[Vec<usize>; 2]>,
}

impl KFunction {
    pub fn get(&self, j: usize, l: usize, z: u8) -> usize {
        self.table[l][z as usize][j]
    }

    pub fn is_bijective(&self) -> bool {
        self.table.iter().flatten().all(|row| {
            let mut seen = vec![false; row.len()];
            row.iter().all(|&k| k < row.len() && !std::mem::replace(&mut seen[k], true))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub z: Vec<u8>,
    pub coefficient_rank: usize,
    pub augmented_rank: usize,
    pub inconsistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContextCount {
    pub context: [usize; 3],
    pub impossible: u32,
}

/// The measurement whose deletion leaves a paradox.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeletedMeasurement {
    pub qubit: usize,
    pub index: usize,
    pub angle: Angle,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub is_paradox: bool,
    pub is_interpolant: bool,
    pub logic_verdict: Option<bool>,
    pub bruteforce_verdict: Option<bool>,
    pub method_agreement: Option<bool>,
    pub witness: Option<GlobalAssignment>,
    pub is_maximally_impossible: Option<bool>,
    pub k_function: Option<KFunction>,
    pub k_function_error: Option<String>,
    pub ranks: Vec<RankEntry>,
    /// `None` unless exactly two third-qubit measurements.
    pub is_maximal_rank: Option<bool>,
    pub is_n_regular: Option<bool>,
    pub is_minimal: Option<bool>,
    pub minimality_breaker: Option<DeletedMeasurement>,
    pub parity_profile: Option<[[u8; 2]; 2]>,
    pub impossible_counts: Vec<ContextCount>,
}

fn counts(scenario: &QuantumScenario, tol: &Tolerances) -> Vec<ContextCount> {
    context_masks(scenario, tol)
        .into_iter()
        .map(|(context, mask)| ContextCount {
            context,
            impossible: mask.count_ones(),
        })
        .collect()
}

fn logic_witness(
    scenario: &QuantumScenario,
    tol: &Tolerances,
) -> Result<Option<GlobalAssignment>, LogicError> {
    Ok(first_consistent(scenario, tol)?
        .map(|(a, b, z)| GlobalAssignment::from_bits([a, b, z])))
}

/// Paradox verdict by the chosen method(s). Structural fields stay `None`.
pub fn verify(
    scenario: &QuantumScenario,
    method: Method,
    tol: &Tolerances,
    max_bits: usize,
) -> Result<VerificationReport, LogicError> {
    let interpolant = scenario.is_interpolant(tol);
    let logic = match method {
        Method::Logic | Method::Both => Some(logic_witness(scenario, tol)?),
        Method::Bruteforce => None,
    };
    let brute = match method {
        Method::Bruteforce | Method::Both => Some(is_paradox_bruteforce(scenario, tol, max_bits)?),
        Method::Logic => None,
    };
    let logic_verdict = logic.as_ref().map(Option::is_none);
    let bruteforce_verdict = brute.as_ref().map(|b| b.0);
    let method_agreement = match (logic_verdict, bruteforce_verdict) {
        (Some(x), Some(y)) => Some(x == y),
        _ => None,
    };
    // Brute force is the ground truth whenever it ran.
    let (is_paradox, witness) = match (brute, logic) {
        (Some((p, w)), _) => (p, w),
        (None, Some(w)) => (w.is_none(), w),
        (None, None) => unreachable!("at least one method runs"),
    };
    Ok(VerificationReport {
        is_paradox,
        is_interpolant: interpolant,
        logic_verdict,
        bruteforce_verdict,
        method_agreement,
        witness,
        is_maximally_impossible: None,
        k_function: None,
        k_function_error: None,
        ranks: Vec::new(),
        is_maximal_rank: None,
        is_n_regular: None,
        is_minimal: None,
        minimality_breaker: None,
        parity_profile: None,
        impossible_counts: counts(scenario, tol),
    })
}

/// Whether some `k` (resp. `j`) pairs with every `j` (resp. `k`) for each `(l, z)`.
fn maximally_impossible(table: &RTable) -> bool {
    table.iter().flatten().all(|rows| {
        let all_a = rows.iter().all(|row| row.iter().any(Option::is_some));
        let nb = rows.first().map_or(0, Vec::len);
        let all_b = (0..nb).all(|k| rows.iter().any(|row| row[k].is_some()));
        all_a && all_b
    })
}

fn extract_k(table: &RTable) -> Result<KFunction, String> {
    let mut out = Vec::with_capacity(table.len());
    for (l, per_z) in table.iter().enumerate() {
        let mut pair: [Vec<usize>; 2] = Default::default();
        for (z, rows) in per_z.iter().enumerate() {
            for (j, row) in rows.iter().enumerate() {
                let ks: Vec<usize> = (0..row.len()).filter(|&k| row[k].is_some()).collect();
                match ks.as_slice() {
                    [k] => pair[z].push(*k),
                    [] => return Err(format!("no partner for j={j}, l={l}, z={z}")),
                    _ => return Err(format!("several partners {ks:?} for j={j}, l={l}, z={z}")),
                }
            }
        }
        out.push(pair);
    }
    let k = KFunction { table: out };
    if k.is_bijective() {
        Ok(k)
    } else {
        Err("partner map is not a bijection".into())
    }
}

fn parity_from(table: &RTable, k: &KFunction) -> Vec<[u8; 2]> {
    table
        .iter()
        .enumerate()
        .map(|(l, per_z)| {
            [0u8, 1].map(|z| {
                per_z[z as usize]
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (j, row)| {
                        acc ^ row[k.get(j, l, z)].expect("partner has integral r")
                    })
            })
        })
        .collect()
}

/// `⊕_j r(j, l, z)` for `(l, z) ∈ ℤ₂²`, indexed `[l][z]`.
pub fn parity_profile(
    scenario: &QuantumScenario,
    tol: &Tolerances,
) -> Result<[[u8; 2]; 2], LogicError> {
    let table = r_table(scenario, tol)?;
    if table.len() != 2 {
        return Err(LogicError::Precondition(
            "parity profile needs exactly two third-qubit measurements".into(),
        ));
    }
    let k = extract_k(&table)
        .map_err(|e| LogicError::Precondition(format!("not maximally impossible: {e}")))?;
    let p = parity_from(&table, &k);
    Ok([p[0], p[1]])
}

/// Whether deleting any single measurement destroys the paradox. Deletions
/// run `M₁` first, ascending angle; the first surviving paradox is returned.
pub fn minimality(
    scenario: &QuantumScenario,
    tol: &Tolerances,
    max_bits: usize,
) -> Result<(bool, Option<DeletedMeasurement>), LogicError> {
    let decide = |s: &QuantumScenario| -> Result<bool, LogicError> {
        if s.is_interpolant(tol) {
            super::is_paradox_logic(s, tol)
        } else {
            Ok(is_paradox_bruteforce(s, tol, max_bits)?.0)
        }
    };
    if !decide(scenario)? {
        return Ok((false, None));
    }
    for q in 0..3 {
        for (i, angle) in scenario.measurements.set(q).iter().enumerate() {
            if decide(&scenario.without(q, i))? {
                return Ok((
                    false,
                    Some(DeletedMeasurement {
                        qubit: q,
                        index: i,
                        angle: *angle,
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

/// Full report for an interpolant scenario. Brute force joins the logic
/// method when the enumeration guard allows it.
pub fn classify(
    scenario: &QuantumScenario,
    tol: &Tolerances,
    max_bits: usize,
) -> Result<VerificationReport, LogicError> {
    let table = r_table(scenario, tol)?;
    let method = if scenario.measurements.total() <= max_bits {
        Method::Both
    } else {
        Method::Logic
    };
    let mut report = verify(scenario, method, tol, max_bits)?;

    let [n1, n2, n3] = scenario.measurements.sizes();
    let max_imp = maximally_impossible(&table);
    report.is_maximally_impossible = Some(max_imp);
    match extract_k(&table) {
        Ok(k) if max_imp => report.k_function = Some(k),
        Ok(_) => report.k_function_error = Some("not maximally impossible".into()),
        Err(e) => report.k_function_error = Some(e),
    }

    if n3 == 2 {
        report.ranks = super::build_systems(scenario, tol)?
            .into_iter()
            .map(|cs| {
                let coefficient_rank = cs.system.coefficient_rank();
                let augmented_rank = cs.system.augmented_rank();
                RankEntry {
                    z: cs.z,
                    coefficient_rank,
                    augmented_rank,
                    inconsistent: augmented_rank > coefficient_rank,
                }
            })
            .collect();
        let full = (n1 + n2).saturating_sub(1);
        report.is_maximal_rank = Some(report.ranks.iter().all(|r| r.coefficient_rank == full));
        if let Some(k) = &report.k_function {
            let p = parity_from(&table, k);
            report.parity_profile = Some([p[0], p[1]]);
        }
    }
    report.is_n_regular =
        Some(max_imp && report.is_maximal_rank == Some(true) && n1 == n2 && n3 == 2);

    let (minimal, breaker) = minimality(scenario, tol, max_bits)?;
    report.is_minimal = Some(minimal);
    report.minimality_breaker = breaker;
    Ok(report)
}
