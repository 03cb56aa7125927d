//! Parameter scans gathering evidence that only interpolant states admit
//! paradoxes, and the census/forcing analysis behind that expectation.
//!
//! Paradoxes are monotone in the measurement sets: adding a measurement can
//! only add constraints. A grid scan therefore only has to check subsets of
//! the maximal allowed size.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitudes::{impossible_mask, outcome_index};
use crate::angle::{canonical_angle, Angle, AngleRange};
use crate::families::{generate, FamilySpec};
use crate::logic::{is_paradox_bruteforce, is_paradox_logic, LogicError};
use crate::model::{BalancedState, MeasurementScenario, QuantumScenario};
use crate::tolerance::Tolerances;

/// Which λ are forced to zero by contexts carrying four impossible events.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForcingVerdict {
    pub counts: Vec<u32>,
    pub four_event_contexts: usize,
    /// At least three distinct contexts with four impossible events.
    pub premise_holds: bool,
    /// Qubits whose λ must vanish: a nonzero measurement in a four-event context.
    pub forced_zero: Vec<usize>,
    /// Premise implies two forced zeros, i.e. an interpolant up to permutation.
    pub forces_interpolant: bool,
    /// The state honours every forced zero.
    pub consistent: bool,
}

pub fn check_interpolant_forcing(
    state: &BalancedState,
    contexts: &[[Angle; 3]],
    tol: &Tolerances,
) -> ForcingVerdict {
    let counts: Vec<u32> = contexts
        .iter()
        .map(|c| impossible_mask(state, c, tol).count_ones())
        .collect();
    let mut distinct: Vec<&[Angle; 3]> = Vec::new();
    let mut forced = [false; 3];
    for (ctx, &n) in contexts.iter().zip(&counts) {
        if n != 4 {
            continue;
        }
        let dup = distinct
            .iter()
            .any(|d| (0..3).all(|q| d[q].approx_eq(&ctx[q].in_range(d[q].range()), tol.angle)));
        if !dup {
            distinct.push(ctx);
        }
        for q in 0..3 {
            if !ctx[q].in_range(AngleRange::ModPi).is_zero(tol.angle) {
                forced[q] = true;
            }
        }
    }
    let forced_zero: Vec<usize> = (0..3).filter(|&q| forced[q]).collect();
    let premise_holds = distinct.len() >= 3;
    ForcingVerdict {
        four_event_contexts: distinct.len(),
        premise_holds,
        forces_interpolant: premise_holds && forced_zero.len() >= 2,
        consistent: forced_zero.iter().all(|&q| state.lambda(q).is_zero(1e-6)),
        forced_zero,
        counts,
    }
}

/// A qubit `i` whose λ is forced to zero by two contexts that share a
/// measurement on qubit `p`, differ on qubit `i` (by something other than
/// `φ ↦ π − φ`), and each contain two impossible events related by flipping
/// the outcomes on `p` and `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairwiseForcing {
    pub shared_qubit: usize,
    pub forced_qubit: usize,
    pub contexts: (usize, usize),
}

fn has_flip_pair(mask: u8, p: usize, i: usize) -> bool {
    let flip = (1u8 << (2 - p)) | (1u8 << (2 - i));
    (0..8u8).any(|o| mask >> o & 1 == 1 && mask >> (o ^ flip) & 1 == 1)
}

pub fn pairwise_forcing(
    state: &BalancedState,
    contexts: &[[Angle; 3]],
    tol: &Tolerances,
) -> Vec<PairwiseForcing> {
    let masks: Vec<u8> = contexts.iter().map(|c| impossible_mask(state, c, tol)).collect();
    let mut out = Vec::new();
    for x in 0..contexts.len() {
        for y in (x + 1)..contexts.len() {
            let (cx, cy) = (&contexts[x], &contexts[y]);
            for p in 0..3 {
                let px = cx[p].in_range(AngleRange::ModPi);
                if !px.approx_eq(&cy[p], tol.angle) {
                    continue;
                }
                for i in (0..3).filter(|&i| i != p) {
                    let (a, b) = (cx[i].in_range(AngleRange::ModPi), cy[i].in_range(AngleRange::ModPi));
                    let mirrored = (a + b).in_range(AngleRange::ModPi).is_zero(tol.angle);
                    if a.approx_eq(&b, tol.angle) || mirrored {
                        continue;
                    }
                    if has_flip_pair(masks[x], p, i) && has_flip_pair(masks[y], p, i) {
                        out.push(PairwiseForcing {
                            shared_qubit: p,
                            forced_qubit: i,
                            contexts: (x, y),
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub lambda1: Vec<f64>,
    /// When `None`, λ₂ is tied to λ₁.
    pub lambda2: Option<Vec<f64>>,
    pub lambda3: Vec<f64>,
    pub phi: Vec<f64>,
    /// Measurement angles are `(π/d)ℤ_d` for this `d`.
    pub angle_denominator: i64,
    pub max_set_size: usize,
    pub max_total_bits: usize,
    /// Extra uniformly drawn state points, canonicalized.
    pub random_points: usize,
    pub seed: u64,
    pub controls: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            lambda1: vec![0.1, 0.3],
            lambda2: None,
            lambda3: vec![0.0, 0.5],
            phi: vec![0.0, FRAC_PI_2],
            angle_denominator: 8,
            max_set_size: 3,
            max_total_bits: 9,
            random_points: 0,
            seed: 0,
            controls: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("invalid scan configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointFinding {
    pub index: usize,
    pub lambdas: [f64; 3],
    pub phi: f64,
    pub interpolant: bool,
    pub scenarios_checked: u64,
    pub paradoxes: u64,
    /// Grid contexts with 0, 1, …, 4 impossible events.
    pub census: [u64; 5],
    pub forcing: ForcingVerdict,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParadoxFinding {
    pub point_index: usize,
    pub lambdas: [f64; 3],
    pub phi: f64,
    pub sets: [Vec<f64>; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ControlFinding {
    pub spec: FamilySpec,
    pub is_paradox: bool,
    pub expected: bool,
}

/// One JSON line of scan output.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanFinding {
    Point(PointFinding),
    Paradox(ParadoxFinding),
    Control(ControlFinding),
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, size.min(k), &mut Vec::new(), &mut out);
    out
}

/// Impossible masks for every triple of grid angles, indexed `(a·K + b)·K + c`.
fn mask_table(state: &BalancedState, grid: &[Angle], tol: &Tolerances) -> Vec<u8> {
    let k = grid.len();
    let mut t = vec![0u8; k * k * k];
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                t[(a * k + b) * k + c] = impossible_mask(state, &[grid[a], grid[b], grid[c]], tol);
            }
        }
    }
    t
}

/// Brute force over one scenario of grid subsets using a precomputed table.
fn table_paradox(table: &[u8], k: usize, sets: [&[usize]; 3]) -> bool {
    let sizes = [sets[0].len(), sets[1].len(), sets[2].len()];
    let bits = sizes.iter().sum::<usize>();
    let mut ctx = Vec::with_capacity(sizes.iter().product());
    for (j, &a) in sets[0].iter().enumerate() {
        for (kk, &b) in sets[1].iter().enumerate() {
            for (l, &c) in sets[2].iter().enumerate() {
                let m = table[(a * k + b) * k + c];
                if m != 0 {
                    ctx.push((j, sizes[0] + kk, sizes[0] + sizes[1] + l, m));
                }
            }
        }
    }
    !(0u64..1 << bits).any(|g| {
        ctx.iter().all(|&(p, q, r, m)| {
            let o = outcome_index([(g >> p & 1) as u8, (g >> q & 1) as u8, (g >> r & 1) as u8]);
            m >> o & 1 == 0
        })
    })
}

fn state_points(config: &ScanConfig) -> Vec<([f64; 3], f64)> {
    let mut pts = Vec::new();
    for (i1, &l1) in config.lambda1.iter().enumerate() {
        let l2s: Vec<f64> = match &config.lambda2 {
            Some(v) => v.clone(),
            None => vec![config.lambda1[i1]],
        };
        for &l2 in &l2s {
            for &l3 in &config.lambda3 {
                for &phi in &config.phi {
                    pts.push(([l1, l2, l3], phi));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.random_points {
        let mut draw = |hi: f64| canonical_angle(rng.gen_range(0.0..hi), AngleRange::Mod2Pi).radians();
        let l = [draw(FRAC_PI_2), draw(FRAC_PI_2), draw(FRAC_PI_2)];
        let phi = draw(2.0 * PI);
        pts.push((l, phi));
    }
    pts
}

fn validate(config: &ScanConfig) -> Result<(), ScanError> {
    let bad = |m: &str| Err(ScanError::Config(m.into()));
    if config.angle_denominator < 2 {
        return bad("angle_denominator must be at least 2");
    }
    if config.lambda1.is_empty() || config.lambda3.is_empty() || config.phi.is_empty() {
        return bad("every state-parameter list needs at least one value");
    }
    let lambdas = config
        .lambda1
        .iter()
        .chain(config.lambda2.iter().flatten())
        .chain(&config.lambda3);
    for &l in lambdas {
        if !(0.0..FRAC_PI_2).contains(&l) {
            return bad("lambda values must lie in [0, π/2)");
        }
    }
    let size = config.max_set_size.min(config.angle_denominator as usize);
    if 3 * size > config.max_total_bits || 3 * size > 62 {
        return Err(ScanError::Logic(LogicError::TooManyMeasurements {
            bits: 3 * size,
            limit: config.max_total_bits,
        }));
    }
    Ok(())
}

fn scan_point(
    index: usize,
    lambdas: [f64; 3],
    phi: f64,
    grid: &[Angle],
    subs: &[Vec<usize>],
    tol: &Tolerances,
) -> Result<(PointFinding, Vec<ParadoxFinding>), ScanError> {
    let state = BalancedState::new(
        lambdas.map(|l| Angle::from_radians(l, AngleRange::ModPi)),
        Angle::from_radians(phi, AngleRange::Mod2Pi),
    )
    .map_err(|e| ScanError::Config(e.to_string()))?;
    let k = grid.len();
    let table = mask_table(&state, grid, tol);

    let mut census = [0u64; 5];
    let mut four: Vec<[Angle; 3]> = Vec::new();
    for (i, m) in table.iter().enumerate() {
        census[m.count_ones() as usize] += 1;
        if m.count_ones() == 4 && four.len() < 3 {
            four.push([grid[i / (k * k)], grid[i / k % k], grid[i % k]]);
        }
    }
    let forcing = check_interpolant_forcing(&state, &four, tol);

    let n = subs.len();
    let hits: Vec<[usize; 3]> = (0..n * n * n)
        .into_par_iter()
        .filter_map(|i| {
            let idx = [i / (n * n), i / n % n, i % n];
            table_paradox(&table, k, [&subs[idx[0]], &subs[idx[1]], &subs[idx[2]]]).then_some(idx)
        })
        .collect();

    let mut flags = Vec::new();
    if census[4] >= 3 {
        flags.push(format!("{} contexts with 4 impossible events", census[4]));
    }
    if census[0] == table.len() as u64 {
        flags.push("no impossible events".into());
    }
    let interpolant = state.is_interpolant(tol.angle);
    let paradoxes = hits
        .iter()
        .map(|idx| ParadoxFinding {
            point_index: index,
            lambdas,
            phi,
            sets: idx.map(|s| subs[s].iter().map(|&g| grid[g].radians()).collect()),
        })
        .collect::<Vec<_>>();
    let point = PointFinding {
        index,
        lambdas,
        phi,
        interpolant,
        scenarios_checked: (n * n * n) as u64,
        paradoxes: paradoxes.len() as u64,
        census,
        forcing,
        flags,
    };
    Ok((point, paradoxes))
}

/// Family instances expected to be paradoxes, all with angles on the `π/8` grid.
pub fn control_specs() -> Vec<FamilySpec> {
    vec![
        FamilySpec::a(),
        FamilySpec::b(4, 2, 1),
        FamilySpec::b(8, 2, 1),
        FamilySpec::b(8, 6, 3),
    ]
}

/// Runs the grid (and random) scan. Findings are ordered: one `point` line
/// per state point followed by its `paradox` lines, then `control` lines.
pub fn scan_for_nonintepolant_paradoxes(
    config: &ScanConfig,
    tol: &Tolerances,
) -> Result<Vec<ScanFinding>, ScanError> {
    validate(config)?;
    let d = config.angle_denominator;
    let grid: Vec<Angle> = (0..d)
        .map(|i| Angle::exact(num_rational::Ratio::new(i, d), AngleRange::ModPi))
        .collect();
    let subs = subsets(grid.len(), config.max_set_size);
    let mut out = Vec::new();
    for (index, (lambdas, phi)) in state_points(config).into_iter().enumerate() {
        let (point, paradoxes) = scan_point(index, lambdas, phi, &grid, &subs, tol)?;
        out.push(ScanFinding::Point(point));
        out.extend(paradoxes.into_iter().map(ScanFinding::Paradox));
    }
    if config.controls {
        for spec in control_specs() {
            let g = generate(&spec).map_err(|e| ScanError::Config(e.to_string()))?;
            let (is_paradox, _) = is_paradox_bruteforce(&g.scenario, tol, 30)?;
            out.push(ScanFinding::Control(ControlFinding {
                spec,
                is_paradox,
                expected: true,
            }));
        }
    }
    Ok(out)
}

/// Paradox findings at non-interpolant points.
pub fn nonintepolant_paradox_count(findings: &[ScanFinding]) -> usize {
    findings
        .iter()
        .filter(|f| match f {
            ScanFinding::Point(p) => !p.interpolant && p.paradoxes > 0,
            _ => false,
        })
        .count()
}

pub fn write_json_lines<W: Write>(findings: &[ScanFinding], mut w: W) -> std::io::Result<()> {
    for f in findings {
        serde_json::to_writer(&mut w, f)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OddNConfig {
    pub ns: Vec<i64>,
    /// Angles are taken from `(π/(m·N))ℤ_{m·N}` for this `m`.
    pub grid_multiplier: i64,
}

impl Default for OddNConfig {
    fn default() -> Self {
        OddNConfig {
            ns: vec![3, 5, 7],
            grid_multiplier: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OddNFinding {
    pub n: i64,
    pub t: i64,
    pub lambda: Angle,
    pub third_qubit_pairs: usize,
    /// Third-qubit pairs (radians) that gave a paradox.
    pub paradoxes: Vec<[f64; 2]>,
}

/// `λ = π/2 − πt/N` for odd `N`, `M₁ = M₂` the full grid and every pair of
/// grid angles as `M₃`.
pub fn scan_odd_n(config: &OddNConfig, tol: &Tolerances) -> Result<Vec<OddNFinding>, ScanError> {
    if config.grid_multiplier < 1 {
        return Err(ScanError::Config("grid_multiplier must be positive".into()));
    }
    let mut out = Vec::new();
    for &n in &config.ns {
        if n < 3 || n % 2 == 0 {
            return Err(ScanError::Config(format!("N = {n} is not an odd integer ≥ 3")));
        }
        let d = n * config.grid_multiplier;
        let grid: Vec<Angle> = (0..d)
            .map(|i| Angle::exact(num_rational::Ratio::new(i, d), AngleRange::ModPi))
            .collect();
        for t in 1..=(n - 1) / 2 {
            let lambda = Angle::exact(num_rational::Ratio::new(n - 2 * t, 2 * n), AngleRange::ModPi);
            let state = BalancedState::interpolant(lambda).map_err(|e| ScanError::Config(e.to_string()))?;
            let pairs = subsets(grid.len(), 2);
            let hits: Result<Vec<Option<[f64; 2]>>, ScanError> = pairs
                .par_iter()
                .map(|p| {
                    let m = MeasurementScenario::new(
                        grid.clone(),
                        grid.clone(),
                        vec![grid[p[0]], grid[p[1]]],
                        tol,
                    )
                    .map_err(|e| ScanError::Config(e.to_string()))?;
                    let s = QuantumScenario::new(state, m);
                    Ok(is_paradox_logic(&s, tol)?.then(|| [grid[p[0]].radians(), grid[p[1]].radians()]))
                })
                .collect();
            out.push(OddNFinding {
                n,
                t,
                lambda,
                third_qubit_pairs: pairs.len(),
                paradoxes: hits?.into_iter().flatten().collect(),
            });
        }
    }
    Ok(out)
}
