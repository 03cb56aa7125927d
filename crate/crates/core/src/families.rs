//! Synthesis of the known paradox families and their parameter solvers.
//!
//! All families share `M₃ = {C₀, C₁}` on an interpolant state `|B(λ)⟩` and
//! evenly spaced first/second-qubit sets. Only case (a) and case (b) with
//! `t = s/2` have closed forms; everything else is solved numerically and
//! checked against the original δ/β equations.

use std::f64::consts::{FRAC_PI_2, PI};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::amplitudes::{beta_radians, delta_radians};
use crate::angle::{Angle, AngleRange};
use crate::model::{BalancedState, MeasurementScenario, QuantumScenario};
use crate::tolerance::{Tolerances, EPS_SOLVE};

/// Grid points per branch combination in the case-(d) scan.
pub const CASE_D_GRID: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    C,
    D,
    Exotic,
}

/// Parameters of one family instance. Unused fields are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: i64,
    pub s: Option<i64>,
    pub t: Option<i64>,
    pub s_prime: Option<i64>,
    pub t_prime: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidSpec(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("bisection did not converge on [{lo}, {hi}]")]
    NonConvergence { lo: f64, hi: f64 },
    #[error("no root found across branches ({} sign changes inspected)", trace.sign_changes())]
    Infeasible { trace: ScanTrace },
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidSpec(msg.into())
}

fn need(v: Option<i64>, name: &str) -> Result<i64, FamilyError> {
    v.ok_or_else(|| invalid(format!("{name} is required")))
}

impl FamilySpec {
    pub fn a() -> Self {
        FamilySpec {
            family: Family::A,
            n: 2,
            s: None,
            t: None,
            s_prime: None,
            t_prime: None,
        }
    }

    pub fn b(n: i64, s: i64, t: i64) -> Self {
        FamilySpec {
            family: Family::B,
            n,
            s: Some(s),
            t: Some(t),
            ..Self::a()
        }
    }

    pub fn c(n: i64, s: i64, t_prime: i64) -> Self {
        FamilySpec {
            family: Family::C,
            n,
            s: Some(s),
            t_prime: Some(t_prime),
            ..Self::a()
        }
    }

    pub fn d(n: i64, s: i64, s_prime: i64, t_prime: i64) -> Self {
        FamilySpec {
            family: Family::D,
            n,
            s: Some(s),
            s_prime: Some(s_prime),
            t_prime: Some(t_prime),
            ..Self::a()
        }
    }

    pub fn exotic() -> Self {
        FamilySpec {
            family: Family::Exotic,
            n: 4,
            ..Self::a()
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let n = self.n;
        let even = |x: i64| x % 2 == 0;
        match self.family {
            Family::A => {
                if n != 2 {
                    return Err(invalid("family a requires N = 2"));
                }
            }
            Family::B => {
                let (s, t) = (need(self.s, "s")?, need(self.t, "t")?);
                if n <= 2 || !even(n) {
                    return Err(invalid("family b requires N > 2 even"));
                }
                if !even(s) || !(1..n).contains(&s) {
                    return Err(invalid("family b requires s even with 1 ≤ s < N"));
                }
                if even(t) || !(1..s).contains(&t) {
                    return Err(invalid("family b requires t odd with 1 ≤ t ≤ s−1"));
                }
            }
            Family::C => {
                let (s, tp) = (need(self.s, "s")?, need(self.t_prime, "t'")?);
                if n <= 2 {
                    return Err(invalid("family c requires N > 2"));
                }
                if !even(s) || !(1..n).contains(&s) {
                    return Err(invalid("family c requires s even with 1 ≤ s < N"));
                }
                if !(0..s / 2).contains(&tp) {
                    return Err(invalid("family c requires 0 ≤ t' ≤ s/2−1"));
                }
            }
            Family::D => {
                let s = need(self.s, "s")?;
                let sp = need(self.s_prime, "s'")?;
                let tp = need(self.t_prime, "t'")?;
                if n <= 2 {
                    return Err(invalid("family d requires N > 2"));
                }
                if !even(s) || !even(sp) || !(1 <= s && s < sp && sp < n) {
                    return Err(invalid("family d requires s, s' even with 1 ≤ s < s' < N"));
                }
                if even(tp) || !(1..n).contains(&tp.abs()) {
                    return Err(invalid("family d requires t' odd with 1 ≤ |t'| ≤ N−1"));
                }
            }
            Family::Exotic => {
                if n != 4 {
                    return Err(invalid("the exotic example is defined for N = 4"));
                }
            }
        }
        let extra = |v: Option<i64>, name: &str, allowed: bool| {
            if v.is_some() && !allowed {
                Err(invalid(format!("{name} does not apply to this family")))
            } else {
                Ok(())
            }
        };
        let f = self.family;
        extra(self.s, "s", matches!(f, Family::B | Family::C | Family::D))?;
        extra(self.t, "t", f == Family::B)?;
        extra(self.s_prime, "s'", f == Family::D)?;
        extra(self.t_prime, "t'", matches!(f, Family::C | Family::D))?;
        Ok(())
    }
}

/// Wraps into `(−π, π]`.
pub fn wrap_pi(x: f64) -> f64 {
    let r = (x + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

/// Smallest admissible λ for `δ(λ, C) ≡ πs/N`.
pub fn lambda_min(n: i64, s: i64) -> f64 {
    FRAC_PI_2 - PI * s as f64 / (2.0 * n as f64)
}

/// The branch `C ∈ (0, π/2]` solving `δ(λ, C) ≡ πs/N`.
pub fn c0_branch(n: i64, s: i64, lambda: f64) -> f64 {
    let ratio = lambda_min(n, s).tan() / lambda.tan();
    ratio.clamp(-1.0, 1.0).asin()
}

/// `−(N/π)·β(λ, C⁰(s, λ))`, with β taken in `(−π, π]`.
pub fn t0(n: i64, s: i64, lambda: f64) -> f64 {
    let b = wrap_pi(beta_radians(lambda, c0_branch(n, s, lambda)));
    -(n as f64) / PI * b
}

/// Bisects a sign change of `f` on `[lo, hi]` until the bracket stops shrinking.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> Result<f64, FamilyError> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(FamilyError::NonConvergence { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(λ, C)` with `δ(λ,C) ≡ πs/N` and `β(λ,C) ≡ −πt/N`, plus residuals
/// measured on the original equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaC {
    pub lambda: Angle,
    pub c: Angle,
    pub delta_residual: f64,
    pub beta_residual: f64,
}

impl LambdaC {
    pub fn max_residual(&self) -> f64 {
        self.delta_residual.abs().max(self.beta_residual.abs())
    }
}

fn residuals(n: i64, s: i64, t: f64, lambda: f64, c: f64) -> (f64, f64) {
    let unit = PI / n as f64;
    (
        wrap_pi(delta_radians(lambda, c) - unit * s as f64),
        wrap_pi(beta_radians(lambda, c) + unit * t),
    )
}

pub fn solve_lambda_c(n: i64, s: i64, t: f64) -> Result<LambdaC, FamilyError> {
    if n <= 2 || !(1..n).contains(&s) {
        return Err(invalid("solver requires N > 2 and 1 ≤ s < N"));
    }
    if !(t > 0.0 && t < s as f64) {
        return Err(FamilyError::NoSolution(format!("t = {t} must lie in (0, {s})")));
    }
    let (lambda, c) = if 2.0 * t == s as f64 {
        (
            Angle::exact(Ratio::new(n - s, 2 * n), AngleRange::ModPi),
            Angle::exact(Ratio::new(1, 2), AngleRange::ModPi),
        )
    } else {
        let t_eff = t.min(s as f64 - t);
        let lam = bisect(lambda_min(n, s), FRAC_PI_2, |l| t0(n, s, l) - t_eff)?;
        let c0 = c0_branch(n, s, lam);
        let c = if 2.0 * t < s as f64 { c0 } else { PI - c0 };
        (
            Angle::from_radians(lam, AngleRange::ModPi),
            Angle::from_radians(c, AngleRange::ModPi),
        )
    };
    let (dr, br) = residuals(n, s, t, lambda.radians(), c.radians());
    let out = LambdaC {
        lambda,
        c,
        delta_residual: dr,
        beta_residual: br,
    };
    if out.max_residual() >= EPS_SOLVE {
        return Err(FamilyError::NoSolution(format!(
            "residuals {dr:e}, {br:e} exceed {EPS_SOLVE:e}"
        )));
    }
    Ok(out)
}

/// Sign changes and roots found for one `(C₀, C₁)` branch pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchTrace {
    /// 0 for `C⁰`, 1 for `π − C⁰`.
    pub c0_branch: u8,
    pub c1_branch: u8,
    pub sign_changes: usize,
    pub roots: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanTrace {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub grid_points: usize,
    pub branches: Vec<BranchTrace>,
}

impl ScanTrace {
    pub fn sign_changes(&self) -> usize {
        self.branches.iter().map(|b| b.sign_changes).sum()
    }
}

/// A case-(d) solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseDRoot {
    pub lambda: f64,
    pub c0: f64,
    pub c1: f64,
    pub c0_branch: u8,
    pub c1_branch: u8,
    pub residual: f64,
}

fn branch(n: i64, s: i64, lambda: f64, which: u8) -> f64 {
    let c = c0_branch(n, s, lambda);
    if which == 0 {
        c
    } else {
        PI - c
    }
}

/// All roots of `β(λ,C₁) − β(λ,C₀) ≡ πt'/N` over the four branch pairs,
/// sorted by λ, with the scan trace.
pub fn solve_case_d(
    n: i64,
    s: i64,
    s_prime: i64,
    t_prime: i64,
) -> (Vec<CaseDRoot>, ScanTrace) {
    let lo = lambda_min(n, s).max(lambda_min(n, s_prime));
    let hi = FRAC_PI_2;
    let target = PI * t_prime as f64 / n as f64;
    let combos: Vec<(u8, u8)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
    let results: Vec<(BranchTrace, Vec<CaseDRoot>)> = combos
        .par_iter()
        .map(|&(b0, b1)| {
            let f = |l: f64| {
                wrap_pi(
                    beta_radians(l, branch(n, s_prime, l, b1))
                        - beta_radians(l, branch(n, s, l, b0))
                        - target,
                )
            };
            let step = (hi - lo) / CASE_D_GRID as f64;
            let grid: Vec<f64> = (0..CASE_D_GRID).map(|i| lo + step * i as f64).collect();
            let values: Vec<f64> = grid.iter().map(|&l| f(l)).collect();
            let mut trace = BranchTrace {
                c0_branch: b0,
                c1_branch: b1,
                sign_changes: 0,
                roots: Vec::new(),
            };
            let mut roots = Vec::new();
            for i in 0..grid.len() - 1 {
                let (fa, fb) = (values[i], values[i + 1]);
                if fa.signum() == fb.signum() && fa != 0.0 {
                    continue;
                }
                // A jump across ±π is a wrap, not a root.
                if fa.abs() > FRAC_PI_2 || fb.abs() > FRAC_PI_2 {
                    continue;
                }
                trace.sign_changes += 1;
                let Ok(l) = bisect(grid[i], grid[i + 1], f) else {
                    continue;
                };
                let (c0, c1) = (branch(n, s, l, b0), branch(n, s_prime, l, b1));
                let (d0, _) = residuals(n, s, 0.0, l, c0);
                let (d1, _) = residuals(n, s_prime, 0.0, l, c1);
                let residual = f(l).abs().max(d0.abs()).max(d1.abs());
                if residual < EPS_SOLVE {
                    trace.roots.push(l);
                    roots.push(CaseDRoot {
                        lambda: l,
                        c0,
                        c1,
                        c0_branch: b0,
                        c1_branch: b1,
                        residual,
                    });
                }
            }
            (trace, roots)
        })
        .collect();
    let mut branches = Vec::new();
    let mut roots = Vec::new();
    for (t, r) in results {
        branches.push(t);
        roots.extend(r);
    }
    roots.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let trace = ScanTrace {
        lambda_lo: lo,
        lambda_hi: hi,
        grid_points: CASE_D_GRID,
        branches,
    };
    (roots, trace)
}

/// Solved `(λ, C₀, C₁)` of a generated instance and named residuals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolvedParameters {
    pub lambda: Angle,
    pub c0: Angle,
    pub c1: Angle,
    pub residuals: Vec<(String, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generated {
    pub spec: FamilySpec,
    pub scenario: QuantumScenario,
    pub parameters: SolvedParameters,
    /// Offset of `M₂` in units of π/N.
    pub nu: f64,
    /// All case-(d) roots; the scenario uses the first.
    pub case_d_roots: Vec<CaseDRoot>,
}

fn spaced(n: i64, offset_half: bool) -> Vec<Angle> {
    (0..n)
        .map(|i| {
            let f = if offset_half {
                Ratio::new(2 * i + 1, 2 * n)
            } else {
                Ratio::new(i, n)
            };
            Angle::exact(f, AngleRange::ModPi)
        })
        .collect()
}

fn assemble(
    lambda: Angle,
    m1: Vec<Angle>,
    m2: Vec<Angle>,
    c0: Angle,
    c1: Angle,
) -> Result<QuantumScenario, FamilyError> {
    let state = BalancedState::interpolant(lambda).map_err(|e| invalid(e.to_string()))?;
    let m = MeasurementScenario::new(m1, m2, vec![c0, c1], &Tolerances::default())
        .map_err(|e| invalid(e.to_string()))?;
    Ok(QuantumScenario::new(state, m))
}

fn delta_beta_residuals(n: i64, lambda: &Angle, cs: &[(&str, &Angle, i64, f64)]) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    for &(name, c, s, t) in cs {
        let (d, b) = residuals(n, s, t, lambda.radians(), c.radians());
        out.push((format!("delta({name})"), d));
        out.push((format!("beta({name})"), b));
    }
    out
}

pub fn generate(spec: &FamilySpec) -> Result<Generated, FamilyError> {
    spec.validate()?;
    let n = spec.n;
    let zero = Angle::zero(AngleRange::ModPi);
    let mut nu = 0.0;
    let mut case_d_roots = Vec::new();
    let (lambda, m1, m2, c0, c1, residuals) = match spec.family {
        Family::A => {
            let half = Angle::exact(Ratio::new(1, 2), AngleRange::ModPi);
            (zero, spaced(2, false), spaced(2, false), zero, half, Vec::new())
        }
        Family::B => {
            let (s, t) = (spec.s.unwrap(), spec.t.unwrap());
            let sol = solve_lambda_c(n, s, t as f64)?;
            let res = delta_beta_residuals(n, &sol.lambda, &[("C1", &sol.c, s, t as f64)]);
            (sol.lambda, spaced(n, false), spaced(n, false), zero, sol.c, res)
        }
        Family::C => {
            let (s, tp) = (spec.s.unwrap(), spec.t_prime.unwrap());
            let t = tp as f64 + 0.5;
            let sol = solve_lambda_c(n, s, t)?;
            let c1 = Angle::from_radians(PI - sol.c.radians(), AngleRange::ModPi);
            nu = 0.5;
            let res = delta_beta_residuals(
                n,
                &sol.lambda,
                &[("C0", &sol.c, s, t), ("C1", &c1, s, s as f64 - t)],
            );
            (sol.lambda, spaced(n, false), spaced(n, true), sol.c, c1, res)
        }
        Family::D => {
            let (s, sp, tp) = (spec.s.unwrap(), spec.s_prime.unwrap(), spec.t_prime.unwrap());
            let (roots, trace) = solve_case_d(n, s, sp, tp);
            let Some(root) = roots.first().copied() else {
                return Err(FamilyError::Infeasible { trace });
            };
            case_d_roots = roots;
            let lambda = Angle::from_radians(root.lambda, AngleRange::ModPi);
            let c0 = Angle::from_radians(root.c0, AngleRange::ModPi);
            let c1 = Angle::from_radians(root.c1, AngleRange::ModPi);
            let t = (-(n as f64) / PI * beta_radians(root.lambda, root.c0)).rem_euclid(2.0 * n as f64);
            nu = ceil_offset(t);
            let m2: Vec<Angle> = if nu == 0.0 {
                spaced(n, false)
            } else {
                (0..n)
                    .map(|i| Angle::from_radians(PI / n as f64 * (i as f64 + nu), AngleRange::ModPi))
                    .collect()
            };
            let diff = wrap_pi(
                beta_radians(root.lambda, root.c1) - beta_radians(root.lambda, root.c0)
                    - PI * tp as f64 / n as f64,
            );
            let mut res = delta_beta_residuals(n, &lambda, &[("C0", &c0, s, t), ("C1", &c1, sp, 0.0)]);
            res.retain(|(name, _)| name != "beta(C1)");
            res.push(("beta(C1)-beta(C0)".into(), diff));
            (lambda, spaced(n, false), m2, c0, c1, res)
        }
        Family::Exotic => {
            let sol = solve_lambda_c(4, 3, 1.0)?;
            let c1 = Angle::from_radians(PI - sol.c.radians(), AngleRange::ModPi);
            let res = delta_beta_residuals(4, &sol.lambda, &[("C0", &sol.c, 3, 1.0), ("C1", &c1, 3, 2.0)]);
            (sol.lambda, spaced(4, false), spaced(4, false), sol.c, c1, res)
        }
    };
    let scenario = assemble(lambda, m1, m2, c0, c1)?;
    Ok(Generated {
        spec: *spec,
        scenario,
        parameters: SolvedParameters {
            lambda,
            c0,
            c1,
            residuals,
        },
        nu,
        case_d_roots,
    })
}

/// `⌈t⌉ − t`, treating `t` within ε_r of an integer as that integer.
pub fn ceil_offset(t: f64) -> f64 {
    let r = t.round();
    if (t - r).abs() < crate::tolerance::EPS_R {
        0.0
    } else {
        t.ceil() - t
    }
}

/// Every valid spec of families b and c with `N ≤ max_n`, plus a and the
/// exotic example. Family d is excluded since its feasibility is open.
pub fn enumerate_specs(max_n: i64) -> Vec<FamilySpec> {
    let mut out = vec![FamilySpec::a()];
    for n in 3..=max_n {
        for s in (2..n).step_by(2) {
            if n % 2 == 0 {
                for t in (1..s).step_by(2) {
                    out.push(FamilySpec::b(n, s, t));
                }
            }
            for tp in 0..s / 2 {
                out.push(FamilySpec::c(n, s, tp));
            }
        }
    }
    if max_n >= 4 {
        out.push(FamilySpec::exotic());
    }
    out
}
