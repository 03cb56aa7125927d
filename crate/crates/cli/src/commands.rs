use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use paradox_forge_core::equivalence::are_equivalent;
use paradox_forge_core::families::{generate, solve_case_d, solve_lambda_c, Family, FamilyError, FamilySpec};
use paradox_forge_core::logic::{classify, verify, Method, DEFAULT_MAX_BITS};
use paradox_forge_core::model::{load_scenario, save_scenario, scenario_to_json};
use paradox_forge_core::scan::{
    nonintepolant_paradox_count, scan_for_nonintepolant_paradoxes, scan_odd_n, OddNConfig, ScanConfig, ScanFinding,
};
use paradox_forge_core::{QuantumScenario, Tolerances};
use serde_json::{json, Value};

use crate::cli::{CircleArg, Cli, Command, FamilyArg, GlobalArgs, MethodArg};
use crate::json::{line, pretty, to_value};
use crate::render::{beta_ticks, render_svg, Circles, RenderSpec};

/// What to print and how to exit. Errors propagate separately and exit 2.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn json(v: &Value, code: i32) -> Self {
        Outcome {
            stdout: pretty(v) + "\n",
            code,
        }
    }
}

struct Settings {
    tol: Tolerances,
    max_bits: usize,
    seed: Option<u64>,
}

impl Settings {
    fn from(g: &GlobalArgs) -> Result<Self> {
        let tol = match g.tolerance {
            Some(eps) if !(eps > 0.0 && eps.is_finite()) => bail!("--tolerance must be a positive number"),
            Some(eps) => Tolerances::with_angle(eps),
            None => Tolerances::default(),
        };
        Ok(Settings {
            tol,
            max_bits: g.max_bruteforce_bits.unwrap_or(DEFAULT_MAX_BITS),
            seed: g.seed,
        })
    }

    fn load(&self, path: &Path) -> Result<QuantumScenario> {
        Ok(load_scenario(path, &self.tol)?)
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let settings = Settings::from(&cli.global)?;
    match cli.command {
        Command::Verify { file, method } => cmd_verify(&settings, &file, method),
        Command::Generate {
            family,
            n,
            s,
            t,
            s_prime,
            t_prime,
            output,
        } => cmd_generate(family_spec(family, n, s, t, s_prime, t_prime)?, output.as_deref()),
        Command::Solve {
            n,
            s,
            t,
            s_prime,
            t_prime,
        } => cmd_solve(n, s, t, s_prime, t_prime),
        Command::Classify { file } => cmd_classify(&settings, &file),
        Command::Compare { first, second } => cmd_compare(&settings, &first, &second),
        Command::Scan {
            config,
            random_points,
            odd_n,
            ns,
            output,
        } => cmd_scan(&settings, config.as_deref(), random_points, odd_n, ns, output.as_deref()),
        Command::Render {
            file,
            output,
            size,
            circles,
        } => {
            let spec = RenderSpec {
                size,
                circles: Circles {
                    m1: circles.contains(&CircleArg::M1),
                    m2: circles.contains(&CircleArg::M2),
                    ticks: circles.contains(&CircleArg::Ticks),
                },
            };
            cmd_render(&settings, &file, &output, &spec)
        }
    }
}

fn cmd_verify(st: &Settings, file: &Path, method: MethodArg) -> Result<Outcome> {
    let scenario = st.load(file)?;
    let method = match method {
        MethodArg::Logic => Method::Logic,
        MethodArg::Bruteforce => Method::Bruteforce,
        MethodArg::Both => Method::Both,
    };
    let report = verify(&scenario, method, &st.tol, st.max_bits)?;
    let code = match (report.method_agreement, report.is_paradox) {
        (Some(false), _) => 2,
        (_, true) => 0,
        (_, false) => 1,
    };
    Ok(Outcome::json(&to_value(&report)?, code))
}

fn family_spec(
    family: FamilyArg,
    n: Option<i64>,
    s: Option<i64>,
    t: Option<i64>,
    s_prime: Option<i64>,
    t_prime: Option<i64>,
) -> Result<FamilySpec> {
    let (family, default_n) = match family {
        FamilyArg::A => (Family::A, Some(FamilySpec::a().n)),
        FamilyArg::B => (Family::B, None),
        FamilyArg::C => (Family::C, None),
        FamilyArg::D => (Family::D, None),
        FamilyArg::Exotic => (Family::Exotic, Some(FamilySpec::exotic().n)),
    };
    let n = match (n, default_n) {
        (Some(n), Some(d)) if n != d => bail!("this family has fixed N = {d}"),
        (Some(n), _) | (None, Some(n)) => n,
        (None, None) => bail!("--N is required for this family"),
    };
    let spec = FamilySpec {
        family,
        n,
        s,
        t,
        s_prime,
        t_prime,
    };
    spec.validate()?;
    Ok(spec)
}

fn cmd_generate(spec: FamilySpec, output: Option<&Path>) -> Result<Outcome> {
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(FamilyError::Infeasible { trace }) => {
            let v = json!({"spec": spec, "error": "no root found across branches", "trace": trace});
            return Ok(Outcome::json(&to_value(&v)?, 1));
        }
        Err(e @ (FamilyError::NoSolution(_) | FamilyError::NonConvergence { .. })) => {
            let v = json!({"spec": spec, "error": e.to_string()});
            return Ok(Outcome::json(&to_value(&v)?, 1));
        }
        Err(e) => return Err(e.into()),
    };
    let scenario = match output {
        Some(path) => {
            save_scenario(&g.scenario, path)?;
            Value::Null
        }
        None => serde_json::from_str(&scenario_to_json(&g.scenario))?,
    };
    let v = json!({
        "spec": g.spec,
        "lambda": g.parameters.lambda,
        "c0": g.parameters.c0,
        "c1": g.parameters.c1,
        "residuals": g.parameters.residuals,
        "nu": g.nu,
        "case_d_roots": g.case_d_roots,
        "output": output.map(|p| p.display().to_string()),
        "scenario": scenario,
    });
    Ok(Outcome::json(&to_value(&v)?, 0))
}

fn cmd_solve(n: i64, s: i64, t: Option<f64>, s_prime: Option<i64>, t_prime: Option<i64>) -> Result<Outcome> {
    match (t, s_prime, t_prime) {
        (None, Some(sp), Some(tp)) => {
            FamilySpec::d(n, s, sp, tp).validate()?;
            let (roots, trace) = solve_case_d(n, s, sp, tp);
            let code = if roots.is_empty() { 1 } else { 0 };
            Ok(Outcome::json(&to_value(&json!({"roots": roots, "trace": trace}))?, code))
        }
        (Some(t), None, None) => match solve_lambda_c(n, s, t) {
            Ok(sol) => Ok(Outcome::json(&to_value(&sol)?, 0)),
            Err(e @ (FamilyError::NoSolution(_) | FamilyError::NonConvergence { .. })) => {
                Ok(Outcome::json(&json!({"error": e.to_string()}), 1))
            }
            Err(e) => Err(e.into()),
        },
        _ => bail!("give either --t, or both --s-prime and --t-prime"),
    }
}

fn cmd_classify(st: &Settings, file: &Path) -> Result<Outcome> {
    let scenario = st.load(file)?;
    let report = classify(&scenario, &st.tol, st.max_bits)?;
    let code = match (report.method_agreement, report.is_paradox) {
        (Some(false), _) => 2,
        (_, true) => 0,
        (_, false) => 1,
    };
    Ok(Outcome::json(&to_value(&report)?, code))
}

fn cmd_compare(st: &Settings, first: &Path, second: &Path) -> Result<Outcome> {
    let (a, b) = (st.load(first)?, st.load(second)?);
    let witness = are_equivalent(&a, &b, &st.tol)?;
    let v = json!({"equivalent": witness.is_some(), "witness": witness});
    Ok(Outcome::json(&to_value(&v)?, if witness.is_some() { 0 } else { 1 }))
}

fn cmd_scan(
    st: &Settings,
    config: Option<&Path>,
    random_points: Option<usize>,
    odd_n: bool,
    ns: Option<Vec<i64>>,
    output: Option<&Path>,
) -> Result<Outcome> {
    let mut lines = String::new();
    let code;
    if odd_n {
        let mut cfg: OddNConfig = match config {
            Some(p) => serde_json::from_str(&fs::read_to_string(p).with_context(|| p.display().to_string())?)?,
            None => OddNConfig::default(),
        };
        if let Some(ns) = ns {
            cfg.ns = ns;
        }
        let findings = scan_odd_n(&cfg, &st.tol)?;
        for f in &findings {
            let mut v = to_value(f)?;
            v.as_object_mut()
                .expect("findings serialize as objects")
                .insert("kind".into(), json!("odd_n"));
            lines += &(line(&v) + "\n");
        }
        code = 0;
    } else {
        let mut cfg: ScanConfig = match config {
            Some(p) => serde_json::from_str(&fs::read_to_string(p).with_context(|| p.display().to_string())?)?,
            None => ScanConfig::default(),
        };
        if let Some(seed) = st.seed {
            cfg.seed = seed;
        }
        if let Some(k) = random_points {
            cfg.random_points = k;
        }
        let findings = scan_for_nonintepolant_paradoxes(&cfg, &st.tol)?;
        for f in &findings {
            lines += &(line(&to_value(f)?) + "\n");
        }
        let controls_ok = findings.iter().all(|f| match f {
            ScanFinding::Control(c) => c.is_paradox == c.expected,
            _ => true,
        });
        code = if nonintepolant_paradox_count(&findings) == 0 && controls_ok { 0 } else { 1 };
    }
    match output {
        Some(path) => {
            fs::write(path, &lines).with_context(|| path.display().to_string())?;
            Ok(Outcome {
                stdout: String::new(),
                code,
            })
        }
        None => Ok(Outcome { stdout: lines, code }),
    }
}

fn cmd_render(st: &Settings, file: &Path, output: &Path, spec: &RenderSpec) -> Result<Outcome> {
    let scenario = st.load(file)?;
    let svg = render_svg(&scenario, spec)?;
    fs::write(output, svg).with_context(|| output.display().to_string())?;
    let v = json!({"output": output.display().to_string(), "ticks": beta_ticks(&scenario)});
    Ok(Outcome::json(&to_value(&v)?, 0))
}
