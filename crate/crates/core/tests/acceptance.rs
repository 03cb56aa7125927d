//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero only when a failure is not one of the documented deviations
//! (each of which is checked against an independent prediction).

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_rational::Ratio;
use paradox_forge_core::amplitudes::{beta_radians, delta_radians, impossible_mask};
use paradox_forge_core::equivalence::{are_equivalent, distinct_triples};
use paradox_forge_core::families::{
    enumerate_specs, generate, lambda_min, solve_lambda_c, t0, Family, FamilySpec, Generated,
};
use paradox_forge_core::logic::{build_systems, classify, is_paradox_bruteforce, is_paradox_logic, VerificationReport};
use paradox_forge_core::scan::{nonintepolant_paradox_count, scan_for_nonintepolant_paradoxes, ScanConfig, ScanFinding};
use paradox_forge_core::{
    amplitude, is_impossible, Angle, AngleRange, BalancedState, Event, MeasurementScenario, QuantumScenario,
    Tolerances,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_BITS: usize = 30;
const PROPERTY_SAMPLES: usize = 1000;
const AMPLITUDE_SAMPLES: usize = 100_000;
const RANDOM_SCENARIOS: usize = 100;
const ZERO_AMPLITUDE: f64 = 1e-9;
/// Amplitudes strictly inside this band are too close to the threshold to call.
const AMPLITUDE_BAND: (f64, f64) = (1e-12, 1e-6);
const PARAMETER_TOL: f64 = 1e-3;
const MIRROR_TOL: f64 = 1e-9;

struct Verdict {
    pass: bool,
    /// A failure that matches a documented, independently predicted deviation.
    predicted: bool,
    detail: String,
}

impl Verdict {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            predicted: false,
            detail: detail.into(),
        }
    }
}

fn report(id: usize, name: &str, v: &Verdict, elapsed: Duration) {
    let status = if v.pass { "PASS" } else { "FAIL" };
    let note = if !v.pass && v.predicted { " [documented deviation]" } else { "" };
    let line = format!(
        "criterion {id:>2} {name}: {status}{note} ({}) [{:.2}s]\n",
        v.detail,
        elapsed.as_secs_f64()
    );
    // Written directly so the line is visible without --nocapture.
    let _ = std::io::stdout().write_all(line.as_bytes());
}

fn pf(n: i64, d: i64, range: AngleRange) -> Angle {
    Angle::from_pi_frac(n, d, range).unwrap()
}

fn name(spec: &FamilySpec) -> String {
    let opt = |x: Option<i64>| x.map(|v| v.to_string());
    let params: Vec<String> = [Some(spec.n.to_string()), opt(spec.s), opt(spec.s_prime), opt(spec.t), opt(spec.t_prime)]
        .into_iter()
        .flatten()
        .collect();
    format!("{:?}({})", spec.family, params.join(","))
}

struct Instance {
    spec: FamilySpec,
    generated: Generated,
    report: VerificationReport,
}

fn instance(spec: FamilySpec, tol: &Tolerances) -> Instance {
    let generated = generate(&spec).unwrap_or_else(|e| panic!("{}: {e}", name(&spec)));
    let report = classify(&generated.scenario, tol, MAX_BITS).unwrap_or_else(|e| panic!("{}: {e}", name(&spec)));
    Instance {
        spec,
        generated,
        report,
    }
}

/// `rank Γ` of each `Ψ(z₀, z₁)` for evenly spaced `M₁, M₂`: the equation
/// graph is a union of `gcd(d, N)` cycles, `d` the β gap between the two
/// third-qubit settings in units of π/N.
fn predicted_ranks(g: &Generated) -> Vec<usize> {
    let n = g.spec.n;
    let lam = g.parameters.lambda.radians();
    let gap = |a: f64, b: f64| -> i64 {
        let u = (beta_radians(lam, a) - beta_radians(lam, b)) * n as f64 / PI;
        u.round() as i64
    };
    let (c0, c1) = (g.parameters.c0.radians(), g.parameters.c1.radians());
    (0..4)
        .map(|i| {
            let (z0, z1) = ((i & 1) as f64, (i >> 1) as f64);
            let d = gap(c0 + z0 * PI, c1 + z1 * PI).rem_euclid(n);
            (2 * n - d.gcd(&n)) as usize
        })
        .collect()
}

fn predicted_regular(g: &Generated) -> bool {
    predicted_ranks(g).iter().all(|&r| r as i64 == 2 * g.spec.n - 1)
}

fn both_methods(r: &VerificationReport) -> bool {
    r.logic_verdict == Some(true) && r.bruteforce_verdict == Some(true)
}

/// Shared body of the family sweeps: paradox by both methods, N-regular
/// where the rank oracle predicts it, and a deviation otherwise.
fn sweep_verdict(instances: &[Instance], extra: impl Fn(&Instance) -> Option<String>) -> Verdict {
    let mut problems = Vec::new();
    let mut irregular = Vec::new();
    let mut mispredicted = Vec::new();
    for inst in instances {
        if !both_methods(&inst.report) {
            problems.push(format!("{} not a paradox by both methods", name(&inst.spec)));
        }
        if let Some(p) = extra(inst) {
            problems.push(p);
        }
        let regular = inst.report.is_n_regular == Some(true);
        if !regular {
            irregular.push(name(&inst.spec));
        }
        if regular != predicted_regular(&inst.generated) {
            mispredicted.push(name(&inst.spec));
        }
    }
    let n = instances.len();
    if !problems.is_empty() || !mispredicted.is_empty() {
        let mut detail = problems.join("; ");
        if !mispredicted.is_empty() {
            detail += &format!("; N-regular disagrees with rank oracle for {mispredicted:?}");
        }
        return Verdict::check(false, detail);
    }
    if irregular.is_empty() {
        return Verdict::check(true, format!("{n} instances, all paradoxes by both methods and N-regular"));
    }
    Verdict {
        pass: false,
        predicted: true,
        detail: format!(
            "{n} instances are paradoxes by both methods; {} are not maximal rank, exactly as rank 2N - gcd(d, N) predicts: {}",
            irregular.len(),
            irregular.join(" ")
        ),
    }
}

fn criterion_1(tol: &Tolerances) -> (Verdict, Instance) {
    let inst = instance(FamilySpec::a(), tol);
    let scn = &inst.generated.scenario;
    let logic = is_paradox_logic(scn, tol).unwrap();
    let brute = is_paradox_bruteforce(scn, tol, MAX_BITS).unwrap().0;
    let systems = build_systems(scn, tol).unwrap();
    let all_inconsistent = systems.len() == 4 && systems.iter().all(|s| s.system.is_inconsistent());
    // A context carries impossible events iff A + B + C ≡ 0 (mod π), and then exactly 4.
    let mut counts_ok = true;
    let mut carrying = 0;
    for c in &inst.report.impossible_counts {
        let angles = scn.measurements.context_angles(c.context);
        let sum = (angles[0] + angles[1] + angles[2]).in_range(AngleRange::ModPi);
        let expected = if sum.is_zero(tol.angle) { 4 } else { 0 };
        counts_ok &= c.impossible == expected;
        carrying += (c.impossible > 0) as usize;
    }
    let pass = logic && brute && all_inconsistent && counts_ok;
    let detail = format!(
        "logic {logic}, brute force {brute}, all four conditional systems inconsistent {all_inconsistent}, \
         {carrying}/{} contexts carry impossible events and each carries 4",
        inst.report.impossible_counts.len()
    );
    (Verdict::check(pass, detail), inst)
}

fn criterion_2(tol: &Tolerances) -> (Verdict, Vec<Instance>) {
    let mut specs = Vec::new();
    for n in (4..=10).step_by(2) {
        for s in (2..n).step_by(2) {
            for t in (1..s).step_by(2) {
                specs.push(FamilySpec::b(n, s, t));
            }
        }
    }
    let instances: Vec<Instance> = specs.into_iter().map(|s| instance(s, tol)).collect();
    let v = sweep_verdict(&instances, |inst| {
        let (n, s, t) = (inst.spec.n, inst.spec.s.unwrap(), inst.spec.t.unwrap());
        if 2 * t != s {
            return None;
        }
        let expected = Ratio::new(n - 2 * t, 2 * n);
        (inst.generated.parameters.lambda.pi_fraction() != Some(expected))
            .then(|| format!("{} λ is not exactly π/2 - πt/N", name(&inst.spec)))
    });
    (v, instances)
}

fn criterion_3(tol: &Tolerances) -> (Verdict, Vec<Instance>) {
    let mut specs = Vec::new();
    for n in (4..=8).step_by(2) {
        for s in (2..n).step_by(2) {
            for tp in 0..s / 2 {
                specs.push(FamilySpec::c(n, s, tp));
            }
        }
    }
    let instances: Vec<Instance> = specs.into_iter().map(|s| instance(s, tol)).collect();
    let v = sweep_verdict(&instances, |inst| {
        let p = &inst.generated.parameters;
        let mirror = (p.c1.radians() - (PI - p.c0.radians())).abs();
        if (inst.generated.nu - 0.5).abs() > 1e-12 {
            Some(format!("{} offset ν = {}", name(&inst.spec), inst.generated.nu))
        } else if mirror > MIRROR_TOL {
            Some(format!("{} |C1 - (π - C0)| = {mirror:e}", name(&inst.spec)))
        } else {
            None
        }
    });
    (v, instances)
}

fn close(x: f64, expected: f64) -> bool {
    (x - expected).abs() < PARAMETER_TOL
}

fn criterion_4(tol: &Tolerances) -> (Verdict, Instance) {
    let inst = instance(FamilySpec::d(8, 4, 6, 1), tol);
    let p = &inst.generated.parameters;
    let (l, c0, c1) = (p.lambda.radians(), p.c0.radians(), p.c1.radians());
    let pass = close(l, 0.8129) && close(c0, 1.2418) && close(c1, 0.4028) && both_methods(&inst.report);
    let detail = format!(
        "λ = {l:.4}, C0 = {c0:.4}, C1 = {c1:.4}, paradox by both methods {}",
        both_methods(&inst.report)
    );
    (Verdict::check(pass, detail), inst)
}

fn criterion_5(tol: &Tolerances) -> (Verdict, Instance) {
    let inst = instance(FamilySpec::exotic(), tol);
    let p = &inst.generated.parameters;
    let (l, c0) = (p.lambda.radians(), p.c0.radians());
    let r = &inst.report;
    let parities_unequal = r.parity_profile.is_some_and(|pp| pp[0][0] != pp[0][1] && pp[1][0] != pp[1][1]);
    let pass = close(l, 0.4271)
        && close(c0, 1.1437)
        && both_methods(r)
        && r.is_maximally_impossible == Some(true)
        && r.is_maximal_rank == Some(false)
        && parities_unequal;
    let detail = format!(
        "λ = {l:.4}, C0 = {c0:.4}, maximally impossible {:?}, maximal rank {:?}, parity profile {:?}",
        r.is_maximally_impossible, r.is_maximal_rank, r.parity_profile
    );
    (Verdict::check(pass, detail), inst)
}

fn distinct_angles(rng: &mut ChaCha8Rng, count: usize, den: i64) -> Vec<Angle> {
    sample(rng, den as usize, count)
        .into_iter()
        .map(|k| pf(k as i64, den, AngleRange::ModPi))
        .collect()
}

fn random_interpolant(rng: &mut ChaCha8Rng, tol: &Tolerances, small: &[Generated]) -> QuantumScenario {
    if rng.gen_bool(0.4) {
        // A small family instance, possibly with one measurement deleted.
        let scn = &small[rng.gen_range(0..small.len())].scenario;
        let q = rng.gen_range(0..3);
        let len = scn.measurements.set(q).len();
        return match rng.gen_range(0..=len) {
            i if i == len || len == 1 => scn.clone(),
            i => scn.without(q, i),
        };
    }
    let lambda = match rng.gen_range(0..3) {
        0 => pf(rng.gen_range(0..8), 16, AngleRange::ModPi),
        1 => {
            let n = rng.gen_range(3..=8);
            pf(n - 2 * rng.gen_range(1..=(n - 1) / 2), 2 * n, AngleRange::ModPi)
        }
        _ => Angle::from_radians(rng.gen_range(0.0..FRAC_PI_2), AngleRange::ModPi),
    };
    let den = [4, 8][rng.gen_range(0..2)];
    let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let m1 = distinct_angles(rng, n1, den);
    let m2 = distinct_angles(rng, n2, den);
    let n3 = rng.gen_range(1..=2);
    let m3 = if rng.gen_bool(0.5) {
        distinct_angles(rng, n3, 8)
    } else {
        let first = rng.gen_range(0.0..PI / 2.0);
        [first, first + PI / 2.0][..n3]
            .iter()
            .map(|&x| Angle::from_radians(x, AngleRange::ModPi))
            .collect()
    };
    QuantumScenario::new(
        BalancedState::interpolant(lambda).unwrap(),
        MeasurementScenario::new(m1, m2, m3, tol).unwrap(),
    )
}

fn criterion_6(tol: &Tolerances, generated: &[&Instance]) -> Verdict {
    let mut disagreements = Vec::new();
    for inst in generated {
        if inst.report.method_agreement != Some(true) {
            disagreements.push(name(&inst.spec));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let small: Vec<Generated> = [FamilySpec::a(), FamilySpec::b(4, 2, 1), FamilySpec::c(4, 2, 0), FamilySpec::c(3, 2, 0), FamilySpec::exotic()]
        .iter()
        .map(|s| generate(s).unwrap())
        .collect();
    let mut paradoxes = 0;
    for i in 0..RANDOM_SCENARIOS {
        let scn = random_interpolant(&mut rng, tol, &small);
        let logic = is_paradox_logic(&scn, tol).unwrap();
        let brute = is_paradox_bruteforce(&scn, tol, MAX_BITS).unwrap().0;
        paradoxes += brute as usize;
        if logic != brute {
            disagreements.push(format!("random #{i}"));
        }
    }
    Verdict::check(
        disagreements.is_empty(),
        format!(
            "{} generated + {RANDOM_SCENARIOS} random scenarios ({paradoxes} random paradoxes), disagreements: {disagreements:?}",
            generated.len()
        ),
    )
}

/// The eigen-angle `θ ∈ [0, 2π)` with `β(λ, θ) ≡ target`; β is strictly
/// decreasing, so bisection on its unwrapped drop from `θ = 0` finds it.
fn invert_beta(lambda: f64, target: f64) -> f64 {
    let base = beta_radians(lambda, 0.0);
    let drop = |th: f64| (base - beta_radians(lambda, th)).rem_euclid(TAU);
    let want = (base - target).rem_euclid(TAU);
    let (mut lo, mut hi) = (0.0, TAU);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if drop(mid) < want {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn criterion_7(tol: &Tolerances) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut disagreements, mut in_band, mut zeros) = (0usize, 0usize, 0usize);
    for i in 0..AMPLITUDE_SAMPLES {
        let (state, context, outcomes) = match i % 3 {
            // Exact grid values: many exactly impossible events.
            0 => {
                let l = [0, 1, 2].map(|_| {
                    if rng.gen_bool(0.5) {
                        Angle::zero(AngleRange::ModPi)
                    } else {
                        pf(rng.gen_range(1..8), 16, AngleRange::ModPi)
                    }
                });
                let state = BalancedState::new(l, pf(rng.gen_range(0..8), 4, AngleRange::Mod2Pi)).unwrap();
                let ctx = [0, 1, 2].map(|_| pf(rng.gen_range(0..8), 8, AngleRange::ModPi));
                (state, ctx, [0, 1, 2].map(|_| rng.gen_range(0..2u8)))
            }
            // Planted zero: the third eigen-angle solves Σβ ≡ π − Φ.
            1 => {
                let l: [f64; 3] = [0, 1, 2].map(|_| rng.gen_range(0.0..FRAC_PI_2));
                let phi = rng.gen_range(0.0..TAU);
                let (a, b) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
                let rest = beta_radians(l[0], a) + beta_radians(l[1], b);
                let c = invert_beta(l[2], PI - phi - rest);
                let state = BalancedState::new(
                    l.map(|x| Angle::from_radians(x, AngleRange::ModPi)),
                    Angle::from_radians(phi, AngleRange::Mod2Pi),
                )
                .unwrap();
                let eig = [a, b, c];
                let ctx = eig.map(|x| Angle::from_radians(x.rem_euclid(PI), AngleRange::ModPi));
                let outs = eig.map(|x| (x.rem_euclid(TAU) >= PI) as u8);
                (state, ctx, outs)
            }
            _ => {
                let l = [0, 1, 2].map(|_| Angle::from_radians(rng.gen_range(0.0..FRAC_PI_2), AngleRange::ModPi));
                let state = BalancedState::new(l, Angle::from_radians(rng.gen_range(0.0..TAU), AngleRange::Mod2Pi)).unwrap();
                let ctx = [0, 1, 2].map(|_| Angle::from_radians(rng.gen_range(0.0..PI), AngleRange::ModPi));
                (state, ctx, [0, 1, 2].map(|_| rng.gen_range(0..2u8)))
            }
        };
        let event = Event::new(context, outcomes);
        let amp = amplitude(&state, &event).norm();
        let imp = is_impossible(&state, &event, tol);
        zeros += (amp < ZERO_AMPLITUDE) as usize;
        if amp > AMPLITUDE_BAND.0 && amp < AMPLITUDE_BAND.1 {
            in_band += 1;
            continue;
        }
        if imp != (amp < ZERO_AMPLITUDE) {
            disagreements += 1;
        }
    }
    Verdict::check(
        disagreements == 0,
        format!(
            "{AMPLITUDE_SAMPLES} pairs, {zeros} zero amplitudes, {in_band} inside the tolerance band, {disagreements} disagreements"
        ),
    )
}

/// Generated instances with random perturbations, so that maximally
/// impossible and N-regular scenarios are both common and not universal.
fn perturbed(rng: &mut ChaCha8Rng, pool: &[Generated], tol: &Tolerances) -> QuantumScenario {
    let g = &pool[rng.gen_range(0..pool.len())];
    let n = g.spec.n;
    let m = &g.scenario.measurements;
    let mut sets = m.sets().clone();
    let mut lambda = *g.scenario.state.lambda(2);
    match rng.gen_range(0..5) {
        0 => {}
        1 => {
            let shift = pf(rng.gen_range(1..2 * n), 2 * n, AngleRange::ModPi);
            sets[1] = sets[1].iter().map(|a| (*a + shift).in_range(AngleRange::ModPi)).collect();
        }
        2 => {
            let l = rng.gen_range(0..sets[2].len());
            let fresh = pf(rng.gen_range(0..4 * n), 4 * n, AngleRange::ModPi);
            if !sets[2].iter().any(|c| c.approx_eq(&fresh, tol.angle)) {
                sets[2][l] = fresh;
            }
        }
        3 => {
            if sets[0].len() > 1 {
                sets[0].remove(rng.gen_range(0..sets[0].len()));
            }
        }
        _ => lambda = pf(rng.gen_range(0..n), 2 * n, AngleRange::ModPi),
    }
    let [m1, m2, m3] = sets;
    QuantumScenario::new(
        BalancedState::interpolant(lambda).unwrap(),
        MeasurementScenario::new(m1, m2, m3, tol).unwrap(),
    )
}

/// A balanced state and a context that usually carries impossible events:
/// the last eigen-angle is solved so that `Σβ ≡ π − Φ`, and zero λ or
/// measurement values are common so several events can coincide.
fn planted_context(rng: &mut ChaCha8Rng) -> (BalancedState, [Angle; 3]) {
    let l: [f64; 3] = [0, 1, 2].map(|_| if rng.gen_bool(0.4) { 0.0 } else { rng.gen_range(0.0..FRAC_PI_2) });
    let phi = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..TAU) };
    let pick = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..TAU) };
    let (a, b) = (pick(rng), pick(rng));
    let c = invert_beta(l[2], PI - phi - beta_radians(l[0], a) - beta_radians(l[1], b));
    let state = BalancedState::new(
        l.map(|x| Angle::from_radians(x, AngleRange::ModPi)),
        Angle::from_radians(phi, AngleRange::Mod2Pi),
    )
    .unwrap();
    (state, [a, b, c].map(|x| Angle::from_radians(x.rem_euclid(PI), AngleRange::ModPi)))
}

/// `x / (π/N)` if it is an integer within tolerance.
fn multiple_of(x: f64, n: usize) -> Option<i64> {
    let u = x * n as f64 / PI;
    let r = u.round();
    ((u - r).abs() < 1e-7).then_some(r as i64)
}

fn criterion_8(tol: &Tolerances) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |name: &str, what: String| {
        if failures.len() < 20 {
            failures.push(format!("{name}: {what}"));
        }
    };

    for _ in 0..PROPERTY_SAMPLES {
        let lam = rng.gen_range(0.0..FRAC_PI_2);
        let (mut p1, mut p2) = (rng.gen_range(1e-6..TAU - 1e-6), rng.gen_range(1e-6..TAU - 1e-6));
        if p1 > p2 {
            std::mem::swap(&mut p1, &mut p2);
        }
        if p2 - p1 > 1e-6 {
            let base = beta_radians(lam, 0.0);
            let drop = |p: f64| (base - beta_radians(lam, p)).rem_euclid(TAU);
            if !(drop(p1) < drop(p2)) {
                fail("beta monotone", format!("λ={lam}, φ={p1},{p2}"));
            }
        }
    }

    for _ in 0..PROPERTY_SAMPLES {
        let lam = rng.gen_range(0.0..FRAC_PI_2);
        let phi = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.0..PI) };
        let d = delta_radians(lam, phi).rem_euclid(TAU);
        if !(d > 0.0 && d <= PI + 1e-12) {
            fail("delta range", format!("λ={lam}, φ={phi}, δ={d}"));
        }
    }

    let (mut nonempty, mut multiple) = (0, 0);
    for _ in 0..PROPERTY_SAMPLES {
        let (state, ctx) = planted_context(&mut rng);
        let mask = impossible_mask(&state, &ctx, tol);
        nonempty += (mask != 0) as usize;
        multiple += (mask.count_ones() > 1) as usize;
        if mask.count_ones() > 4 {
            fail("at most four", format!("{ctx:?}"));
        }
        for x in 0..8u8 {
            for y in (x + 1)..8 {
                if mask >> x & 1 == 1 && mask >> y & 1 == 1 && (x ^ y).count_ones() < 2 {
                    fail("Hamming distance", format!("{ctx:?}"));
                }
            }
        }
    }

    let pool: Vec<Generated> = enumerate_specs(6).iter().map(|s| generate(s).unwrap()).collect();
    let (mut max_imp, mut regular) = (0, 0);
    for _ in 0..PROPERTY_SAMPLES {
        let scn = perturbed(&mut rng, &pool, tol);
        let r = classify(&scn, tol, MAX_BITS).unwrap();
        let [n1, n2, n3] = scn.measurements.sizes();
        if r.is_maximally_impossible != Some(true) {
            continue;
        }
        max_imp += 1;
        if n1 != n2 {
            fail("|M1| = |M2|", format!("{n1} vs {n2}"));
            continue;
        }
        if !r.k_function.as_ref().is_some_and(|k| k.is_bijective()) {
            fail("K bijective", format!("{:?}", r.k_function_error));
        }
        let lam = scn.state.lambda(2).radians();
        let cs: Vec<f64> = scn.measurements.set(2).iter().map(Angle::radians).collect();
        let deltas: Vec<Option<i64>> = cs.iter().map(|&c| multiple_of(delta_radians(lam, c), n1)).collect();
        let gaps: Vec<Option<i64>> = cs
            .iter()
            .map(|&c| multiple_of((beta_radians(lam, c) - beta_radians(lam, cs[0])).rem_euclid(TAU), n1))
            .collect();
        if deltas.iter().chain(&gaps).any(Option::is_none) {
            fail("π/N multiples", format!("λ={lam}, M3={cs:?}, N={n1}"));
            continue;
        }
        if r.is_n_regular == Some(true) && n3 == 2 {
            regular += 1;
            let even = deltas.iter().all(|d| d.unwrap() % 2 == 0);
            let odd = gaps[1].unwrap() % 2 != 0;
            if r.is_paradox != (even && odd) {
                fail("even/odd", format!("λ={lam}, M3={cs:?}, N={n1}, paradox {}", r.is_paradox));
            }
        }
    }

    for _ in 0..PROPERTY_SAMPLES {
        let n = rng.gen_range(3..=16);
        let s = rng.gen_range(1..n);
        let t = rng.gen_range(0.02..0.98) * s as f64;
        match (solve_lambda_c(n, s, t), solve_lambda_c(n, s, s as f64 - t)) {
            (Ok(a), Ok(b)) => {
                if (a.lambda.radians() - b.lambda.radians()).abs() > 1e-9
                    || (a.c.radians() + b.c.radians() - PI).abs() > 1e-9
                {
                    fail("λ/C symmetry", format!("N={n}, s={s}, t={t}"));
                }
            }
            (a, b) => fail("λ/C symmetry", format!("N={n}, s={s}, t={t}: {:?} {:?}", a.err(), b.err())),
        }
    }

    for _ in 0..PROPERTY_SAMPLES {
        let n = rng.gen_range(3..=16);
        let s = rng.gen_range(1..n);
        let lo = lambda_min(n, s);
        let (mut a, mut b) = (rng.gen_range(lo..FRAC_PI_2), rng.gen_range(lo..FRAC_PI_2));
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let (ta, tb) = (t0(n, s, a), t0(n, s, b));
        let in_image = |x: f64| x > 0.0 && x <= s as f64 / 2.0 + 1e-9;
        if b - a > 1e-9 && !(ta > tb) || !in_image(ta) || !in_image(tb) {
            fail("t0 monotone", format!("N={n}, s={s}, λ={a},{b}: {ta},{tb}"));
        }
    }

    let vacuous = nonempty < PROPERTY_SAMPLES / 2
        || multiple < PROPERTY_SAMPLES / 10
        || max_imp < PROPERTY_SAMPLES / 10 || regular < PROPERTY_SAMPLES / 20;
    Verdict::check(
        failures.is_empty() && !vacuous,
        format!(
            "8 properties x {PROPERTY_SAMPLES} samples; {nonempty} contexts with impossible events ({multiple} with several), \
             {max_imp} maximally impossible, {regular} N-regular; failures: {failures:?}"
        ),
    )
}

fn criterion_9(tol: &Tolerances) -> Verdict {
    let specs = enumerate_specs(8);
    let classes = distinct_triples(&specs, tol).unwrap();
    let merged: BTreeSet<Vec<String>> = classes
        .iter()
        .filter(|c| c.members.len() > 1)
        .map(|c| c.members.iter().map(name).collect())
        .collect();
    // X on every qubit reflects each measurement set; it maps B(N,s,t) onto B(N,s,s-t).
    let mirrored: BTreeSet<Vec<String>> = specs
        .iter()
        .filter(|s| s.family == Family::B && 2 * s.t.unwrap() < s.s.unwrap())
        .map(|s| vec![name(s), name(&FamilySpec::b(s.n, s.s.unwrap(), s.s.unwrap() - s.t.unwrap()))])
        .collect();

    let scenarios: Vec<QuantumScenario> = specs.iter().map(|s| generate(s).unwrap().scenario).collect();
    let mut reflexive = true;
    let mut symmetric = true;
    let mut pairs = 0;
    for (i, a) in scenarios.iter().enumerate() {
        reflexive &= are_equivalent(a, a, tol).unwrap().is_some();
        for b in &scenarios[i + 1..] {
            pairs += 1;
            symmetric &= are_equivalent(a, b, tol).unwrap().is_some() == are_equivalent(b, a, tol).unwrap().is_some();
        }
    }
    let relation = format!("reflexive {reflexive}, symmetric {symmetric} over {pairs} pairs");
    if merged.is_empty() {
        return Verdict::check(
            reflexive && symmetric,
            format!("{} instances in {} classes; {relation}", specs.len(), classes.len()),
        );
    }
    Verdict {
        pass: false,
        predicted: merged == mirrored && reflexive && symmetric,
        detail: format!(
            "{} instances fall into {} classes; merged pairs {:?} {} the X-reflection prediction B(N,s,t) = B(N,s,s-t); {relation}",
            specs.len(),
            classes.len(),
            merged,
            if merged == mirrored { "equal" } else { "differ from" }
        ),
    }
}

fn criterion_10(instances: &[&Instance]) -> Verdict {
    let broken: Vec<String> = instances
        .iter()
        .filter(|i| i.report.is_minimal != Some(true))
        .map(|i| format!("{} (deleting {:?})", name(&i.spec), i.report.minimality_breaker))
        .collect();
    Verdict::check(
        broken.is_empty(),
        format!("{} family instances, not minimal: {broken:?}", instances.len()),
    )
}

fn criterion_11(tol: &Tolerances) -> Verdict {
    let findings = scan_for_nonintepolant_paradoxes(&ScanConfig::default(), tol).unwrap();
    let mut scenarios = 0;
    let mut points = 0;
    let mut controls = Vec::new();
    for f in &findings {
        match f {
            ScanFinding::Point(p) => {
                points += 1;
                scenarios += p.scenarios_checked;
            }
            ScanFinding::Control(c) => controls.push((name(&c.spec), c.is_paradox == c.expected)),
            ScanFinding::Paradox(_) => {}
        }
    }
    let found = nonintepolant_paradox_count(&findings);
    let controls_ok = !controls.is_empty() && controls.iter().all(|c| c.1);
    Verdict::check(
        found == 0 && controls_ok,
        format!(
            "{points} non-interpolant points, {scenarios} scenarios, {found} with paradoxes; controls {:?}",
            controls.iter().map(|c| &c.0).collect::<Vec<_>>()
        ),
    )
}

fn main() -> ExitCode {
    let tol = Tolerances::default();
    let mut outcomes: Vec<(usize, Verdict)> = Vec::new();
    let mut run = |id: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let mut v = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                v.pass = false;
                v.predicted = false;
                v.detail += &format!("; runtime {:.1}s exceeds {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64());
            }
        }
        report(id, name, &v, elapsed);
        outcomes.push((id, v));
    };

    let mut ghz = None;
    run(1, "GHZ reproduction", Some(Duration::from_secs(1)), &mut || {
        let (v, i) = criterion_1(&tol);
        ghz = Some(i);
        v
    });
    let mut family_b = Vec::new();
    run(2, "family (b) sweep", Some(Duration::from_secs(300)), &mut || {
        let (v, i) = criterion_2(&tol);
        family_b = i;
        v
    });
    let mut family_c = Vec::new();
    run(3, "family (c) sweep", None, &mut || {
        let (v, i) = criterion_3(&tol);
        family_c = i;
        v
    });
    let mut case_d = None;
    run(4, "family (d) reference values", None, &mut || {
        let (v, i) = criterion_4(&tol);
        case_d = Some(i);
        v
    });
    let mut exotic = None;
    run(5, "exotic example", None, &mut || {
        let (v, i) = criterion_5(&tol);
        exotic = Some(i);
        v
    });
    let generated: Vec<&Instance> = ghz
        .iter()
        .chain(&family_b)
        .chain(&family_c)
        .chain(case_d.iter())
        .chain(exotic.iter())
        .collect();
    run(6, "oracle equivalence", None, &mut || criterion_6(&tol, &generated));
    run(7, "amplitude cross-check", None, &mut || criterion_7(&tol));
    run(8, "structural properties", None, &mut || criterion_8(&tol));
    run(9, "inequivalence", None, &mut || criterion_9(&tol));
    run(10, "minimality", None, &mut || criterion_10(&generated));
    run(11, "non-interpolant scan", Some(Duration::from_secs(600)), &mut || criterion_11(&tol));

    let passed = outcomes.iter().filter(|(_, v)| v.pass).count();
    let unexpected: Vec<usize> = outcomes.iter().filter(|(_, v)| !v.pass && !v.predicted).map(|(id, _)| *id).collect();
    let summary = format!(
        "acceptance: {passed}/{} PASS, {} FAIL as documented deviations, unexpected failures {unexpected:?}\n",
        outcomes.len(),
        outcomes.len() - passed - unexpected.len()
    );
    let _ = std::io::stdout().write_all(summary.as_bytes());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
