//! JSON scenario files.
//!
//! ```json
//! { "state": {"lambdas": [0, 0, {"pi_frac": [3, 8]}], "phi": 0},
//!   "measurements": {"m1": [0, {"pi_frac": [1, 2]}], "m2": [...], "m3": [...]} }
//! ```
//!
//! Each angle is either a number of radians or `{"pi_frac": [num, den]}`.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{set_name, BalancedState, MeasurementScenario, ModelError, QuantumScenario};
use crate::angle::{Angle, AngleRange};
use crate::tolerance::Tolerances;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioIn {
    state: StateIn,
    measurements: MeasurementsIn,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateIn {
    lambdas: [Value; 3],
    phi: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasurementsIn {
    m1: Vec<Value>,
    m2: Vec<Value>,
    m3: Vec<Value>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum AngleOut {
    Radians(f64),
    Frac { pi_frac: [i64; 2] },
}

impl From<&Angle> for AngleOut {
    fn from(a: &Angle) -> Self {
        match a.pi_fraction() {
            Some(f) => AngleOut::Frac {
                pi_frac: [*f.numer(), *f.denom()],
            },
            None => AngleOut::Radians(a.radians()),
        }
    }
}

#[derive(Serialize)]
struct ScenarioOut {
    state: StateOut,
    measurements: MeasurementsOut,
}

#[derive(Serialize)]
struct StateOut {
    lambdas: [AngleOut; 3],
    phi: AngleOut,
}

#[derive(Serialize)]
struct MeasurementsOut {
    m1: Vec<AngleOut>,
    m2: Vec<AngleOut>,
    m3: Vec<AngleOut>,
}

/// Raw value of an angle field, before range reduction.
enum RawAngle {
    Radians(f64),
    Frac(i64, i64),
}

fn raw_angle(field: &str, v: &Value) -> Result<RawAngle, ModelError> {
    match v {
        Value::Number(n) => {
            let x = n
                .as_f64()
                .ok_or_else(|| ModelError::invalid(field, "angle is not a finite number"))?;
            Ok(RawAngle::Radians(x))
        }
        Value::Object(map) => {
            if let Some(key) = map.keys().find(|k| k.as_str() != "pi_frac") {
                return Err(ModelError::invalid(field, format!("unknown field `{key}`")));
            }
            let frac = map
                .get("pi_frac")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| ModelError::invalid(field, "pi_frac must be [num, den]"))?;
            let num = frac[0]
                .as_i64()
                .ok_or_else(|| ModelError::invalid(field, "pi_frac numerator must be an integer"))?;
            let den = frac[1]
                .as_i64()
                .ok_or_else(|| ModelError::invalid(field, "pi_frac denominator must be an integer"))?;
            if den == 0 {
                return Err(ModelError::invalid(field, "pi_frac denominator is 0"));
            }
            Ok(RawAngle::Frac(num, den))
        }
        _ => Err(ModelError::invalid(
            field,
            "angle must be a number or {\"pi_frac\": [num, den]}",
        )),
    }
}

fn to_angle(raw: &RawAngle, range: AngleRange) -> Angle {
    match *raw {
        RawAngle::Radians(x) => Angle::from_radians(x, range),
        RawAngle::Frac(n, d) => Angle::exact(num_rational::Ratio::new(n, d), range),
    }
}

fn parse_lambda(field: &str, v: &Value) -> Result<Angle, ModelError> {
    let raw = raw_angle(field, v)?;
    let in_range = match raw {
        RawAngle::Radians(x) => (0.0..FRAC_PI_2).contains(&x),
        RawAngle::Frac(n, d) => {
            let f = num_rational::Ratio::new(n, d);
            f >= num_rational::Ratio::from_integer(0) && f < num_rational::Ratio::new(1, 2)
        }
    };
    if !in_range {
        return Err(ModelError::invalid(field, "lambda out of range [0, π/2)"));
    }
    Ok(to_angle(&raw, AngleRange::ModPi))
}

pub fn parse_scenario(text: &str, tol: &Tolerances) -> Result<QuantumScenario, ModelError> {
    let input: ScenarioIn = serde_json::from_str(text)?;
    let mut lambdas = [Angle::zero(AngleRange::ModPi); 3];
    for (i, v) in input.state.lambdas.iter().enumerate() {
        lambdas[i] = parse_lambda(&format!("state.lambdas[{i}]"), v)?;
    }
    let phi = to_angle(&raw_angle("state.phi", &input.state.phi)?, AngleRange::Mod2Pi);
    let state = BalancedState::new(lambdas, phi)?;

    let raw_sets = [
        &input.measurements.m1,
        &input.measurements.m2,
        &input.measurements.m3,
    ];
    let mut sets: [Vec<Angle>; 3] = Default::default();
    for (q, raw) in raw_sets.iter().enumerate() {
        for (i, v) in raw.iter().enumerate() {
            let field = format!("measurements.{}[{i}]", set_name(q));
            sets[q].push(to_angle(&raw_angle(&field, v)?, AngleRange::ModPi));
        }
    }
    let [m1, m2, m3] = sets;
    let measurements = MeasurementScenario::new(m1, m2, m3, tol)?;
    Ok(QuantumScenario::new(state, measurements))
}

pub fn load_scenario(path: &Path, tol: &Tolerances) -> Result<QuantumScenario, ModelError> {
    let text = fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text, tol)
}

pub fn scenario_to_json(scenario: &QuantumScenario) -> String {
    let st = &scenario.state;
    let m = &scenario.measurements;
    let set = |q: usize| m.set(q).iter().map(AngleOut::from).collect::<Vec<_>>();
    let out = ScenarioOut {
        state: StateOut {
            lambdas: [
                st.lambda(0).into(),
                st.lambda(1).into(),
                st.lambda(2).into(),
            ],
            phi: st.phase().into(),
        },
        measurements: MeasurementsOut {
            m1: set(0),
            m2: set(1),
            m3: set(2),
        },
    };
    serde_json::to_string_pretty(&out).expect("scenario serialization cannot fail")
}

pub fn save_scenario(scenario: &QuantumScenario, path: &Path) -> Result<(), ModelError> {
    fs::write(path, scenario_to_json(scenario) + "\n").map_err(|source| ModelError::Io {
        path: path.to_path_buf(),
        source,
    })
}
