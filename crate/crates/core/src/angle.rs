//! Angles that are either exact rational multiples of π or plain radians.
//!
//! Every measurement angle, β value and δ value in the crate is an [`Angle`].
//! An exact angle stores the fraction `p/q` of `(p/q)·π`; a numeric angle
//! stores radians. Both are kept reduced into the half-open range named by
//! their [`AngleRange`].

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::tolerance::Tolerances;

/// Rational multiple of π.
pub type PiFraction = Ratio<i64>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("pi fraction has zero denominator")]
    ZeroDenominator,
}

/// The period an angle is reduced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleRange {
    /// Canonical value in `[0, π)`.
    ModPi,
    /// Canonical value in `[0, 2π)`.
    Mod2Pi,
}

impl AngleRange {
    /// Period as a multiple of π.
    pub fn period_in_pi(self) -> i64 {
        match self {
            AngleRange::ModPi => 1,
            AngleRange::Mod2Pi => 2,
        }
    }

    pub fn period(self) -> f64 {
        self.period_in_pi() as f64 * PI
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Repr {
    Exact(PiFraction),
    Numeric(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    repr: Repr,
    range: AngleRange,
}

fn reduce_fraction(f: PiFraction, range: AngleRange) -> PiFraction {
    let period = range.period_in_pi();
    let den = *f.denom();
    let num = f.numer().mod_floor(&(period * den));
    Ratio::new(num, den)
}

fn reduce_radians(x: f64, range: AngleRange) -> f64 {
    let period = range.period();
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

impl Angle {
    pub fn zero(range: AngleRange) -> Self {
        Self::exact(Ratio::from_integer(0), range)
    }

    pub fn pi(range: AngleRange) -> Self {
        Self::exact(Ratio::from_integer(1), range)
    }

    /// `(num/den)·π`, reduced into `range`.
    pub fn from_pi_frac(num: i64, den: i64, range: AngleRange) -> Result<Self, AngleError> {
        if den == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(Self::exact(Ratio::new(num, den), range))
    }

    pub fn exact(fraction: PiFraction, range: AngleRange) -> Self {
        Angle {
            repr: Repr::Exact(reduce_fraction(fraction, range)),
            range,
        }
    }

    /// Numeric angle reduced into `range`. No snapping to rational multiples of π.
    pub fn from_radians(x: f64, range: AngleRange) -> Self {
        debug_assert!(x.is_finite(), "angle must be finite, got {x}");
        Angle {
            repr: Repr::Numeric(reduce_radians(x, range)),
            range,
        }
    }

    pub fn range(&self) -> AngleRange {
        self.range
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Exact(_))
    }

    pub fn pi_fraction(&self) -> Option<PiFraction> {
        match self.repr {
            Repr::Exact(f) => Some(f),
            Repr::Numeric(_) => None,
        }
    }

    /// Canonical value in radians, inside `[0, period)`.
    pub fn radians(&self) -> f64 {
        match self.repr {
            Repr::Exact(f) => {
                let v = *f.numer() as f64 / *f.denom() as f64 * PI;
                // (p/q)·π may round up to the period itself.
                if v >= self.range.period() {
                    0.0
                } else {
                    v
                }
            }
            Repr::Numeric(x) => x,
        }
    }

    /// Representative in `(-period/2, period/2]`.
    pub fn signed_radians(&self) -> f64 {
        let v = self.radians();
        let period = self.range.period();
        if v > period / 2.0 {
            v - period
        } else {
            v
        }
    }

    /// The same angle reduced into another range.
    pub fn in_range(&self, range: AngleRange) -> Angle {
        match self.repr {
            Repr::Exact(f) => Angle::exact(f, range),
            Repr::Numeric(x) => Angle::from_radians(x, range),
        }
    }

    pub fn plus_pi(&self) -> Angle {
        *self + Angle::pi(self.range)
    }

    /// `k`-fold multiple of the angle.
    pub fn times(&self, k: i64) -> Angle {
        match self.repr {
            Repr::Exact(f) => Angle::exact(f * k, self.range),
            Repr::Numeric(x) => Angle::from_radians(x * k as f64, self.range),
        }
    }

    /// Shortest distance on the circle of this angle's period.
    pub fn circular_distance(&self, other: &Angle) -> f64 {
        let period = self.range.period();
        let d = (self.radians() - other.radians()).rem_euclid(period);
        d.min(period - d).abs()
    }

    /// Equality mod the period of `self`: exact when both sides are exact,
    /// otherwise within `eps` radians.
    pub fn approx_eq(&self, other: &Angle, eps: f64) -> bool {
        let other = other.in_range(self.range);
        match (self.repr, other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => a == b,
            _ => self.circular_distance(&other) < eps,
        }
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.approx_eq(&Angle::zero(self.range), eps)
    }

    /// Total order on canonical values; used to keep measurement sets sorted.
    pub fn cmp_value(&self, other: &Angle) -> Ordering {
        self.radians().total_cmp(&other.radians())
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        match (self.repr, rhs.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => Angle::exact(a + b, self.range),
            _ => Angle::from_radians(self.radians() + rhs.radians(), self.range),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;

    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        match self.repr {
            Repr::Exact(f) => Angle::exact(-f, self.range),
            Repr::Numeric(x) => Angle::from_radians(-x, self.range),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::Exact(r) => {
                let (n, d) = (*r.numer(), *r.denom());
                match (n, d) {
                    (0, _) => write!(f, "0"),
                    (1, 1) => write!(f, "π"),
                    (n, 1) => write!(f, "{n}π"),
                    (1, d) => write!(f, "π/{d}"),
                    (n, d) => write!(f, "{n}π/{d}"),
                }
            }
            Repr::Numeric(x) => write!(f, "{x:.12}"),
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.repr {
            Repr::Exact(r) => {
                let mut st = serializer.serialize_struct("Angle", 2)?;
                st.serialize_field("radians", &self.radians())?;
                st.serialize_field("pi_frac", &[*r.numer(), *r.denom()])?;
                st.end()
            }
            Repr::Numeric(x) => {
                let mut st = serializer.serialize_struct("Angle", 1)?;
                st.serialize_field("radians", &x)?;
                st.end()
            }
        }
    }
}

/// Reduces `x` into `range` and snaps it to an exact fraction of π when it
/// lies within the default angle tolerance of `p/q·π` with `q ≤ 64`.
pub fn canonical_angle(x: f64, range: AngleRange) -> Angle {
    let tol = Tolerances::default();
    canonical_angle_with(x, range, tol.angle, tol.snap_max_den)
}

pub fn canonical_angle_with(x: f64, range: AngleRange, eps: f64, max_den: i64) -> Angle {
    let reduced = reduce_radians(x, range);
    let ratio = reduced / PI;
    for q in 1..=max_den.max(1) {
        let p = (ratio * q as f64).round();
        let snapped = p / q as f64 * PI;
        if (reduced - snapped).abs() < eps {
            return Angle::exact(Ratio::new(p as i64, q), range);
        }
    }
    Angle::from_radians(reduced, range)
}
