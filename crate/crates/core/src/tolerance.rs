use serde::{Deserialize, Serialize};

pub const EPS_ANGLE: f64 = 1e-9;
pub const EPS_R: f64 = 1e-7;
pub const EPS_AMP: f64 = 1e-9;
pub const EPS_SOLVE: f64 = 1e-10;
pub const SNAP_MAX_DEN: i64 = 64;

/// Numeric thresholds shared by every decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Angle equality, in radians.
    pub angle: f64,
    /// Membership of an `r` value in ℤ₂, in units of π.
    pub r: f64,
    /// Modulus below which an amplitude counts as zero.
    pub amp: f64,
    /// Maximum residual accepted from the parameter solvers.
    pub solve: f64,
    /// Largest denominator considered when snapping to `p/q·π`.
    pub snap_max_den: i64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            angle: EPS_ANGLE,
            r: EPS_R,
            amp: EPS_AMP,
            solve: EPS_SOLVE,
            snap_max_den: SNAP_MAX_DEN,
        }
    }
}

impl Tolerances {
    /// Default tolerances with the angle threshold replaced.
    pub fn with_angle(angle: f64) -> Self {
        Tolerances {
            angle,
            ..Self::default()
        }
    }
}
