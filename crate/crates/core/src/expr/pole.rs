use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoleSource {
    Catalog,
    User,
}

/// A declared pole of a meromorphic expression. Poles are declared, then
/// verified with [`check_pole`]; they are never searched for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleDecl {
    pub location: Complex64,
    pub order: u32,
    pub declared_by: PoleSource,
}

impl PoleDecl {
    pub fn new(location: Complex64, order: u32, declared_by: PoleSource) -> Self {
        assert!(order >= 1, "pole order must be at least 1");
        PoleDecl { location, order, declared_by }
    }
}

const TEST_RADII: [f64; 2] = [1e-3, 1e-4];
const RING_POINTS: usize = 16;
const RATIO_BAND: f64 = 10.0;

/// True when `|expr(ζ)|·|ζ − location|^order` stays finite, nonzero and
/// strictly within a factor-10 band on two rings around the pole.
pub fn check_pole(expr: &Expr, decl: &PoleDecl) -> bool {
    if !(decl.location.re.is_finite() && decl.location.im.is_finite()) || decl.order == 0 {
        return false;
    }
    let mut lo = f64::INFINITY;
    let mut hi = 0.0_f64;
    for radius in TEST_RADII {
        for k in 0..RING_POINTS {
            // offset by half a step so rings never sit on the real axis
            let angle = std::f64::consts::TAU * (k as f64 + 0.5) / RING_POINTS as f64;
            let z = decl.location + Complex64::from_polar(radius, angle);
            let Ok(value) = expr.eval(z) else {
                return false;
            };
            let scaled = value.norm() * radius.powi(decl.order as i32);
            if !(scaled.is_finite() && scaled > 0.0) {
                return false;
            }
            lo = lo.min(scaled);
            hi = hi.max(scaled);
        }
    }
    // A pole declared one order off gives a ratio of exactly 10 up to rounding,
    // so the band is open with a small guard.
    hi / lo < RATIO_BAND * (1.0 - 1e-6)
}
