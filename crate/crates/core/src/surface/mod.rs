//! Weierstrass–Enneper immersion of a maximal surface from a single datum `M(ζ)`:
//!
//! ```text
//! x = x₀ + Re ∫ M(1+ω²) dω,   y = y₀ + Re ∫ iM(1−ω²) dω,   φ = φ₀ ± Re ∫ 2Mω dω
//! ```
//!
//! Coordinates are `(x, y, φ)` in 𝕃³ with the timelike coordinate last.

mod forms;

use num_complex::Complex64;

use crate::contour::{Integrator, PathSpec};
use crate::error::{Error, Result};
use crate::expr::{check_pole, Expr, PoleDecl, SINGULARITY_EPS};
use crate::surf_io::DomainSpec;

pub use forms::{effective_step, fundamental_forms, mean_curvature, FundamentalForms, StencilEvaluator};

/// Required distance between a domain and the unit circle.
pub const UNIT_CIRCLE_MARGIN: f64 = 1e-3;
/// Default finite-difference step in ζ.
pub const DEFAULT_STEP: f64 = 1e-4;
/// `|ζ|` closer than this to 1 makes the Gauss map lightlike.
pub const LIGHTLIKE_EPS: f64 = 1e-9;

pub type Vec3 = [f64; 3];

/// Lorentzian inner product with signature (+, +, −).
pub fn lorentz_dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

/// Sign of the φ integrand: `+2Mω` (default) or `−2Mω`, related by the
/// symmetry φ ↦ −φ of the maximal surface equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiSign {
    #[default]
    Plus,
    Minus,
}

impl PhiSign {
    pub fn factor(self) -> f64 {
        match self {
            PhiSign::Plus => 1.0,
            PhiSign::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PhiSign::Plus => "plus",
            PhiSign::Minus => "minus",
        }
    }
}

/// Integration constants of the representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub basepoint: Complex64,
    /// `(x₀, y₀, φ₀)`.
    pub offsets: Vec3,
    pub phi_sign: PhiSign,
}

impl Frame {
    pub fn new(basepoint: Complex64) -> Self {
        Frame { basepoint, offsets: [0.0; 3], phi_sign: PhiSign::Plus }
    }

    pub fn with_offsets(mut self, offsets: Vec3) -> Self {
        self.offsets = offsets;
        self
    }

    pub fn with_sign(mut self, phi_sign: PhiSign) -> Self {
        self.phi_sign = phi_sign;
        self
    }
}

#[derive(Debug, Clone)]
pub struct WeierstrassData {
    pub name: Option<String>,
    pub m: Expr,
    /// Unit rotation `e^{i·phase}` applied to `m`, kept apart so `|M|` is exact.
    pub phase: f64,
    pub poles: Vec<PoleDecl>,
    pub domain: DomainSpec,
}

impl WeierstrassData {
    /// Validates the domain against the unit circle and the declared poles.
    pub fn new(name: Option<String>, m: Expr, poles: Vec<PoleDecl>, domain: DomainSpec) -> Result<Self> {
        let data = WeierstrassData { name, m, phase: 0.0, poles, domain };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        if self.domain.unit_circle_margin() < UNIT_CIRCLE_MARGIN {
            return Err(Error::InvalidDomain(format!(
                "domain must stay {UNIT_CIRCLE_MARGIN} away from |zeta| = 1"
            )));
        }
        for pole in &self.poles {
            if self.domain.in_sector(pole.location) && !self.domain.excluded(pole.location) {
                return Err(Error::InvalidDomain(format!(
                    "pole at {} is not covered by an exclusion disk",
                    pole.location
                )));
            }
        }
        Ok(())
    }

    /// Same datum on a different domain.
    pub fn with_domain(&self, domain: DomainSpec) -> Result<Self> {
        let data = WeierstrassData { domain, ..self.clone() };
        data.validate()?;
        Ok(data)
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("custom")
    }

    pub fn pole_locations(&self) -> Vec<Complex64> {
        self.poles.iter().map(|p| p.location).collect()
    }

    pub fn rotor(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase)
    }

    /// `M` as a single expression, rotation included.
    pub fn expr(&self) -> Expr {
        if self.phase == 0.0 {
            self.m.clone()
        } else {
            Expr::constant(self.rotor()) * self.m.clone()
        }
    }

    /// Checks every declared pole numerically.
    pub fn verify_poles(&self) -> Result<()> {
        let m = self.expr();
        for pole in &self.poles {
            if !check_pole(&m, pole) {
                return Err(Error::InvalidData(format!(
                    "declared pole of order {} at {} does not match M",
                    pole.order, pole.location
                )));
            }
        }
        Ok(())
    }

    fn eval_unrotated(&self, z: Complex64) -> Result<Complex64> {
        if self.poles.iter().any(|p| (p.location - z).norm() < SINGULARITY_EPS) {
            return Err(Error::SingularEvaluation(z));
        }
        self.m.eval(z)
    }

    pub fn eval_m(&self, z: Complex64) -> Result<Complex64> {
        let m = self.eval_unrotated(z)?;
        Ok(if self.phase == 0.0 { m } else { self.rotor() * m })
    }

    /// `|M(ζ)|`, unaffected by the phase.
    pub fn modulus_m(&self, z: Complex64) -> Result<f64> {
        Ok(self.eval_unrotated(z)?.norm())
    }

    /// `(M(1+ω²), iM(1−ω²), ±2Mω)`.
    pub fn integrands(&self, w: Complex64, sign: PhiSign) -> Result<[Complex64; 3]> {
        let m = self.eval_m(w)?;
        let w2 = w * w;
        Ok([m * (1.0 + w2), Complex64::i() * m * (1.0 - w2), m * w * (2.0 * sign.factor())])
    }

    /// Largest relative Cauchy–Riemann mismatch of `M` over the probes,
    /// comparing real-step and imaginary-step central differences.
    pub fn holomorphy_defect(&self, probes: &[Complex64]) -> Result<f64> {
        let h = 1e-5;
        let mut worst = 0.0_f64;
        for &z in probes {
            let re = (self.eval_m(z + h)? - self.eval_m(z - h)?) / (2.0 * h);
            let ih = Complex64::new(0.0, h);
            let im = (self.eval_m(z + ih)? - self.eval_m(z - ih)?) / (2.0 * ih);
            worst = worst.max((re - im).norm() / (1.0 + re.norm()));
        }
        Ok(worst)
    }

    /// Centre of the domain, or the first kept sample node if the centre is excluded.
    pub fn default_basepoint(&self) -> Result<Complex64> {
        let c = self.domain.center();
        if self.domain.contains(c) {
            Ok(c)
        } else {
            Ok(self.domain.sample()?.node(0))
        }
    }

    /// `∫ (M(1+ω²), iM(1−ω²), ±2Mω) dω` along `path`.
    pub fn primitive_along(&self, integrator: &Integrator, path: &PathSpec, sign: PhiSign) -> Result<[Complex64; 3]> {
        integrator.integrate_with(|w| self.integrands(w, sign), path, &self.pole_locations())
    }
}

fn real_parts(offsets: &Vec3, p: &[Complex64; 3]) -> Vec3 {
    [offsets[0] + p[0].re, offsets[1] + p[1].re, offsets[2] + p[2].re]
}

/// Position `(x, y, φ)` at `zeta`, integrating from the frame's basepoint
/// along a path inside the domain.
pub fn immersion(data: &WeierstrassData, frame: &Frame, zeta: Complex64) -> Result<Vec3> {
    immersion_with(&Integrator::default(), data, frame, zeta)
}

pub fn immersion_with(integrator: &Integrator, data: &WeierstrassData, frame: &Frame, zeta: Complex64) -> Result<Vec3> {
    for z in [frame.basepoint, zeta] {
        if !data.domain.contains(z) {
            return Err(Error::DomainViolation(z));
        }
    }
    if zeta == frame.basepoint {
        return Ok(frame.offsets);
    }
    let path = data.domain.path_between(frame.basepoint, zeta)?;
    let p = data.primitive_along(integrator, &path, frame.phi_sign)?;
    Ok(real_parts(&frame.offsets, &p))
}

/// `λ² = (|M(ζ)|(1−|ζ|²)/2)²`, the tabulated conformal factor of the metric.
///
/// The finite-difference first fundamental form of [`immersion`] equals
/// `4λ²`; see [`metric_coefficient`].
pub fn conformal_factor(data: &WeierstrassData, zeta: Complex64) -> Result<f64> {
    let m = data.modulus_m(zeta)?;
    let s = m * (1.0 - zeta.norm_sqr()) / 2.0;
    Ok(s * s)
}

/// `E = G = (|M(ζ)|(1−|ζ|²))²`, the metric coefficient of the immersion.
pub fn metric_coefficient(data: &WeierstrassData, zeta: Complex64) -> Result<f64> {
    Ok(4.0 * conformal_factor(data, zeta)?)
}

/// Stereographic map onto the hyperboloid:
/// `σ(τ) = (−2Re τ/(|τ|²−1), −2Im τ/(|τ|²−1), (|τ|²+1)/(|τ|²−1))`.
pub fn stereographic(tau: Complex64) -> Result<Vec3> {
    let n2 = tau.norm_sqr();
    if (tau.norm() - 1.0).abs() < LIGHTLIKE_EPS {
        return Err(Error::LightlikeGaussMap(tau));
    }
    let d = n2 - 1.0;
    Ok([-2.0 * tau.re / d, -2.0 * tau.im / d, (n2 + 1.0) / d])
}

/// `σ(∞)`.
pub const STEREOGRAPHIC_INFINITY: Vec3 = [0.0, 0.0, 1.0];

/// Gauss map in terms of its stereographic coordinate ζ:
/// `N = (2Re ζ, 2Im ζ, −(1+|ζ|²)) / (1−|ζ|²)`.
pub fn gauss_map(zeta: Complex64) -> Result<Vec3> {
    let n2 = zeta.norm_sqr();
    if (zeta.norm() - 1.0).abs() < LIGHTLIKE_EPS {
        return Err(Error::LightlikeGaussMap(zeta));
    }
    let d = 1.0 - n2;
    Ok([2.0 * zeta.re / d, 2.0 * zeta.im / d, -(1.0 + n2) / d])
}

/// Unit normal of the immersed surface, with `N₃ < 0` for `|ζ| < 1`.
///
/// [`gauss_map`] is Lorentz-orthogonal to the surface built with `−2Mω`;
/// for `+2Mω` the normal is `gauss_map(−ζ)`.
pub fn surface_normal(zeta: Complex64, sign: PhiSign) -> Result<Vec3> {
    match sign {
        PhiSign::Minus => gauss_map(zeta),
        PhiSign::Plus => gauss_map(-zeta),
    }
}

/// Per-point bundle written to meshes and sample tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub zeta: Complex64,
    pub position: Vec3,
    pub normal: Vec3,
    pub conformal_factor_sq: f64,
    pub mean_curvature: f64,
}

/// Everything at one point, with the position taken as given.
pub fn sample_at(
    integrator: &Integrator,
    data: &WeierstrassData,
    frame: &Frame,
    zeta: Complex64,
    position: Vec3,
    h: f64,
) -> Result<SurfaceSample> {
    let stencil = StencilEvaluator::new(integrator, data, frame.phi_sign);
    let forms = stencil.forms_at(zeta, h)?;
    Ok(SurfaceSample {
        zeta,
        position,
        normal: surface_normal(zeta, frame.phi_sign)?,
        conformal_factor_sq: conformal_factor(data, zeta)?,
        mean_curvature: mean_curvature(&forms)?,
    })
}
