//! Contour integration of closed-form integrands in the ζ-plane.

mod field;
mod rules;

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{Expr, PoleDecl};
use crate::surface::WeierstrassData;

pub use field::{antiderivative_grid, AntiderivativeField};
pub use rules::{GaussKronrod15, GaussKronrod21, QuadratureRegistry, QuadratureRule};

/// Minimum distance a path keeps from declared singularities.
pub const PATH_CLEARANCE: f64 = 1e-6;
/// Maximum number of bisection levels.
pub const MAX_DEPTH: u32 = 20;
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PathSpec {
    Segment { from: Complex64, to: Complex64 },
    Polyline(Vec<Complex64>),
    /// `center + radius·e^{iθ}` for θ running from `start_angle` to `end_angle`.
    Arc { center: Complex64, radius: f64, start_angle: f64, end_angle: f64 },
    /// Pieces traversed in order; consecutive pieces should share endpoints.
    Composite(Vec<PathSpec>),
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    Line(Complex64, Complex64),
    Arc { center: Complex64, radius: f64, t0: f64, t1: f64 },
}

impl Piece {
    fn point(&self, t: f64) -> (Complex64, Complex64) {
        match *self {
            Piece::Line(a, b) => (a + (b - a) * t, b - a),
            Piece::Arc { center, radius, t0, t1 } => {
                let e = Complex64::from_polar(radius, t0 + t * (t1 - t0));
                (center + e, Complex64::i() * e * (t1 - t0))
            }
        }
    }

    fn length(&self) -> f64 {
        match *self {
            Piece::Line(a, b) => (b - a).norm(),
            Piece::Arc { radius, t0, t1, .. } => radius * (t1 - t0).abs(),
        }
    }

    fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            Piece::Line(a, b) => {
                let d = b - a;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - a).norm();
                }
                let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
                (a + d * t - p).norm()
            }
            Piece::Arc { center, radius, t0, t1 } => {
                let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                let q = p - center;
                let mut best = (self.point(0.0).0 - p).norm().min((self.point(1.0).0 - p).norm());
                if q.norm() > 0.0 {
                    // the nearest circle point, if its angle falls inside the arc
                    let base = q.arg();
                    let k = ((lo - base) / TAU).ceil();
                    let theta = base + k * TAU;
                    if theta <= hi {
                        best = best.min((q.norm() - radius).abs());
                    }
                } else {
                    best = best.min(radius);
                }
                best
            }
        }
    }
}

impl PathSpec {
    pub fn segment(from: Complex64, to: Complex64) -> Self {
        PathSpec::Segment { from, to }
    }

    /// Full circle starting at angle 0.
    pub fn circle(center: Complex64, radius: f64, orientation: Orientation) -> Self {
        PathSpec::Arc { center, radius, start_angle: 0.0, end_angle: orientation.sign() * TAU }
    }

    pub fn start(&self) -> Option<Complex64> {
        self.pieces().ok()?.first().map(|p| p.point(0.0).0)
    }

    pub fn end(&self) -> Option<Complex64> {
        self.pieces().ok()?.last().map(|p| p.point(1.0).0)
    }

    pub fn reversed(&self) -> Self {
        match self {
            PathSpec::Segment { from, to } => PathSpec::Segment { from: *to, to: *from },
            PathSpec::Polyline(pts) => PathSpec::Polyline(pts.iter().rev().copied().collect()),
            PathSpec::Arc { center, radius, start_angle, end_angle } => PathSpec::Arc {
                center: *center,
                radius: *radius,
                start_angle: *end_angle,
                end_angle: *start_angle,
            },
            PathSpec::Composite(parts) => {
                PathSpec::Composite(parts.iter().rev().map(PathSpec::reversed).collect())
            }
        }
    }

    /// Complex-conjugated path (mirror in the real axis).
    pub fn conjugated(&self) -> Self {
        match self {
            PathSpec::Segment { from, to } => PathSpec::Segment { from: from.conj(), to: to.conj() },
            PathSpec::Polyline(pts) => PathSpec::Polyline(pts.iter().map(|p| p.conj()).collect()),
            PathSpec::Arc { center, radius, start_angle, end_angle } => PathSpec::Arc {
                center: center.conj(),
                radius: *radius,
                start_angle: -start_angle,
                end_angle: -end_angle,
            },
            PathSpec::Composite(parts) => PathSpec::Composite(parts.iter().map(PathSpec::conjugated).collect()),
        }
    }

    fn pieces(&self) -> Result<Vec<Piece>> {
        let mut out = Vec::new();
        self.collect_pieces(&mut out)?;
        Ok(out)
    }

    fn collect_pieces(&self, out: &mut Vec<Piece>) -> Result<()> {
        match self {
            PathSpec::Segment { from, to } => out.push(Piece::Line(*from, *to)),
            PathSpec::Polyline(pts) => {
                if pts.len() < 2 {
                    return Err(Error::InvalidArgument("polyline needs at least two points".into()));
                }
                out.extend(pts.windows(2).map(|w| Piece::Line(w[0], w[1])));
            }
            PathSpec::Arc { center, radius, start_angle, end_angle } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Error::InvalidArgument(format!("arc radius {radius} must be positive")));
                }
                if (end_angle - start_angle).abs() > TAU + 1e-12 {
                    return Err(Error::InvalidArgument("arc spans more than 2π".into()));
                }
                out.push(Piece::Arc { center: *center, radius: *radius, t0: *start_angle, t1: *end_angle });
            }
            PathSpec::Composite(parts) => {
                for p in parts {
                    p.collect_pieces(out)?;
                }
            }
        }
        Ok(())
    }

    /// Smallest distance between the path and any of `points`.
    pub fn clearance(&self, points: &[Complex64]) -> Result<f64> {
        let pieces = self.pieces()?;
        Ok(points
            .iter()
            .flat_map(|p| pieces.iter().map(move |piece| piece.distance_to(*p)))
            .fold(f64::INFINITY, f64::min))
    }
}

/// Adaptive Gauss–Kronrod integration with recursive bisection.
#[derive(Debug, Clone)]
pub struct Integrator {
    rule: Arc<dyn QuadratureRule>,
    /// Absolute error target for the whole path.
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator::new(DEFAULT_TOL)
    }
}

impl Integrator {
    pub fn new(tol: f64) -> Self {
        Integrator { rule: Arc::new(GaussKronrod15), tol, max_depth: MAX_DEPTH }
    }

    pub fn with_rule(mut self, rule: Arc<dyn QuadratureRule>) -> Self {
        self.rule = rule;
        self
    }

    pub fn rule(&self) -> &dyn QuadratureRule {
        self.rule.as_ref()
    }

    pub fn integrate(&self, expr: &Expr, path: &PathSpec, singularities: &[Complex64]) -> Result<Complex64> {
        let [v] = self.integrate_with(|w| Ok([expr.eval(w)?]), path, singularities)?;
        Ok(v)
    }

    /// Integrates a vector of integrands sharing one set of nodes.
    pub fn integrate_with<const N: usize>(
        &self,
        f: impl Fn(Complex64) -> Result<[Complex64; N]>,
        path: &PathSpec,
        singularities: &[Complex64],
    ) -> Result<[Complex64; N]> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance {} must be positive", self.tol)));
        }
        let pieces = path.pieces()?;
        for s in singularities {
            for piece in &pieces {
                let d = piece.distance_to(*s);
                if d < PATH_CLEARANCE {
                    return Err(Error::PathThroughSingularity { location: *s, distance: d });
                }
            }
        }
        let total: f64 = pieces.iter().map(Piece::length).sum();
        let mut acc = [Complex64::default(); N];
        for piece in &pieces {
            let len = piece.length();
            if len == 0.0 {
                continue;
            }
            let share = self.tol * len / total;
            let mut g = |t: f64| -> Result<[Complex64; N]> {
                let (w, dw) = piece.point(t);
                let mut v = f(w).map_err(|e| match e {
                    Error::SingularEvaluation(at) => {
                        Error::PathThroughSingularity { location: at, distance: 0.0 }
                    }
                    other => other,
                })?;
                for x in v.iter_mut() {
                    *x *= dw;
                }
                Ok(v)
            };
            let part = self.adapt(&mut g, 0.0, 1.0, share, 0)?;
            for k in 0..N {
                acc[k] += part[k];
            }
        }
        Ok(acc)
    }

    fn adapt<const N: usize>(
        &self,
        f: &mut dyn FnMut(f64) -> Result<[Complex64; N]>,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
    ) -> Result<[Complex64; N]> {
        let est = rules::apply(self.rule.as_ref(), f, a, b)?;
        let floor = 50.0 * f64::EPSILON * est.abs_sum;
        if est.error <= tol.max(floor) {
            return Ok(est.kronrod);
        }
        if depth >= self.max_depth {
            return Err(Error::ToleranceNotMet { tol, estimate: est.error });
        }
        let mid = 0.5 * (a + b);
        let left = self.adapt(f, a, mid, 0.5 * tol, depth + 1)?;
        let right = self.adapt(f, mid, b, 0.5 * tol, depth + 1)?;
        let mut out = left;
        for k in 0..N {
            out[k] += right[k];
        }
        Ok(out)
    }

    /// `(1/2πi) ∮ expr` on the positively oriented circle of `radius` around the pole.
    pub fn residue(&self, expr: &Expr, pole: &PoleDecl, radius: f64) -> Result<Complex64> {
        let [r] = self.residues_with(|w| Ok([expr.eval(w)?]), pole, radius)?;
        Ok(r)
    }

    fn residues_with<const N: usize>(
        &self,
        f: impl Fn(Complex64) -> Result<[Complex64; N]>,
        pole: &PoleDecl,
        radius: f64,
    ) -> Result<[Complex64; N]> {
        let circle = PathSpec::circle(pole.location, radius, Orientation::Positive);
        let mut v = self.integrate_with(f, &circle, &[pole.location])?;
        let scale = Complex64::new(0.0, TAU);
        for x in v.iter_mut() {
            *x /= scale;
        }
        Ok(v)
    }
}

/// Integrates `expr` along `path` with the default rule.
pub fn integrate(expr: &Expr, path: &PathSpec, tol: f64) -> Result<Complex64> {
    Integrator::new(tol).integrate(expr, path, &[])
}

/// Residue of `expr` at a declared pole, to about 1e-10.
pub fn residue(expr: &Expr, pole: &PoleDecl, radius: f64) -> Result<Complex64> {
    Integrator::new(1e-13).residue(expr, pole, radius)
}

/// Periods of the three immersion integrands around one pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodReport {
    /// `2πi·Res` of `M(1+ω²)`, `iM(1−ω²)`, `2Mω`.
    pub periods: [Complex64; 3],
    /// A coordinate is single-valued when the real part of its period vanishes.
    pub single_valued: [bool; 3],
}

pub const PERIOD_EPS: f64 = 1e-9;

pub fn period_report(data: &WeierstrassData, pole: &PoleDecl) -> Result<PeriodReport> {
    let others = data
        .poles
        .iter()
        .filter(|p| p.location != pole.location)
        .map(|p| (p.location - pole.location).norm())
        .fold(f64::INFINITY, f64::min);
    let radius = 0.5 * others.min(1.0);
    let integrator = Integrator::new(1e-13);
    let res = integrator.residues_with(|w| data.integrands(w, crate::surface::PhiSign::Plus), pole, radius)?;
    let mut periods = [Complex64::default(); 3];
    let mut single_valued = [true; 3];
    for k in 0..3 {
        periods[k] = Complex64::new(0.0, TAU) * res[k];
        single_valued[k] = periods[k].re.abs() <= PERIOD_EPS;
    }
    Ok(PeriodReport { periods, single_valued })
}
