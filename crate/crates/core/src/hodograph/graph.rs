use num_complex::Complex64;

use crate::error::Result;
use crate::expr::{parse_with_vars, Expr};
use crate::fd::{derivative, Grid5};

/// Default finite-difference step for graph-side residuals (fourth-order stencils).
pub const DEFAULT_PDE_STEP: f64 = 1e-3;

const NAMES: [&str; 2] = ["x", "y"];

/// A height function `φ(x, y)`, evaluable at complex arguments.
#[derive(Debug, Clone)]
pub struct GraphFunction {
    pub name: String,
    /// Expression in `Var(0) = x`, `Var(1) = y`.
    pub expr: Expr,
    /// Whether `φ_x² + φ_y² < 1` held at every probe used to build the function.
    pub spacelike: bool,
}

impl GraphFunction {
    /// A graph with the spacelike flag unset.
    pub fn new(name: impl Into<String>, expr: Expr) -> Self {
        GraphFunction { name: name.into(), expr, spacelike: false }
    }

    pub fn parse(name: impl Into<String>, src: &str) -> Result<Self> {
        Ok(GraphFunction::new(name, parse_with_vars(src, &NAMES)?))
    }

    /// Sets the spacelike flag from the given probes.
    pub fn probed(mut self, probes: &[(f64, f64)]) -> Result<Self> {
        self.spacelike = self.probe_spacelike(probes, DEFAULT_PDE_STEP)?;
        Ok(self)
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        self.expr.eval_at(&[x, y])
    }

    /// `φ_x² + φ_y²` at a real point.
    pub fn gradient_sq(&self, x: f64, y: f64, h: f64) -> Result<f64> {
        let p = partials(|x, y| self.eval(x, y), x.into(), y.into(), h)?;
        Ok((p.fx * p.fx + p.fy * p.fy).re)
    }

    pub fn probe_spacelike(&self, probes: &[(f64, f64)], h: f64) -> Result<bool> {
        for &(x, y) in probes {
            if self.gradient_sq(x, y, h)? >= 1.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_source(&self) -> String {
        self.expr.to_string_with(&NAMES)
    }
}

/// Value and partial derivatives up to second order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub f: Complex64,
    pub fx: Complex64,
    pub fy: Complex64,
    pub fxx: Complex64,
    pub fyy: Complex64,
    pub fxy: Complex64,
}

/// Fourth-order central differences with the real step `h` in each variable.
pub fn partials(f: impl Fn(Complex64, Complex64) -> Result<Complex64>, x: Complex64, y: Complex64, h: f64) -> Result<Partials> {
    let g = Grid5::sample(h, |i, j| f(x + i as f64 * h, y + j as f64 * h))?;
    Ok(Partials { f: g.center(), fx: g.d1(), fy: g.d2(), fxx: g.d11(), fyy: g.d22(), fxy: g.d12() })
}

/// Maximal surface equation `(1−φ_x²)φ_yy + 2φ_xφ_yφ_xy + (1−φ_y²)φ_xx`.
pub fn mse_residual(phi: &GraphFunction, x: Complex64, y: Complex64, h: f64) -> Result<Complex64> {
    let p = partials(|x, y| phi.eval(x, y), x, y, h)?;
    Ok(mse(&p))
}

fn mse(p: &Partials) -> Complex64 {
    (1.0 - p.fx * p.fx) * p.fyy + 2.0 * p.fx * p.fy * p.fxy + (1.0 - p.fy * p.fy) * p.fxx
}

/// Born–Infeld equation `(1+φ_x²)φ_yy − 2φ_xφ_yφ_xy − (1−φ_y²)φ_xx`.
pub fn bie_residual(phi: &GraphFunction, x: Complex64, y: Complex64, h: f64) -> Result<Complex64> {
    let p = partials(|x, y| phi.eval(x, y), x, y, h)?;
    Ok((1.0 + p.fx * p.fx) * p.fyy - 2.0 * p.fx * p.fy * p.fxy - (1.0 - p.fy * p.fy) * p.fxx)
}

/// Euclidean minimal surface equation `(1+φ_x²)φ_yy − 2φ_xφ_yφ_xy + (1+φ_y²)φ_xx`.
pub fn euclidean_mse_residual(phi: &GraphFunction, x: Complex64, y: Complex64, h: f64) -> Result<Complex64> {
    let p = partials(|x, y| phi.eval(x, y), x, y, h)?;
    Ok((1.0 + p.fx * p.fx) * p.fyy - 2.0 * p.fx * p.fy * p.fxy + (1.0 + p.fy * p.fy) * p.fxx)
}

/// `(MSE(ψ)(x, y), BIE(φ)(ix, y))` with `ψ(x, y) = φ(ix, y)`.
pub fn wick_check(phi: &GraphFunction, x: f64, y: f64, h: f64) -> Result<(Complex64, Complex64)> {
    let i = Complex64::i();
    let psi = partials(|x, y| phi.eval(i * x, y), x.into(), y.into(), h)?;
    let rhs = bie_residual(phi, Complex64::new(0.0, x), y.into(), h)?;
    Ok((mse(&psi), rhs))
}

/// `(J_direct, J_formula)`.
///
/// `J_direct = ũ_ξ̃ ṽ_η̃ − ũ_η̃ ṽ_ξ̃` with `ũ = φ_z̄/i`, `ṽ = φ_z/i`, `∂_ξ̃ = −i∂_z̄`,
/// `∂_η̃ = −i∂_z`, differentiating the numerically computed `u`, `v` once more.
/// `J_formula = ¼(φ_xy² − φ_xxφ_yy)` from the second partials.
pub fn jacobian_identity(phi: &GraphFunction, x: f64, y: f64, h: f64) -> Result<(f64, f64)> {
    let i = Complex64::i();
    let tilde = |x: f64, y: f64| -> Result<[Complex64; 2]> {
        let fx = derivative(h, |t| phi.eval((x + t).into(), y.into()))?;
        let fy = derivative(h, |t| phi.eval(x.into(), (y + t).into()))?;
        let u = 0.5 * (fx + i * fy);
        let v = 0.5 * (fx - i * fy);
        Ok([u / i, v / i])
    };
    let dx = derivative(h, |t| tilde(x + t, y).map(C2))?.0;
    let dy = derivative(h, |t| tilde(x, y + t).map(C2))?.0;
    let d_zbar = |k: usize| 0.5 * (dx[k] + i * dy[k]);
    let d_z = |k: usize| 0.5 * (dx[k] - i * dy[k]);
    let (ut_xi, vt_xi) = (-i * d_zbar(0), -i * d_zbar(1));
    let (ut_eta, vt_eta) = (-i * d_z(0), -i * d_z(1));
    let direct = ut_xi * vt_eta - ut_eta * vt_xi;

    let p = partials(|x, y| phi.eval(x, y), x.into(), y.into(), h)?;
    let formula = 0.25 * (p.fxy * p.fxy - p.fxx * p.fyy);
    Ok((direct.re, formula.re))
}

#[derive(Clone, Copy)]
struct C2([Complex64; 2]);

impl crate::fd::Lin for C2 {
    fn zero() -> Self {
        C2([Complex64::default(); 2])
    }
    fn axpy(self, w: f64, x: Self) -> Self {
        C2([self.0[0] + x.0[0] * w, self.0[1] + x.0[1] * w])
    }
}
