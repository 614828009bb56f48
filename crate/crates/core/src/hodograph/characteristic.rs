use num_complex::Complex64;

use crate::contour::{Integrator, PathSpec};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fd::derivative;

const DENOMINATOR_EPS: f64 = 1e-14;

/// Root of `1 − 4uv` used when inverting the characteristic map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// Principal square root; recovers ζ when `|ζ| < 1`.
    #[default]
    Principal,
    /// Negated root; recovers ζ when `|ζ| > 1`.
    Secondary,
}

/// `(u, v) = (φ_z̄, φ_z)` together with the characteristic variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicPair {
    pub u: Complex64,
    pub v: Complex64,
    pub zeta: Complex64,
    pub zeta_bar: Complex64,
}

impl CharacteristicPair {
    pub fn from_zeta(zeta: Complex64, zeta_bar: Complex64) -> Result<Self> {
        let (u, v) = uv_from_zeta(zeta, zeta_bar)?;
        Ok(CharacteristicPair { u, v, zeta, zeta_bar })
    }

    /// Principal-branch inversion.
    pub fn from_uv(u: Complex64, v: Complex64) -> Result<Self> {
        let (zeta, zeta_bar) = zeta_from_uv(u, v)?;
        Ok(CharacteristicPair { u, v, zeta, zeta_bar })
    }

    /// `4uv`, which equals `|∇φ|²` for a real graph.
    pub fn gradient_sq(&self) -> Complex64 {
        4.0 * self.u * self.v
    }

    /// `(ũ, ṽ) = (u/i, v/i)`.
    pub fn tilde(&self) -> (Complex64, Complex64) {
        let i = Complex64::i();
        (self.u / i, self.v / i)
    }
}

/// `u = ζ/(1+ζζ̄)`, `v = ζ̄/(1+ζζ̄)`.
pub fn uv_from_zeta(zeta: Complex64, zeta_bar: Complex64) -> Result<(Complex64, Complex64)> {
    let d = 1.0 + zeta * zeta_bar;
    if d.norm() < DENOMINATOR_EPS {
        return Err(Error::DegenerateDenominator);
    }
    Ok((zeta / d, zeta_bar / d))
}

/// `ζ = (1 − √(1−4uv))/(2v)` and its partner, on the principal branch.
pub fn zeta_from_uv(u: Complex64, v: Complex64) -> Result<(Complex64, Complex64)> {
    zeta_from_uv_branch(u, v, Branch::Principal)
}

/// Evaluated as `ζ = 2u/(1 + s)`, `ζ̄ = 2v/(1 + s)` with `s = ±√(1−4uv)`,
/// which equals the quotient form and tends to `(u, v)` as `uv → 0`.
pub fn zeta_from_uv_branch(u: Complex64, v: Complex64, branch: Branch) -> Result<(Complex64, Complex64)> {
    let w = 1.0 - 4.0 * u * v;
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(Error::BranchCutHit(w));
    }
    let s = match branch {
        Branch::Principal => w.sqrt(),
        Branch::Secondary => -w.sqrt(),
    };
    let d = 1.0 + s;
    if d.norm() < DENOMINATOR_EPS {
        return Err(Error::DegenerateDenominator);
    }
    Ok((2.0 * u / d, 2.0 * v / d))
}

/// `ζ² z̄_ζ − z_ζ` for `z = conj(F(ζ)) + ∫ ω² F′(ω) dω`, with `∂_ζ = ½(∂₁ − i∂₂)`
/// taken by finite differences.
pub fn lemma_residual(f: &Expr, zeta: Complex64) -> Result<Complex64> {
    lemma_residual_with(&Integrator::default(), f, zeta, 1e-3)
}

pub fn lemma_residual_with(integrator: &Integrator, f: &Expr, zeta: Complex64, h: f64) -> Result<Complex64> {
    let df = f.differentiate();
    let f0 = f.eval(zeta)?;
    let h = h * zeta.norm().max(1.0);
    // z(ζ+δ) − z(ζ), integrating along the short segment from ζ
    let z = |delta: Complex64| -> Result<Complex64> {
        if delta == Complex64::default() {
            return Ok(Complex64::default());
        }
        let path = PathSpec::segment(zeta, zeta + delta);
        let integral = integrator.integrate_with(|w| Ok([w * w * df.eval(w)?]), &path, &[])?[0];
        Ok((f.eval(zeta + delta)? - f0).conj() + integral)
    };
    let z1 = derivative(h, |t| z(Complex64::new(t, 0.0)))?;
    let z2 = derivative(h, |t| z(Complex64::new(0.0, t)))?;
    let zb1 = z1.conj();
    let zb2 = z2.conj();
    let i = Complex64::i();
    let z_zeta = 0.5 * (z1 - i * z2);
    let zb_zeta = 0.5 * (zb1 - i * zb2);
    Ok(zeta * zeta * zb_zeta - z_zeta)
}
