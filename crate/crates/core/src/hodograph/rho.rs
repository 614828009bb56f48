use num_complex::Complex64;
use rayon::prelude::*;

use crate::contour::{Integrator, PathSpec};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fd::Grid5;
use crate::surface::{lorentz_dot, PhiSign, Vec3, WeierstrassData};

const MAX_NEWTON: usize = 50;
const CRITICAL_EPS: f64 = 1e-12;

/// `ρ = F(ζ)`.
pub fn rho_from_zeta(f: &Expr, zeta: Complex64) -> Result<Complex64> {
    f.eval(zeta)
}

/// Local inverse of `F` by Newton iteration, seeded from the nearest
/// tabulated `(ρ, ζ)` pair.
#[derive(Debug, Clone)]
pub struct NewtonInverse {
    f: Expr,
    df: Expr,
    seeds: Vec<(Complex64, Complex64)>,
}

impl NewtonInverse {
    pub fn new(f: &Expr, seed_zetas: &[Complex64]) -> Result<Self> {
        let seeds = seed_zetas.iter().map(|&z| Ok((f.eval(z)?, z))).collect::<Result<Vec<_>>>()?;
        if seeds.is_empty() {
            return Err(Error::InvalidArgument("Newton inversion needs at least one seed".into()));
        }
        Ok(NewtonInverse { f: f.clone(), df: f.differentiate(), seeds })
    }

    pub fn invert(&self, rho: Complex64) -> Result<Complex64> {
        let seed = self
            .seeds
            .iter()
            .min_by(|a, b| (a.0 - rho).norm().total_cmp(&(b.0 - rho).norm()))
            .expect("seeds are non-empty")
            .1;
        self.invert_from(rho, seed)
    }

    pub fn invert_from(&self, rho: Complex64, start: Complex64) -> Result<Complex64> {
        let mut z = start;
        for _ in 0..MAX_NEWTON {
            let d = self.df.eval(z)?;
            if d.norm() < CRITICAL_EPS {
                return Err(Error::CriticalPointOfF(z));
            }
            let step = (self.f.eval(z)? - rho) / d;
            z -= step;
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NewtonDivergence(rho));
            }
            if step.norm() <= 4e-15 * (1.0 + z.norm()) {
                return Ok(z);
            }
        }
        Err(Error::NewtonDivergence(rho))
    }
}

/// Worst deviations over a ρ-grid.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IsothermalReport {
    /// `max |E_ρ − G_ρ| / (1 + E_ρ)`.
    pub max_length_dev: f64,
    /// `max |F_ρ| / (1 + E_ρ)`.
    pub max_angle_dev: f64,
    /// `max |φ_ρ − ζ|`, with `φ_ρ = ½(∂_ρ₁ − i∂_ρ₂)φ`; the target is `−ζ` for the minus sign.
    pub max_phi_rho_dev: f64,
    pub samples: usize,
}

/// Reparametrises the immersion by `ρ = F(ζ)` and checks that `ρ` is
/// isothermal and that `φ_ρ = ζ`.
pub fn isothermal_check(
    data: &WeierstrassData,
    sign: PhiSign,
    f: &Expr,
    rho_grid: &[Complex64],
    h: f64,
) -> Result<IsothermalReport> {
    let seeds = data.domain.with_resolution(data.domain.n_r.min(16), data.domain.n_angle.min(32)).sample()?;
    let inverse = NewtonInverse::new(f, seeds.nodes())?;
    let integrator = Integrator::default();
    let poles = data.pole_locations();

    let rows = rho_grid
        .par_iter()
        .map(|&rho0| {
            let z0 = inverse.invert(rho0)?;
            let g = Grid5::<Vec3>::sample(h, |i, j| {
                if i == 0 && j == 0 {
                    return Ok([0.0; 3]);
                }
                let z = inverse.invert_from(rho0 + Complex64::new(i as f64 * h, j as f64 * h), z0)?;
                let p = integrator.integrate_with(|w| data.integrands(w, sign), &PathSpec::segment(z0, z), &poles)?;
                Ok([p[0].re, p[1].re, p[2].re])
            })?;
            let (x1, x2) = (g.d1(), g.d2());
            let e = lorentz_dot(&x1, &x1);
            let ff = lorentz_dot(&x1, &x2);
            let gg = lorentz_dot(&x2, &x2);
            let phi_rho = 0.5 * Complex64::new(x1[2], -x2[2]);
            Ok([
                (e - gg).abs() / (1.0 + e),
                ff.abs() / (1.0 + e),
                (phi_rho - sign.factor() * z0).norm(),
            ])
        })
        .collect::<Result<Vec<[f64; 3]>>>()?;

    let mut out = IsothermalReport { samples: rows.len(), ..Default::default() };
    for r in rows {
        out.max_length_dev = out.max_length_dev.max(r[0]);
        out.max_angle_dev = out.max_angle_dev.max(r[1]);
        out.max_phi_rho_dev = out.max_phi_rho_dev.max(r[2]);
    }
    Ok(out)
}
