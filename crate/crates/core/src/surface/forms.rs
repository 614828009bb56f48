use num_complex::Complex64;

use super::{lorentz_dot, surface_normal, Frame, PhiSign, Vec3, WeierstrassData};
use crate::contour::{Integrator, PathSpec};
use crate::error::{Error, Result};
use crate::fd::Grid5;

/// First form `(E, F, G)` and second form `(e, f, g)`, stored as `(l, m, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl FundamentalForms {
    pub fn det_first(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// `max(|E−G|, |F|) / (1+E)`.
    pub fn conformality_defect(&self) -> f64 {
        (self.e - self.g).abs().max(self.f.abs()) / (1.0 + self.e)
    }
}

/// Step actually used at `zeta`: `h` scaled by `|ζ|` once `|ζ| > 1`.
pub fn effective_step(h: f64, zeta: Complex64) -> f64 {
    h * zeta.norm().max(1.0)
}

/// Evaluates the immersion on a 5×5 stencil.
///
/// Each stencil value is the integral along the short segment from the
/// centre, so the (larger) error of the path from the basepoint cancels
/// out of every difference.
pub struct StencilEvaluator<'a> {
    integrator: &'a Integrator,
    data: &'a WeierstrassData,
    sign: PhiSign,
}

impl<'a> StencilEvaluator<'a> {
    pub fn new(integrator: &'a Integrator, data: &'a WeierstrassData, sign: PhiSign) -> Self {
        StencilEvaluator { integrator, data, sign }
    }

    fn check(&self, zeta: Complex64, hs: f64) -> Result<()> {
        let reach = 3.0 * hs;
        if (zeta.norm() - 1.0).abs() <= reach {
            return Err(Error::StencilOutOfDomain(zeta));
        }
        if self.data.poles.iter().any(|p| (p.location - zeta).norm() <= reach) {
            return Err(Error::StencilOutOfDomain(zeta));
        }
        Ok(())
    }

    fn grid(&self, zeta: Complex64, hs: f64) -> Result<Grid5<Vec3>> {
        let poles = self.data.pole_locations();
        Grid5::sample(hs, |i, j| {
            if i == 0 && j == 0 {
                return Ok([0.0; 3]);
            }
            let to = zeta + Complex64::new(i as f64 * hs, j as f64 * hs);
            let path = PathSpec::segment(zeta, to);
            let p = self.integrator.integrate_with(|w| self.data.integrands(w, self.sign), &path, &poles)?;
            Ok([p[0].re, p[1].re, p[2].re])
        })
    }

    pub fn forms_at(&self, zeta: Complex64, h: f64) -> Result<FundamentalForms> {
        let hs = effective_step(h, zeta);
        self.check(zeta, hs)?;
        let g5 = self.grid(zeta, hs)?;
        let (x1, x2) = (g5.d1(), g5.d2());
        let normal = surface_normal(zeta, self.sign)?;
        Ok(FundamentalForms {
            e: lorentz_dot(&x1, &x1),
            f: lorentz_dot(&x1, &x2),
            g: lorentz_dot(&x2, &x2),
            l: lorentz_dot(&g5.d11(), &normal),
            m: lorentz_dot(&g5.d12(), &normal),
            n: lorentz_dot(&g5.d22(), &normal),
        })
    }
}

/// Fundamental forms at `zeta` from central differences of the immersion
/// in `(Re ζ, Im ζ)`, contracted with the unit normal.
pub fn fundamental_forms(data: &WeierstrassData, frame: &Frame, zeta: Complex64, h: f64) -> Result<FundamentalForms> {
    let integrator = Integrator::default();
    StencilEvaluator::new(&integrator, data, frame.phi_sign).forms_at(zeta, h)
}

/// `H = (eG − 2fF + gE) / (2(EG − F²))`.
pub fn mean_curvature(forms: &FundamentalForms) -> Result<f64> {
    let det = forms.det_first();
    if det.abs() < 1e-18 {
        return Err(Error::DegenerateMetric(det));
    }
    Ok((forms.l * forms.g - 2.0 * forms.m * forms.f + forms.n * forms.e) / (2.0 * det))
}
