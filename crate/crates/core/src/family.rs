//! The associated family `M_θ = e^{iθ} M`.
//!
//! All members share the conformal factor, since it depends on `|M|` only.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::surface::{conformal_factor, fundamental_forms, Frame, WeierstrassData, DEFAULT_STEP};

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub base: WeierstrassData,
    /// Largest angle of the sweep.
    pub theta: f64,
    pub steps: u32,
    /// Allows `theta` outside `[0, π/2]`.
    pub extended: bool,
}

impl FamilySpec {
    pub fn new(base: WeierstrassData, theta: f64, steps: u32) -> Result<Self> {
        let spec = FamilySpec { base, theta, steps, extended: false };
        spec.validate()?;
        Ok(spec)
    }

    pub fn extended(base: WeierstrassData, theta: f64, steps: u32) -> Result<Self> {
        let spec = FamilySpec { base, theta, steps, extended: true };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.theta.is_finite() {
            return Err(Error::InvalidArgument("theta must be finite".into()));
        }
        if self.steps == 0 {
            return Err(Error::InvalidArgument("steps must be at least 1".into()));
        }
        if !self.extended && !(0.0..=FRAC_PI_2).contains(&self.theta) {
            return Err(Error::InvalidArgument(format!(
                "theta = {} is outside [0, pi/2]; use the extended range to allow it",
                self.theta
            )));
        }
        Ok(())
    }

    /// `θ_k = k·theta/steps` for `k = 0..=steps`.
    pub fn thetas(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.theta * k as f64 / self.steps as f64).collect()
    }

    pub fn members(&self) -> Vec<(f64, WeierstrassData)> {
        self.thetas().into_iter().map(|t| (t, rotate_data(&self.base, t))).collect()
    }
}

/// `M ↦ e^{iθ} M`; poles and domain are kept.
pub fn rotate_data(data: &WeierstrassData, theta: f64) -> WeierstrassData {
    WeierstrassData {
        name: data.name.as_ref().map(|n| format!("{n}@{theta}")),
        phase: data.phase + theta,
        ..data.clone()
    }
}

/// Largest relative change of the metric across the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IsometryDeviation {
    /// From the closed-form conformal factor.
    pub closed_form: f64,
    /// From the finite-difference first fundamental form `E`.
    pub finite_difference: f64,
}

/// `max |λ²_θ − λ²_0| / (1 + λ²_0)` over the sweep and probes, for both metrics.
pub fn isometry_sweep(spec: &FamilySpec, probes: &[Complex64]) -> Result<IsometryDeviation> {
    spec.validate()?;
    for &z in probes {
        if !spec.base.domain.contains(z) {
            return Err(Error::DomainViolation(z));
        }
    }
    let frame = Frame::new(spec.base.default_basepoint()?);
    let metrics = |data: &WeierstrassData| -> Result<Vec<(f64, f64)>> {
        probes
            .iter()
            .map(|&z| Ok((conformal_factor(data, z)?, fundamental_forms(data, &frame, z, DEFAULT_STEP)?.e)))
            .collect()
    };
    let base = metrics(&spec.base)?;
    let devs = spec
        .members()
        .par_iter()
        .map(|(_, member)| {
            let m = metrics(member)?;
            let mut dev = IsometryDeviation::default();
            for ((l0, e0), (l, e)) in base.iter().zip(&m) {
                dev.closed_form = dev.closed_form.max((l - l0).abs() / (1.0 + l0));
                dev.finite_difference = dev.finite_difference.max((e - e0).abs() / (1.0 + e0));
            }
            Ok(dev)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(devs.into_iter().fold(IsometryDeviation::default(), |a, d| IsometryDeviation {
        closed_form: a.closed_form.max(d.closed_form),
        finite_difference: a.finite_difference.max(d.finite_difference),
    }))
}
