use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Check, Context, Measurement, Suite};
use crate::catalog::{self, graph_step};
use crate::error::Result;
use crate::expr::{check_pole, Expr};
use crate::hodograph::{
    isothermal_check, jacobian_identity, lemma_residual, uv_from_zeta, wick_check, zeta_from_uv_branch, Branch,
    GraphFunction, IsothermalReport, DEFAULT_PDE_STEP,
};
use crate::surface::{
    gauss_map, lorentz_dot, mean_curvature, metric_coefficient, stereographic, surface_normal, FundamentalForms,
    StencilEvaluator,
};

type Measure = fn(&Context) -> Option<Result<Measurement>>;

/// A check backed by a plain function.
struct FnCheck {
    name: &'static str,
    description: &'static str,
    suite: Suite,
    tolerance: f64,
    measure: Measure,
}

impl Check for FnCheck {
    fn name(&self) -> &'static str {
        self.name
    }
    fn description(&self) -> &'static str {
        self.description
    }
    fn suite(&self) -> Suite {
        self.suite
    }
    fn default_tolerance(&self) -> f64 {
        self.tolerance
    }
    fn measure(&self, ctx: &Context) -> Option<Result<Measurement>> {
        (self.measure)(ctx)
    }
}

fn check(name: &'static str, description: &'static str, suite: Suite, tolerance: f64, measure: Measure) -> Box<dyn Check> {
    Box::new(FnCheck { name, description, suite, tolerance, measure })
}

pub fn builtin_checks() -> Vec<Box<dyn Check>> {
    use Suite::*;
    vec![
        check("gauss_norm", "Lorentz norm of the normal is -1", Surface, 1e-12, gauss_norm),
        check("gauss_sigma", "gauss map equals the stereographic map exactly", Surface, 0.0, gauss_sigma),
        check("conformality", "max(|E-G|, |F|)/(1+E)", Surface, 1e-5, conformality),
        check("metric", "relative gap between E, G and 4*lambda_sq", Surface, 1e-4, metric),
        check("maximality", "|H| from the fundamental forms", Surface, 1e-4, maximality),
        check("spacelike", "points with E <= 0 or EG-F^2 <= 0", Surface, 0.0, spacelike),
        check("holomorphy", "Cauchy-Riemann mismatch of M", Surface, 1e-6, holomorphy),
        check("declared_poles", "declared poles that fail the order check", Surface, 0.0, declared_poles),
        check("immersion_closed_form", "contour immersion vs closed form", Catalog, 1e-8, |c| {
            with_entry(c, catalog::immersion_vs_closed_form)
        }),
        check("graph_relation", "closed-form points lie on the graph", Catalog, 1e-8, |c| {
            with_entry(c, catalog::graph_relation_residual)
        }),
        check("f_prime_equals_m", "|F' - M|", Catalog, 1e-12, |c| with_entry(c, catalog::f_prime_residual)),
        check("graph_mse", "maximal surface equation on the graph", Catalog, 1e-6, |c| {
            with_entry(c, catalog::graph_mse_residual)
        }),
        check("hodographic_form", "rho closed form vs zeta closed form", Catalog, 1e-8, |c| {
            with_entry(c, catalog::hodographic_residual)
        }),
        check("characteristic_round_trip", "zeta -> (u, v) -> zeta", Hodograph, 1e-10, round_trip),
        check("lemma", "|zeta^2 conj(z)_zeta - z_zeta| on the reconstruction", Hodograph, 1e-8, lemma),
        check("isothermal_length", "|E_rho - G_rho|/(1+E_rho)", Hodograph, 1e-5, |c| isothermal(c, |r| r.max_length_dev)),
        check("isothermal_angle", "|F_rho|/(1+E_rho)", Hodograph, 1e-5, |c| isothermal(c, |r| r.max_angle_dev)),
        check("phi_rho", "|phi_rho - zeta|", Hodograph, 1e-6, |c| isothermal(c, |r| r.max_phi_rho_dev)),
        check("wick", "MSE(phi(ix, y)) vs BIE(phi)(ix, y) on random polynomials", Hodograph, 1e-6, wick),
        check("gradient_band", "graph points with 4uv outside [0, 1)", Hodograph, 0.0, gradient_band),
        check("jacobian", "relative gap of the two Jacobian expressions", Hodograph, 1e-5, jacobian),
    ]
}

fn max_over(ctx: &Context, f: impl Fn(Complex64) -> Result<f64> + Sync) -> Option<Result<Measurement>> {
    let values = ctx.points.par_iter().map(|&z| f(z)).collect::<Result<Vec<f64>>>();
    Some(values.map(|v| Measurement { residual: v.iter().copied().fold(0.0, f64::max), samples: v.len() }))
}

fn forms(ctx: &Context, z: Complex64) -> Result<FundamentalForms> {
    StencilEvaluator::new(&ctx.integrator, ctx.data, ctx.frame.phi_sign).forms_at(z, ctx.h)
}

fn gauss_norm(ctx: &Context) -> Option<Result<Measurement>> {
    max_over(ctx, |z| {
        let a = gauss_map(z)?;
        let b = surface_normal(z, ctx.frame.phi_sign)?;
        Ok((lorentz_dot(&a, &a) + 1.0).abs().max((lorentz_dot(&b, &b) + 1.0).abs()))
    })
}

fn gauss_sigma(ctx: &Context) -> Option<Result<Measurement>> {
    max_over(ctx, |z| {
        let (a, b) = (gauss_map(z)?, stereographic(z)?);
        Ok((0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max))
    })
}

fn conformality(ctx: &Context) -> Option<Result<Measurement>> {
    max_over(ctx, |z| Ok(forms(ctx, z)?.conformality_defect()))
}

fn metric(ctx: &Context) -> Option<Result<Measurement>> {
    max_over(ctx, |z| {
        let f = forms(ctx, z)?;
        let e = metric_coefficient(ctx.data, z)?;
        Ok(((f.e - e).abs().max((f.g - e).abs())) / e)
    })
}

fn maximality(ctx: &Context) -> Option<Result<Measurement>> {
    max_over(ctx, |z| Ok(mean_curvature(&forms(ctx, z)?)?.abs()))
}

fn spacelike(ctx: &Context) -> Option<Result<Measurement>> {
    max_over(ctx, |z| {
        let f = forms(ctx, z)?;
        Ok(if f.e > 0.0 && f.det_first() > 0.0 { 0.0 } else { 1.0 })
    })
    .map(|r| r.map(|m| Measurement { residual: m.residual * m.samples as f64, ..m }))
}

fn holomorphy(ctx: &Context) -> Option<Result<Measurement>> {
    Some(ctx.data.holomorphy_defect(&ctx.points).map(|d| Measurement { residual: d, samples: ctx.points.len() }))
}

fn declared_poles(ctx: &Context) -> Option<Result<Measurement>> {
    let poles = &ctx.data.poles;
    if poles.is_empty() {
        return None;
    }
    let m = ctx.data.expr();
    let bad = poles.iter().filter(|p| !check_pole(&m, p)).count();
    Some(Ok(Measurement { residual: bad as f64, samples: poles.len() }))
}

fn with_entry(
    ctx: &Context,
    f: fn(&catalog::CatalogEntry, &[Complex64]) -> Result<f64>,
) -> Option<Result<Measurement>> {
    let entry = ctx.entry?;
    Some(f(entry, &ctx.points).map(|r| Measurement { residual: r, samples: ctx.points.len() }))
}

fn round_trip(ctx: &Context) -> Option<Result<Measurement>> {
    max_over(ctx, |z| {
        let (u, v) = uv_from_zeta(z, z.conj())?;
        let branch = if z.norm() > 1.0 { Branch::Secondary } else { Branch::Principal };
        let (a, b) = zeta_from_uv_branch(u, v, branch)?;
        Ok((a - z).norm().max((b - z.conj()).norm()))
    })
}

fn lemma(ctx: &Context) -> Option<Result<Measurement>> {
    let f = ctx.f?;
    max_over(ctx, |z| Ok(lemma_residual(f, z)?.norm()))
}

/// ρ-grid: images under `F` of at most 25 sample points.
fn isothermal(ctx: &Context, pick: fn(&IsothermalReport) -> f64) -> Option<Result<Measurement>> {
    let f = ctx.f?;
    let run = || -> Result<Measurement> {
        let rho: Vec<Complex64> = ctx.points.iter().take(25).map(|&z| f.eval(z)).collect::<Result<_>>()?;
        let r = isothermal_check(ctx.data, ctx.frame.phi_sign, f, &rho, DEFAULT_PDE_STEP)?;
        Ok(Measurement { residual: pick(&r), samples: r.samples })
    };
    Some(run())
}

/// Random polynomial of degree ≤ 4 in `x`, `y`.
pub(crate) fn random_polynomial(rng: &mut impl Rng) -> Expr {
    let degree = rng.gen_range(1..=4);
    let mut e = Expr::real(0.0);
    for a in 0..=degree {
        for b in 0..=(degree - a) {
            let coeff = rng.gen_range(-1.0..1.0);
            e = e + Expr::real(coeff) * Expr::var(0).powi(a) * Expr::var(1).powi(b);
        }
    }
    e
}

fn wick(ctx: &Context) -> Option<Result<Measurement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let trials = 50;
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let phi = GraphFunction::new("polynomial", random_polynomial(&mut rng));
        let (x, y) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        match wick_check(&phi, x, y, DEFAULT_PDE_STEP) {
            Ok((l, r)) => worst = worst.max((l - r).norm() / (1.0 + r.norm())),
            Err(e) => return Some(Err(e)),
        }
    }
    Some(Ok(Measurement { residual: worst, samples: trials }))
}

fn graph_points(ctx: &Context) -> Option<Result<Vec<(f64, f64)>>> {
    let entry = ctx.entry?;
    Some(
        ctx.points
            .iter()
            .map(|&z| entry.we_closed_form.eval(z).map(|p| (p[0], p[1])))
            .collect(),
    )
}

fn gradient_band(ctx: &Context) -> Option<Result<Measurement>> {
    let entry = ctx.entry?;
    let run = || -> Result<Measurement> {
        let pts = graph_points(ctx).expect("entry present")?;
        let mut outside = 0;
        for &(x, y) in &pts {
            let g = entry.graph.gradient_sq(x, y, graph_step(x.hypot(y)))?;
            if !(0.0..1.0).contains(&g) {
                outside += 1;
            }
        }
        Ok(Measurement { residual: outside as f64, samples: pts.len() })
    };
    Some(run())
}

fn jacobian(ctx: &Context) -> Option<Result<Measurement>> {
    let entry = ctx.entry?;
    let run = || -> Result<Measurement> {
        let pts = graph_points(ctx).expect("entry present")?;
        let mut worst = 0.0_f64;
        for &(x, y) in &pts {
            let (d, f) = jacobian_identity(&entry.graph, x, y, graph_step(x.hypot(y)))?;
            worst = worst.max((d - f).abs() / f.abs().max(1e-8));
        }
        Ok(Measurement { residual: worst, samples: pts.len() })
    };
    Some(run())
}
