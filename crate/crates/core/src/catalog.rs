//! The Lorentzian catenoid and helicoid in closed form, and the checks that
//! bind those forms to the numerical machinery.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{parse, parse_with_vars, Expr, PoleDecl, PoleSource};
use crate::hodograph::{mse_residual, GraphFunction, DEFAULT_PDE_STEP};
use crate::surf_io::{DomainSpec, ReportMetadata, ReportRow, VerificationReport};
use crate::surface::{immersion, Frame, PhiSign, Vec3, WeierstrassData};

/// Default sampling resolution of catalog sectors.
pub const DEFAULT_RESOLUTION: (usize, usize) = (64, 128);

/// Three real-part formulas `Re e_k(w, w̄)` giving `(x, y, φ)`.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    exprs: [Expr; 3],
}

impl ClosedForm {
    /// Parses the three components with variables `names = [w, w̄]`.
    pub fn parse(src: [&str; 3], names: [&str; 2]) -> Result<Self> {
        let e = |s| parse_with_vars(s, &names);
        Ok(ClosedForm { exprs: [e(src[0])?, e(src[1])?, e(src[2])?] })
    }

    pub fn eval(&self, w: Complex64) -> Result<Vec3> {
        let at = [w, w.conj()];
        Ok([self.exprs[0].eval_at(&at)?.re, self.exprs[1].eval_at(&at)?.re, self.exprs[2].eval_at(&at)?.re])
    }
}

/// How the immersion's `(x, y, φ)` relate to the graph function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphRelation {
    /// `sinh|φ| = √(x² + y²)`.
    SinhRadius,
    /// `φ = graph(x, y)` modulo π.
    AngleModPi,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub weierstrass: WeierstrassData,
    /// Antiderivative of `M`.
    pub f: Expr,
    pub graph: GraphFunction,
    pub we_closed_form: ClosedForm,
    pub hodographic_closed_form: ClosedForm,
    pub relation: GraphRelation,
    /// φ of the closed forms is only defined modulo π.
    pub phi_mod_pi: bool,
    /// Basepoint at the sector centre, offsets from the closed form there.
    pub frame: Frame,
}

impl CatalogEntry {
    pub fn domain(&self) -> &DomainSpec {
        &self.weierstrass.domain
    }

    /// The same entry on another domain, keeping the frame when its basepoint
    /// still lies inside.
    pub fn with_domain(&self, domain: DomainSpec) -> Result<Self> {
        let weierstrass = self.weierstrass.with_domain(domain)?;
        let frame = if weierstrass.domain.contains(self.frame.basepoint) {
            self.frame
        } else {
            let base = weierstrass.default_basepoint()?;
            let mut offsets = self.we_closed_form.eval(base)?;
            offsets[2] *= self.frame.phi_sign.factor();
            Frame { basepoint: base, offsets, ..self.frame }
        };
        Ok(CatalogEntry { weierstrass, frame, ..self.clone() })
    }

    /// The same entry integrated with the given φ sign; the φ offset follows
    /// the symmetry `φ ↦ −φ`.
    pub fn with_sign(&self, sign: PhiSign) -> Result<Self> {
        let mut frame = self.frame.with_sign(sign);
        frame.offsets[2] = sign.factor() * self.we_closed_form.eval(frame.basepoint)?[2];
        Ok(CatalogEntry { frame, ..self.clone() })
    }

    /// Distance between two φ values, modulo π when the closed form requires it.
    pub fn phi_distance(&self, a: f64, b: f64) -> f64 {
        if self.phi_mod_pi {
            mod_pi_distance(a - b)
        } else {
            (a - b).abs()
        }
    }
}

/// Distance from `d` to the nearest multiple of π.
pub fn mod_pi_distance(d: f64) -> f64 {
    (d - PI * (d / PI).round()).abs()
}

fn x() -> Expr {
    Expr::var(0)
}

fn y() -> Expr {
    Expr::var(1)
}

fn entry(
    name: &'static str,
    m: &str,
    f: &str,
    graph: GraphFunction,
    we: [&str; 3],
    hodo: [&str; 3],
    domain: DomainSpec,
    relation: GraphRelation,
    phi_mod_pi: bool,
) -> CatalogEntry {
    let build = || -> Result<CatalogEntry> {
        let pole = PoleDecl::new(Complex64::default(), 2, PoleSource::Catalog);
        let weierstrass = WeierstrassData::new(Some(name.to_string()), parse(m)?, vec![pole], domain)?;
        let we_closed_form = ClosedForm::parse(we, ["zeta", "zeta_bar"])?;
        let base = weierstrass.default_basepoint()?;
        let frame = Frame::new(base).with_offsets(we_closed_form.eval(base)?);
        Ok(CatalogEntry {
            name,
            weierstrass,
            f: parse(f)?,
            graph,
            we_closed_form,
            hodographic_closed_form: ClosedForm::parse(hodo, ["rho", "rho_bar"])?,
            relation,
            phi_mod_pi,
            frame,
        })
    };
    build().expect("catalog entries are well formed")
}

/// `M = −1/(2ζ²)`, `F = 1/(2ζ)`, graph `φ = sinh⁻¹√(x²+y²)`, on
/// `1.05 < |ζ| < 3`, `|arg ζ| < 3π/4`.
pub fn catenoid() -> CatalogEntry {
    let s = x().powi(2) + y().powi(2);
    let r = s.clone().sqrt();
    let graph = GraphFunction::new("asinh(sqrt(x^2+y^2))", (r + (s + Expr::real(1.0)).sqrt()).ln());
    let (n_r, n_a) = DEFAULT_RESOLUTION;
    entry(
        "catenoid",
        "-1/(2*zeta^2)",
        "1/(2*zeta)",
        graph,
        [
            "-0.5*(zeta - 1/zeta)",
            "0.5*i*(zeta + 1/zeta)",
            "-0.5*log(zeta*zeta_bar)",
        ],
        [
            "-0.5*(1/(2*rho) - 2*rho)",
            "0.5*i*(1/(2*rho) + 2*rho)",
            "0.5*(log(2*rho) + log(2*rho_bar))",
        ],
        DomainSpec::sector(1.05, 3.0, -0.75 * PI, 0.75 * PI, n_r, n_a),
        GraphRelation::SinhRadius,
        false,
    )
}

/// `M = −i/(2ζ²)`, `F = i/(2ζ)`, graph `φ = π/2 + tan⁻¹(y/x)`, on
/// `1.05 < |ζ| < 3`, `π/8 < arg ζ < 7π/8`, which keeps `x > 0`.
pub fn helicoid() -> CatalogEntry {
    let i = Expr::imag(1.0);
    let t = y() / x();
    let one = || Expr::real(1.0);
    let atan = Expr::imag(0.5) * ((one() - i.clone() * t.clone()).ln() - (one() + i * t).ln());
    let graph = GraphFunction::new("pi/2 + atan(y/x)", Expr::real(FRAC_PI_2) + atan);
    let (n_r, n_a) = DEFAULT_RESOLUTION;
    entry(
        "helicoid",
        "-i/(2*zeta^2)",
        "i/(2*zeta)",
        graph,
        [
            "-0.5*i*(zeta - 1/zeta)",
            "-0.5*(zeta + 1/zeta)",
            // arg ζ, the principal-branch form of −(i/2)log(ζ/ζ̄)
            "-i*log(zeta)",
        ],
        [
            "-0.5*i*(i/(2*rho) - 2*rho/i)",
            "-0.5*(i/(2*rho) + 2*rho/i)",
            "-0.5*i*log(-rho_bar/rho)",
        ],
        DomainSpec::sector(1.05, 3.0, PI / 8.0, 7.0 * PI / 8.0, n_r, n_a),
        GraphRelation::AngleModPi,
        true,
    )
}

pub fn names() -> Vec<&'static str> {
    vec!["catenoid", "helicoid"]
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    match name {
        "catenoid" => Ok(catenoid()),
        "helicoid" => Ok(helicoid()),
        _ => Err(Error::UnknownName { kind: "catalog entry", name: name.to_string() }),
    }
}

pub fn all() -> Vec<CatalogEntry> {
    vec![catenoid(), helicoid()]
}

/// `max |X(ζ) − closed form(ζ)|` over the points (φ modulo π where
/// applicable, and negated for the minus sign).
pub fn immersion_vs_closed_form(entry: &CatalogEntry, points: &[Complex64]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &z in points {
        let p = immersion(&entry.weierstrass, &entry.frame, z)?;
        let mut q = entry.we_closed_form.eval(z)?;
        q[2] *= entry.frame.phi_sign.factor();
        worst = worst.max((p[0] - q[0]).abs()).max((p[1] - q[1]).abs()).max(entry.phi_distance(p[2], q[2]));
    }
    Ok(worst)
}

/// Residual of the graph relation at the closed-form points.
pub fn graph_relation_residual(entry: &CatalogEntry, points: &[Complex64]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &z in points {
        let [x, y, phi] = entry.we_closed_form.eval(z)?;
        let r = match entry.relation {
            GraphRelation::SinhRadius => (phi.abs().sinh() - x.hypot(y)).abs(),
            GraphRelation::AngleModPi => {
                let g = entry.graph.eval(x.into(), y.into())?.re;
                mod_pi_distance(phi - g)
            }
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

/// `max |F′(ζ) − M(ζ)|`.
pub fn f_prime_residual(entry: &CatalogEntry, points: &[Complex64]) -> Result<f64> {
    let df = entry.f.differentiate();
    let mut worst = 0.0_f64;
    for &z in points {
        worst = worst.max((df.eval(z)? - entry.weierstrass.eval_m(z)?).norm());
    }
    Ok(worst)
}

/// Step for graph residuals at distance `radius` from the origin, where the
/// catalog graphs are singular.
pub fn graph_step(radius: f64) -> f64 {
    DEFAULT_PDE_STEP.min(radius / 300.0)
}

/// `max |MSE(graph)|` at the `(x, y)` images of the points.
pub fn graph_mse_residual(entry: &CatalogEntry, points: &[Complex64]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &z in points {
        let [x, y, _] = entry.we_closed_form.eval(z)?;
        let r = mse_residual(&entry.graph, x.into(), y.into(), graph_step(x.hypot(y)))?;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// `max |hodographic(F(ζ)) − closed form(ζ)|`.
pub fn hodographic_residual(entry: &CatalogEntry, points: &[Complex64]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &z in points {
        let p = entry.hodographic_closed_form.eval(entry.f.eval(z)?)?;
        let q = entry.we_closed_form.eval(z)?;
        worst = worst.max((p[0] - q[0]).abs()).max((p[1] - q[1]).abs()).max(entry.phi_distance(p[2], q[2]));
    }
    Ok(worst)
}

/// Rows (a)–(e) binding the closed forms to the immersion, graph, `F` and ρ.
pub fn cross_check(entry: &CatalogEntry, samples: usize, seed: u64) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("cross_check needs at least one sample".into()));
    }
    let points = entry.domain().random_points(samples, seed)?;
    let n = points.len();
    let row = |name: &str, r: Result<f64>, tol: f64| ReportRow::new(name, r.unwrap_or(f64::INFINITY), tol, n);
    let rows = vec![
        row("immersion_closed_form", immersion_vs_closed_form(entry, &points), 1e-8),
        row("graph_relation", graph_relation_residual(entry, &points), 1e-8),
        row("f_prime_equals_m", f_prime_residual(entry, &points), 1e-12),
        row("graph_mse", graph_mse_residual(entry, &points), 1e-6),
        row("hodographic_form", hodographic_residual(entry, &points), 1e-8),
    ];
    let mut report = VerificationReport::new(
        ReportMetadata::new(entry.name, entry.domain().to_string(), seed),
        rows,
    );
    report.notes.extend(sign_note(entry));
    Ok(report)
}

/// The catenoid's immersion carries `φ = −sinh⁻¹√(x²+y²)` on `|ζ| > 1`,
/// the graph under the symmetry `φ ↦ −φ`.
pub fn sign_note(entry: &CatalogEntry) -> Option<String> {
    (entry.relation == GraphRelation::SinhRadius).then(|| {
        let side = if entry.domain().r_min > 1.0 { "-" } else { "+" };
        format!("{}: immersion phi = {side}graph(x, y) on this sector (phi -> -phi symmetry)", entry.name)
    })
}
