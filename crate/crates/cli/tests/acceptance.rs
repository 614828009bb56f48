//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion compares the library against an oracle written here
//! from closed forms, so a shared bug cannot pass both sides.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, ExitCode};

use maxsurf::catalog::{self, graph_step, CatalogEntry};
use maxsurf::family::{isometry_sweep, rotate_data, FamilySpec};
use maxsurf::hodograph::{
    euclidean_mse_residual, isothermal_check, jacobian_identity, lemma_residual, uv_from_zeta, wick_check,
    zeta_from_uv_branch, Branch, GraphFunction, DEFAULT_PDE_STEP,
};
use maxsurf::surf_io::{build_mesh, export_csv, export_obj, parse_csv, parse_obj, DomainSpec};
use maxsurf::surface::{
    conformal_factor, fundamental_forms, gauss_map, immersion, mean_curvature, surface_normal, Frame, PhiSign,
    WeierstrassData,
};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type V3 = [f64; 3];
type Outcome = Result<(bool, String), String>;

const SEED: u64 = 2024;
const FD_STEP: f64 = 1e-4;

// Tolerances, one per claim.
const TOL_MAXIMALITY: f64 = 1e-4;
const TOL_METRIC_REL: f64 = 1e-4;
const TOL_METRIC_ANGLE: f64 = 1e-5;
const TOL_NORM: f64 = 1e-12;
const TOL_CLOSED_FORM: f64 = 1e-8;
const TOL_ARG_MOD_PI: f64 = 1e-10;
const TOL_EUCLIDEAN_MSE: f64 = 1e-6;
const MIN_CATENOID_EUCLIDEAN: f64 = 1e-2;
const TOL_WICK_REL: f64 = 1e-6;
const TOL_ROUND_TRIP: f64 = 1e-10;
const TOL_GRADIENT: f64 = 1e-6;
const TOL_LEMMA: f64 = 1e-8;
const TOL_FAMILY_FD: f64 = 1e-4;
const TOL_ROTATION: f64 = 1e-12;
const TOL_PHI_RHO: f64 = 1e-6;
const TOL_ISOTHERMAL: f64 = 1e-5;
const TOL_JACOBIAN_REL: f64 = 1e-5;
const TOL_ROUND_TRIP_IO: f64 = 1e-12;

fn ldot(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn max_abs(a: V3) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

fn mod_pi(d: f64) -> f64 {
    (d - PI * (d / PI).round()).abs()
}

/// `P(ζ) = (−½(ζ−1/ζ), (i/2)(ζ+1/ζ), −log ζ)`; the member at angle θ is `Re(e^{iθ}P)`.
fn family_closed(theta: f64, z: C) -> V3 {
    let rot = C::from_polar(1.0, theta);
    let i = C::i();
    let p = [-0.5 * (z - 1.0 / z), 0.5 * i * (z + 1.0 / z), -z.ln()];
    [(rot * p[0]).re, (rot * p[1]).re, (rot * p[2]).re]
}

fn catenoid_closed(z: C) -> V3 {
    [-0.5 * (z - 1.0 / z).re, -0.5 * (z + 1.0 / z).im, -0.5 * z.norm_sqr().ln()]
}

fn helicoid_closed(z: C) -> V3 {
    [0.5 * (z - 1.0 / z).im, -0.5 * (z + 1.0 / z).re, z.arg()]
}

fn datum(name: &str, z: C) -> C {
    let m = -1.0 / (2.0 * z * z);
    if name == "helicoid" {
        C::i() * m
    } else {
        m
    }
}

/// Lambda squared straight from `M`.
fn lambda_sq(m: C, z: C) -> f64 {
    (m.norm() * (1.0 - z.norm_sqr()) / 2.0).powi(2)
}

/// Points kept a little away from the sector edges so stencils stay inside.
fn interior(entry: &CatalogEntry, n: usize, seed: u64) -> Vec<C> {
    let d = entry.domain();
    let inner = DomainSpec::sector(d.r_min + 0.02, d.r_max - 0.02, d.angle_min + 0.02, d.angle_max - 0.02, 4, 4);
    inner.random_points(n, seed).expect("sector has room")
}

fn d1<T: Copy>(h: f64, f: impl Fn(f64) -> T, lin: impl Fn([T; 4], f64) -> T) -> T {
    lin([f(-2.0 * h), f(-h), f(h), f(2.0 * h)], h)
}

fn lin3(v: [V3; 4], h: f64) -> V3 {
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = (v[0][k] - 8.0 * v[1][k] + 8.0 * v[2][k] - v[3][k]) / (12.0 * h);
    }
    out
}

fn lin1(v: [C; 4], h: f64) -> C {
    (v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * h)
}

/// `(E, F, G)` of a map of the plane by fourth-order differences.
fn first_form(f: impl Fn(C) -> V3, z: C, h: f64) -> (f64, f64, f64) {
    let xu = d1(h, |t| f(z + t), lin3);
    let xv = d1(h, |t| f(z + C::new(0.0, t)), lin3);
    (ldot(&xu, &xu), ldot(&xu, &xv), ldot(&xv, &xv))
}

/// Mean curvature of `Re(e^{iθ}P)` from exact derivatives of `P` and the Lorentz cross product.
fn mean_curvature_oracle(theta: f64, z: C) -> f64 {
    let rot = C::from_polar(1.0, theta);
    let i = C::i();
    let z2 = z * z;
    let p1 = [-0.5 * (1.0 + 1.0 / z2), 0.5 * i * (1.0 - 1.0 / z2), -1.0 / z];
    let p2 = [1.0 / (z2 * z), i / (z2 * z), 1.0 / z2];
    let re = |v: [C; 3], k: C| [(k * v[0]).re, (k * v[1]).re, (k * v[2]).re];
    let (xu, xv) = (re(p1, rot), re(p1, i * rot));
    let (xuu, xuv) = (re(p2, rot), re(p2, i * rot));
    let xvv = re(p2, -rot);
    let cross = [
        xu[1] * xv[2] - xu[2] * xv[1],
        xu[2] * xv[0] - xu[0] * xv[2],
        xu[0] * xv[1] - xu[1] * xv[0],
    ];
    let raw = [cross[0], cross[1], -cross[2]];
    let norm = ldot(&raw, &raw).abs().sqrt();
    let normal = [raw[0] / norm, raw[1] / norm, raw[2] / norm];
    let (ee, ff, gg) = (ldot(&xu, &xu), ldot(&xu, &xv), ldot(&xv, &xv));
    let (l, m, n) = (ldot(&xuu, &normal), ldot(&xuv, &normal), ldot(&xvv, &normal));
    (l * gg - 2.0 * m * ff + n * ee) / (2.0 * (ee * gg - ff * ff))
}

fn library_h(data: &WeierstrassData, frame: &Frame, z: C) -> Result<f64, String> {
    let forms = fundamental_forms(data, frame, z, FD_STEP).map_err(|e| e.to_string())?;
    mean_curvature(&forms).map_err(|e| e.to_string())
}

fn maximality() -> Outcome {
    let mut surfaces: Vec<(String, WeierstrassData, Frame, f64)> = Vec::new();
    for (entry, theta) in [(catalog::catenoid(), 0.0), (catalog::helicoid(), FRAC_PI_2)] {
        surfaces.push((entry.name.to_string(), entry.weierstrass.clone(), entry.frame, theta));
    }
    let cat = catalog::catenoid();
    for k in 1..=8 {
        let theta = k as f64 * PI / 16.0;
        surfaces.push((format!("catenoid@{k}pi/16"), rotate_data(&cat.weierstrass, theta), cat.frame, theta));
    }
    let (mut lib, mut oracle) = (0.0_f64, 0.0_f64);
    for (_, data, frame, theta) in &surfaces {
        for z in data.domain.random_points(200, SEED).map_err(|e| e.to_string())? {
            lib = lib.max(library_h(data, frame, z)?.abs());
            oracle = oracle.max(mean_curvature_oracle(*theta, z).abs());
        }
    }
    Ok((
        lib <= TOL_MAXIMALITY && oracle <= TOL_MAXIMALITY,
        format!("{} surfaces x 200 points, max|H| = {lib:.2e} (exact derivatives {oracle:.2e})", surfaces.len()),
    ))
}

fn metric() -> Outcome {
    let (mut rel, mut angle) = (0.0_f64, 0.0_f64);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    let mut lambda_gap = 0.0_f64;
    for entry in catalog::all() {
        for z in entry.domain().random_points(50, SEED).map_err(|e| e.to_string())? {
            let lam = lambda_sq(datum(entry.name, z), z);
            let lib_lam = conformal_factor(&entry.weierstrass, z).map_err(|e| e.to_string())?;
            lambda_gap = lambda_gap.max((lib_lam - lam).abs() / lam);
            let f = fundamental_forms(&entry.weierstrass, &entry.frame, z, FD_STEP).map_err(|e| e.to_string())?;
            rel = rel.max((f.e - lam).abs() / lam).max((f.g - lam).abs() / lam);
            angle = angle.max(f.f.abs() / (1.0 + f.e));
            let closed = if entry.name == "helicoid" { helicoid_closed } else { catenoid_closed };
            let (e, _, g) = first_form(closed, z, 1e-3);
            for ratio in [f.e / lam, f.g / lam, e / lam, g / lam] {
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
    }
    Ok((
        rel <= TOL_METRIC_REL && angle <= TOL_METRIC_ANGLE && lambda_gap <= 1e-15,
        format!(
            "max|E-l2|/l2 = {rel:.3e}, |F|/(1+E) = {angle:.2e}; E/l2 and G/l2 lie in [{lo:.8}, {hi:.8}] \
             (library and closed-form differences), so ds^2 = 4 l2 |dzeta|^2 for this immersion"
        ),
    ))
}

/// `σ(τ)` as written, `(−2Re τ, −2Im τ, |τ|²+1)/(|τ|²−1)`.
fn sigma(t: C) -> V3 {
    let d = t.norm_sqr() - 1.0;
    [-2.0 * t.re / d, -2.0 * t.im / d, (t.norm_sqr() + 1.0) / d]
}

fn gauss() -> Outcome {
    let mut pts = catalog::catenoid().domain().random_points(100, SEED).map_err(|e| e.to_string())?;
    let inner = DomainSpec::sector(0.05, 0.95, -PI, PI, 4, 4);
    pts.extend(inner.random_points(100, SEED).map_err(|e| e.to_string())?);
    let mut norm_dev = 0.0_f64;
    let mut mismatches = 0;
    for &z in &pts {
        let g = gauss_map(z).map_err(|e| e.to_string())?;
        if g != sigma(z) {
            mismatches += 1;
        }
        for n in [g, surface_normal(z, PhiSign::Plus).unwrap(), surface_normal(z, PhiSign::Minus).unwrap()] {
            norm_dev = norm_dev.max((ldot(&n, &n) + 1.0).abs());
        }
    }
    Ok((
        norm_dev <= TOL_NORM && mismatches == 0,
        format!("{} points, max|<N,N>+1| = {norm_dev:.2e}, gauss_map != sigma at {mismatches} points", pts.len()),
    ))
}

fn catenoid_closed_form() -> Outcome {
    let entry = catalog::catenoid();
    let (mut dev, mut graph) = (0.0_f64, 0.0_f64);
    for z in entry.domain().random_points(20, SEED).map_err(|e| e.to_string())? {
        let p = immersion(&entry.weierstrass, &entry.frame, z).map_err(|e| e.to_string())?;
        dev = dev.max(max_abs(sub(p, catenoid_closed(z))));
        graph = graph.max((p[2].abs().sinh() - p[0].hypot(p[1])).abs());
    }
    Ok((
        dev <= TOL_CLOSED_FORM && graph <= TOL_CLOSED_FORM,
        format!("20 points, immersion vs closed form {dev:.2e}, sinh|phi| - sqrt(x^2+y^2) {graph:.2e}"),
    ))
}

/// `(1+φ_x²)φ_yy − 2φ_xφ_yφ_xy + (1+φ_y²)φ_xx` by second-order differences.
fn euclidean_oracle(phi: impl Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> f64 {
    let f = |i: f64, j: f64| phi(x + i * h, y + j * h);
    let fx = (f(1.0, 0.0) - f(-1.0, 0.0)) / (2.0 * h);
    let fy = (f(0.0, 1.0) - f(0.0, -1.0)) / (2.0 * h);
    let fxx = (f(1.0, 0.0) - 2.0 * f(0.0, 0.0) + f(-1.0, 0.0)) / (h * h);
    let fyy = (f(0.0, 1.0) - 2.0 * f(0.0, 0.0) + f(0.0, -1.0)) / (h * h);
    let fxy = (f(1.0, 1.0) - f(1.0, -1.0) - f(-1.0, 1.0) + f(-1.0, -1.0)) / (4.0 * h * h);
    (1.0 + fx * fx) * fyy - 2.0 * fx * fy * fxy + (1.0 + fy * fy) * fxx
}

fn helicoid_closed_form() -> Outcome {
    let entry = catalog::helicoid();
    let (mut dev, mut arg, mut lib_mse, mut oracle_mse) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for z in entry.domain().random_points(20, SEED).map_err(|e| e.to_string())? {
        let p = immersion(&entry.weierstrass, &entry.frame, z).map_err(|e| e.to_string())?;
        let q = helicoid_closed(z);
        dev = dev.max((p[0] - q[0]).abs()).max((p[1] - q[1]).abs()).max(mod_pi(p[2] - q[2]));
        arg = arg.max(mod_pi(p[2] - z.arg()));
        let (x, y) = (p[0], p[1]);
        let r = euclidean_mse_residual(&entry.graph, x.into(), y.into(), graph_step(x.hypot(y)));
        lib_mse = lib_mse.max(r.map_err(|e| e.to_string())?.norm());
        oracle_mse = oracle_mse.max(euclidean_oracle(|x, y| (y / x).atan(), x, y, 1e-4).abs());
    }
    // Radial graph f(r) = asinh r: residual f'' + f'/r + f'^3/r.
    let r = 2f64.sqrt();
    let fp = 1.0 / (1.0 + r * r).sqrt();
    let exact = -r / (1.0 + r * r).powf(1.5) + fp / r + fp.powi(3) / r;
    let cat = catalog::catenoid();
    let lib_cat = euclidean_mse_residual(&cat.graph, 1.0.into(), 1.0.into(), DEFAULT_PDE_STEP)
        .map_err(|e| e.to_string())?
        .norm();
    Ok((
        dev <= TOL_CLOSED_FORM
            && arg <= TOL_ARG_MOD_PI
            && lib_mse <= TOL_EUCLIDEAN_MSE
            && oracle_mse <= TOL_EUCLIDEAN_MSE
            && lib_cat >= MIN_CATENOID_EUCLIDEAN
            && (lib_cat - exact).abs() <= 1e-6,
        format!(
            "immersion {dev:.2e}, phi - arg mod pi {arg:.2e}, helicoid Euclidean MSE {lib_mse:.2e} \
             (independent {oracle_mse:.2e}), catenoid at (1,1) {lib_cat:.6} (exact {exact:.6})"
        ),
    ))
}

/// `Σ c_ab x^a y^b` with exact partial derivatives.
struct Poly {
    coeffs: Vec<(u32, u32, C)>,
}

impl Poly {
    fn deriv(&self, dx: u32, dy: u32, x: C, y: C) -> C {
        let fall = |n: u32, k: u32| (0..k).map(|j| (n - j) as f64).product::<f64>();
        self.coeffs
            .iter()
            .filter(|(a, b, _)| *a >= dx && *b >= dy)
            .map(|&(a, b, c)| c * fall(a, dx) * fall(b, dy) * x.powu(a - dx) * y.powu(b - dy))
            .sum()
    }

    fn source(&self) -> String {
        let terms: Vec<String> =
            self.coeffs.iter().map(|(a, b, c)| format!("({:.17e})*x^{a}*y^{b}", c.re)).collect();
        terms.join(" + ")
    }

    /// `ψ(x, y) = φ(ix, y)`.
    fn wick(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&(a, b, c)| (a, b, c * C::i().powu(a))).collect() }
    }
}

fn mse_exact(p: &Poly, x: C, y: C) -> C {
    let (fx, fy) = (p.deriv(1, 0, x, y), p.deriv(0, 1, x, y));
    let (fxx, fyy, fxy) = (p.deriv(2, 0, x, y), p.deriv(0, 2, x, y), p.deriv(1, 1, x, y));
    (1.0 - fy * fy) * fxx + 2.0 * fx * fy * fxy + (1.0 - fx * fx) * fyy
}

fn bie_exact(p: &Poly, x: C, y: C) -> C {
    let (fx, fy) = (p.deriv(1, 0, x, y), p.deriv(0, 1, x, y));
    let (fxx, fyy, fxy) = (p.deriv(2, 0, x, y), p.deriv(0, 2, x, y), p.deriv(1, 1, x, y));
    (1.0 + fx * fx) * fyy - 2.0 * fx * fy * fxy - (1.0 - fy * fy) * fxx
}

fn wick() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0_f64;
    let mut oracle_gap = 0.0_f64;
    for _ in 0..50 {
        let degree = rng.gen_range(1..=4u32);
        let mut coeffs = Vec::new();
        for a in 0..=degree {
            for b in 0..=(degree - a) {
                coeffs.push((a, b, C::new(rng.gen_range(-1.0..1.0), 0.0)));
            }
        }
        let poly = Poly { coeffs };
        let (x, y) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let lhs_exact = mse_exact(&poly.wick(), x.into(), y.into());
        let rhs_exact = bie_exact(&poly, C::new(0.0, x), y.into());
        oracle_gap = oracle_gap.max((lhs_exact - rhs_exact).norm() / rhs_exact.norm().max(1.0));
        let phi = GraphFunction::parse("poly", &poly.source()).map_err(|e| e.to_string())?;
        let (l, r) = wick_check(&phi, x, y, DEFAULT_PDE_STEP).map_err(|e| e.to_string())?;
        let scale = rhs_exact.norm().max(1.0);
        worst = worst.max((l - r).norm() / scale).max((l - lhs_exact).norm() / scale).max((r - rhs_exact).norm() / scale);
    }
    let xy = GraphFunction::parse("xy", "x*y").map_err(|e| e.to_string())?;
    let (l, r) = wick_check(&xy, 1.0, 2.0, DEFAULT_PDE_STEP).map_err(|e| e.to_string())?;
    let target = C::new(0.0, -4.0);
    let xy_dev = (l - target).norm().max((r - target).norm());
    Ok((
        worst <= TOL_WICK_REL && oracle_gap <= 1e-12 && xy_dev <= TOL_WICK_REL,
        format!("50 polynomials, max relative gap {worst:.2e}; phi = xy at (1,2) gives {l:.9} (target -4i)"),
    ))
}

fn characteristic() -> Outcome {
    let mut pts = catalog::catenoid().domain().random_points(250, SEED).map_err(|e| e.to_string())?;
    pts.extend(DomainSpec::sector(0.05, 0.95, -PI, PI, 4, 4).random_points(250, SEED).map_err(|e| e.to_string())?);
    let (mut trip, mut uv_gap) = (0.0_f64, 0.0_f64);
    for &z in &pts {
        let zb = z.conj();
        let (u, v) = uv_from_zeta(z, zb).map_err(|e| e.to_string())?;
        let d = 1.0 + z * zb;
        uv_gap = uv_gap.max((u - z / d).norm()).max((v - zb / d).norm());
        let branch = if z.norm() > 1.0 { Branch::Secondary } else { Branch::Principal };
        let (a, b) = zeta_from_uv_branch(u, v, branch).map_err(|e| e.to_string())?;
        trip = trip.max((a - z).norm()).max((b - zb).norm());
    }
    let (mut band_ok, mut grad_gap, mut probes) = (true, 0.0_f64, 0);
    for entry in catalog::all() {
        for z in entry.domain().random_points(50, SEED).map_err(|e| e.to_string())? {
            let (u, v) = uv_from_zeta(z, z.conj()).map_err(|e| e.to_string())?;
            let four_uv = 4.0 * u * v;
            let p = entry.we_closed_form.eval(z).map_err(|e| e.to_string())?;
            let (x, y) = (p[0], p[1]);
            let grad = entry.graph.gradient_sq(x, y, graph_step(x.hypot(y))).map_err(|e| e.to_string())?;
            // |∇φ|² in closed form: 1/(1+R²) for the catenoid, 1/R² for the helicoid
            let exact = if entry.name == "helicoid" { 1.0 / (x * x + y * y) } else { 1.0 / (1.0 + x * x + y * y) };
            band_ok &= four_uv.im.abs() <= 1e-15 && (0.0..1.0).contains(&four_uv.re) && (0.0..1.0).contains(&grad);
            grad_gap = grad_gap.max((four_uv.re - grad).abs()).max((four_uv.re - exact).abs());
            probes += 1;
        }
    }
    Ok((
        trip <= TOL_ROUND_TRIP && uv_gap <= 1e-15 && band_ok && grad_gap <= TOL_GRADIENT,
        format!(
            "{} points, round trip {trip:.2e}; 4uv in [0,1) at {probes} graph probes: {band_ok}, \
             |4uv - |grad phi|^2| = {grad_gap:.2e}",
            pts.len()
        ),
    ))
}

/// `|ζ² z̄_ζ − z_ζ|` for `z = x + iy` read off the immersion.
fn lemma_oracle(entry: &CatalogEntry, z: C) -> Result<f64, String> {
    let zmap = |w: C| -> C {
        let p = immersion(&entry.weierstrass, &entry.frame, w).expect("stencil inside the domain");
        C::new(p[0], p[1])
    };
    let h = 1e-3;
    let du = d1(h, |t| zmap(z + t), lin1);
    let dv = d1(h, |t| zmap(z + C::new(0.0, t)), lin1);
    let z_zeta = 0.5 * (du - C::i() * dv);
    let zbar_zeta = 0.5 * (du.conj() - C::i() * dv.conj());
    Ok((z * z * zbar_zeta - z_zeta).norm())
}

fn lemma() -> Outcome {
    let (mut lib, mut oracle) = (0.0_f64, 0.0_f64);
    for entry in catalog::all() {
        for z in interior(&entry, 50, SEED) {
            lib = lib.max(lemma_residual(&entry.f, z).map_err(|e| e.to_string())?.norm());
            oracle = oracle.max(lemma_oracle(&entry, z)?);
        }
    }
    Ok((
        lib <= TOL_LEMMA && oracle <= TOL_LEMMA,
        format!("100 points, max residual {lib:.2e} (from the immersion {oracle:.2e})"),
    ))
}

fn family() -> Outcome {
    let cat = catalog::catenoid();
    let hel = catalog::helicoid();
    let probes = cat.domain().random_points(100, SEED).map_err(|e| e.to_string())?;
    let spec = FamilySpec::new(cat.weierstrass.clone(), FRAC_PI_2, 8).map_err(|e| e.to_string())?;
    let sweep = isometry_sweep(&spec, &probes[..20]).map_err(|e| e.to_string())?;
    let mut exact_mismatch = 0;
    let mut oracle_fd = 0.0_f64;
    for (theta, member) in spec.members() {
        for &z in &probes {
            let lam = conformal_factor(&member, z).map_err(|e| e.to_string())?;
            if lam != conformal_factor(&cat.weierstrass, z).map_err(|e| e.to_string())? {
                exact_mismatch += 1;
            }
        }
        for &z in &probes[..20] {
            let (e0, _, _) = first_form(|w| family_closed(0.0, w), z, 1e-3);
            let (e, _, _) = first_form(|w| family_closed(theta, w), z, 1e-3);
            oracle_fd = oracle_fd.max((e - e0).abs() / (1.0 + e0));
        }
    }
    let rotated = rotate_data(&cat.weierstrass, FRAC_PI_2);
    let mut rot = 0.0_f64;
    for &z in &probes {
        let a = rotated.eval_m(z).map_err(|e| e.to_string())?;
        let b = hel.weierstrass.eval_m(z).map_err(|e| e.to_string())?;
        rot = rot.max((a - b).norm()).max((b - datum("helicoid", z)).norm());
    }
    Ok((
        sweep.closed_form == 0.0
            && exact_mismatch == 0
            && sweep.finite_difference <= TOL_FAMILY_FD
            && oracle_fd <= TOL_FAMILY_FD
            && rot <= TOL_ROTATION,
        format!(
            "8 steps: closed-form deviation {:e} ({exact_mismatch} inexact of {}), FD E deviation {:.2e} \
             (independent {oracle_fd:.2e}); rotation by pi/2 vs helicoid {rot:.2e}",
            sweep.closed_form,
            probes.len() * 9,
            sweep.finite_difference
        ),
    ))
}

/// Isothermality and `φ_ρ` of the closed form pulled back to `ρ`.
fn rho_oracle(entry: &CatalogEntry, rho: C) -> (f64, f64, f64) {
    let closed = |r: C| {
        if entry.name == "helicoid" {
            helicoid_closed(C::i() / (2.0 * r))
        } else {
            catenoid_closed(1.0 / (2.0 * r))
        }
    };
    let zeta = if entry.name == "helicoid" { C::i() / (2.0 * rho) } else { 1.0 / (2.0 * rho) };
    let h = 1e-3;
    let xa = d1(h, |t| closed(rho + t), lin3);
    let xb = d1(h, |t| closed(rho + C::new(0.0, t)), lin3);
    let (e, f, g) = (ldot(&xa, &xa), ldot(&xa, &xb), ldot(&xb, &xb));
    let phi_rho = 0.5 * C::new(xa[2], -xb[2]);
    ((e - g).abs() / (1.0 + e), f.abs() / (1.0 + e), (phi_rho - zeta).norm())
}

fn hodographic() -> Outcome {
    let (mut len, mut ang, mut phi) = (0.0_f64, 0.0_f64, 0.0_f64);
    let (mut o_len, mut o_ang, mut o_phi) = (0.0_f64, 0.0_f64, 0.0_f64);
    let (mut jac, mut jac_exact) = (0.0_f64, 0.0_f64);
    for entry in catalog::all() {
        let zetas = interior(&entry, 25, SEED);
        let rho: Vec<C> = zetas.iter().map(|&z| entry.f.eval(z)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let r = isothermal_check(&entry.weierstrass, entry.frame.phi_sign, &entry.f, &rho, DEFAULT_PDE_STEP)
            .map_err(|e| e.to_string())?;
        len = len.max(r.max_length_dev);
        ang = ang.max(r.max_angle_dev);
        phi = phi.max(r.max_phi_rho_dev);
        for &p in &rho {
            let (l, a, f) = rho_oracle(&entry, p);
            o_len = o_len.max(l);
            o_ang = o_ang.max(a);
            o_phi = o_phi.max(f);
        }
        for z in entry.domain().random_points(25, SEED + 1).map_err(|e| e.to_string())? {
            let p = entry.we_closed_form.eval(z).map_err(|e| e.to_string())?;
            let (x, y) = (p[0], p[1]);
            let (direct, formula) =
                jacobian_identity(&entry.graph, x, y, graph_step(x.hypot(y))).map_err(|e| e.to_string())?;
            let r2 = x * x + y * y;
            // ¼(φ_xy² − φ_xxφ_yy): 1/(4R⁴) for the helicoid, −f''f'/(4R) for asinh R
            let exact = if entry.name == "helicoid" {
                1.0 / (4.0 * r2 * r2)
            } else {
                let rr = r2.sqrt();
                let fp = 1.0 / (1.0 + r2).sqrt();
                let fpp = -rr / (1.0 + r2).powf(1.5);
                -0.25 * fpp * fp / rr
            };
            jac = jac.max((direct - formula).abs() / formula.abs().max(1e-8));
            jac_exact = jac_exact.max((direct - exact).abs() / exact.abs().max(1e-8));
        }
    }
    Ok((
        phi <= TOL_PHI_RHO
            && len <= TOL_ISOTHERMAL
            && ang <= TOL_ISOTHERMAL
            && o_phi <= TOL_PHI_RHO
            && o_len <= TOL_ISOTHERMAL
            && o_ang <= TOL_ISOTHERMAL
            && jac <= TOL_JACOBIAN_REL
            && jac_exact <= TOL_JACOBIAN_REL,
        format!(
            "|phi_rho - zeta| {phi:.2e} (closed form {o_phi:.2e}), |E-G|/(1+E) {len:.2e} ({o_len:.2e}), \
             |F|/(1+E) {ang:.2e} ({o_ang:.2e}); Jacobian relative gap {jac:.2e} (vs exact {jac_exact:.2e}) at 50 probes"
        ),
    ))
}

fn run_cli(args: &[&str]) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_maxsurf")).args(args).output().map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "killed by a signal".to_string())
}

fn infrastructure() -> Outcome {
    let entry = catalog::catenoid();
    let domain = entry.domain().with_resolution(16, 32);
    let mesh = build_mesh(&entry.weierstrass, &domain, &entry.frame).map_err(|e| e.to_string())?;
    let obj = export_obj(&mesh);
    let (verts, faces) = parse_obj(std::str::from_utf8(&obj).unwrap()).map_err(|e| e.to_string())?;
    let mut obj_gap = 0.0_f64;
    for (a, b) in verts.iter().zip(&mesh.vertices) {
        obj_gap = obj_gap.max(max_abs(sub(*a, *b)));
    }
    let faces_ok = verts.len() == mesh.vertices.len() && faces == mesh.faces;
    let csv = export_csv(&mesh.samples);
    let rows = parse_csv(std::str::from_utf8(&csv).unwrap()).map_err(|e| e.to_string())?;
    let mut csv_gap = 0.0_f64;
    for (r, s) in rows.iter().zip(&mesh.samples) {
        let want = [
            s.zeta.re,
            s.zeta.im,
            s.position[0],
            s.position[1],
            s.position[2],
            s.conformal_factor_sq,
            s.mean_curvature,
            s.normal[0],
            s.normal[1],
            s.normal[2],
        ];
        for (a, b) in r.iter().zip(want) {
            csv_gap = csv_gap.max((a - b).abs());
        }
    }
    let again = build_mesh(&entry.weierstrass, &domain, &entry.frame).map_err(|e| e.to_string())?;
    let deterministic_lib = export_obj(&again) == obj && export_csv(&again.samples) == csv;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let (r1, r2, h1, h2) = (path("r1.txt"), path("r2.txt"), path("h1.obj"), path("h2.obj"));
    let verify = run_cli(&["verify", "--example", "catenoid", "--out", &r1])?;
    run_cli(&["verify", "--example", "catenoid", "--out", &r2])?;
    let mesh_code = run_cli(&["mesh", "--example", "helicoid", "--nr", "64", "--nangle", "128", "--out", &h1])?;
    run_cli(&["mesh", "--example", "helicoid", "--nr", "64", "--nangle", "128", "--out", &h2])?;
    let nosuch = run_cli(&["mesh", "--example", "nosuch"])?;
    let violated = run_cli(&["verify", "--example", "catenoid", "--tol-maximality", "1e-20"])?;
    let read = |p: &str| std::fs::read(p).unwrap_or_default();
    let helicoid_vertices = String::from_utf8_lossy(&read(&h1)).lines().filter(|l| l.starts_with("v ")).count();
    let deterministic_cli = read(&r1) == read(&r2) && read(&h1) == read(&h2) && !read(&r1).is_empty();
    let codes = (verify, mesh_code, nosuch, violated);
    Ok((
        obj_gap <= TOL_ROUND_TRIP_IO
            && csv_gap <= TOL_ROUND_TRIP_IO
            && faces_ok
            && deterministic_lib
            && deterministic_cli
            && codes == (0, 0, 2, 1)
            && helicoid_vertices == 8192,
        format!(
            "OBJ gap {obj_gap:.1e}, CSV gap {csv_gap:.1e}, faces exact {faces_ok}, deterministic {}; \
             exit codes verify/mesh/nosuch/violated = {codes:?}, helicoid mesh {helicoid_vertices} vertices",
            deterministic_lib && deterministic_cli
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("maximality", maximality),
        ("metric formula", metric),
        ("Gauss map", gauss),
        ("catenoid closed form", catenoid_closed_form),
        ("helicoid closed form", helicoid_closed_form),
        ("Wick rotation", wick),
        ("characteristic round trip", characteristic),
        ("reconstruction lemma", lemma),
        ("associated family", family),
        ("hodographic coordinates", hodographic),
        ("infrastructure", infrastructure),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        println!("criterion {:>2} {} {name}: {detail}", k + 1, if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
