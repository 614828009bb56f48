use maxsurf::catalog::{self, graph_step, CatalogEntry};
use maxsurf::hodograph::{mse_residual, partials, Partials};
use maxsurf::surface::immersion;
use maxsurf::{Complex64 as C, Error};

fn mse(p: &Partials) -> C {
    (1.0 - p.fx * p.fx) * p.fyy + 2.0 * p.fx * p.fy * p.fxy + (1.0 - p.fy * p.fy) * p.fxx
}

#[test]
fn catalog_graphs_are_maximal_on_a_grid() {
    let cat = catalog::catenoid();
    let hel = catalog::helicoid();
    let mut probes = 0;
    for i in 0..20 {
        for j in 0..20 {
            // catenoid: the square [-1, 1]^2 minus a disk around the origin
            let (x, y) = (-1.0 + 2.0 * i as f64 / 19.0, -1.0 + 2.0 * j as f64 / 19.0);
            if x.hypot(y) > 0.1 {
                let r = mse_residual(&cat.graph, x.into(), y.into(), graph_step(x.hypot(y))).unwrap();
                assert!(r.norm() <= 1e-6, "catenoid at ({x}, {y}): {r}");
                probes += 1;
            }
            // helicoid: x > 0 and outside the unit disk, where the graph is spacelike
            let (x, y) = (0.3 + 1.3 * i as f64 / 19.0, -1.5 + 3.0 * j as f64 / 19.0);
            if x.hypot(y) > 1.02 {
                let r = mse_residual(&hel.graph, x.into(), y.into(), graph_step(x.hypot(y))).unwrap();
                assert!(r.norm() <= 1e-6, "helicoid at ({x}, {y}): {r}");
                probes += 1;
            }
        }
    }
    assert!(probes > 500);
}

/// Solves `x + iy = target` for ζ on the immersion by Newton steps with the
/// Wirtinger derivatives `½(Φ₁ + iΦ₂)` and `½(Φ̄₁ + iΦ̄₂)`.
fn invert(entry: &CatalogEntry, target: C, mut zeta: C) -> Result<C, Error> {
    let i = C::i();
    for _ in 0..30 {
        let p = immersion(&entry.weierstrass, &entry.frame, zeta)?;
        let r = target - C::new(p[0], p[1]);
        let phi = entry.weierstrass.integrands(zeta, entry.frame.phi_sign)?;
        let a = 0.5 * (phi[0] + i * phi[1]);
        let b = 0.5 * (phi[0].conj() + i * phi[1].conj());
        let step = (a.conj() * r - b * r.conj()) / (a.norm_sqr() - b.norm_sqr());
        zeta += step;
        if step.norm() <= 1e-15 * zeta.norm() {
            return Ok(zeta);
        }
    }
    Err(Error::NewtonDivergence(target))
}

#[test]
fn reconstructed_graphs_have_the_closed_form_residual_scale() {
    for entry in catalog::all() {
        let zetas = entry.domain().random_points(8, 11).unwrap();
        let (mut worst_we, mut worst_closed) = (0.0_f64, 0.0_f64);
        for z0 in zetas {
            let p = immersion(&entry.weierstrass, &entry.frame, z0).unwrap();
            let (x0, y0) = (p[0], p[1]);
            let h = graph_step(x0.hypot(y0));
            let phi_we = |x: C, y: C| -> Result<C, Error> {
                let z = invert(&entry, C::new(x.re, y.re), z0)?;
                Ok(immersion(&entry.weierstrass, &entry.frame, z)?[2].into())
            };
            let we = mse(&partials(phi_we, x0.into(), y0.into(), h).unwrap()).norm();
            let closed = mse_residual(&entry.graph, x0.into(), y0.into(), h).unwrap().norm();
            worst_we = worst_we.max(we);
            worst_closed = worst_closed.max(closed);
        }
        assert!(worst_we <= 1e-6 && worst_closed <= 1e-6, "{}: {worst_we} vs {worst_closed}", entry.name);
        // same noise floor, within an order of magnitude
        let floor = 1e-9;
        let ratio = worst_we.max(floor) / worst_closed.max(floor);
        assert!((0.1..=10.0).contains(&ratio), "{}: {worst_we:e} vs {worst_closed:e}", entry.name);
    }
}
