mod args;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use maxsurf::catalog::{self, CatalogEntry};
use maxsurf::contour::{Integrator, QuadratureRegistry};
use maxsurf::expr::{parse, Expr, PoleDecl, PoleSource};
use maxsurf::family::{isometry_sweep, FamilySpec};
use maxsurf::surf_io::{
    build_mesh_with, export_csv, export_obj, export_report, DomainSpec, ReportMetadata, ReportRow, VerificationReport,
};
use maxsurf::surface::{mean_curvature, Frame, PhiSign, StencilEvaluator, WeierstrassData, DEFAULT_STEP};
use maxsurf::verify::{CheckRegistry, Context, Suite};
use maxsurf::Error;
use num_complex::Complex64;

use args::{Cli, Command, DataArgs, ExampleArgs, FamilyArgs, MeshArgs, SuiteArg, VerifyArgs};

const USAGE: u8 = 2;
const FAILED: u8 = 1;

/// Radius of the exclusion disk added around declared poles inside the sector.
const POLE_EXCLUSION: f64 = 0.05;

const FAMILY_CHECKS: [(&str, f64); 3] = [("isometry_closed_form", 1e-9), ("isometry_fd", 1e-4), ("family_maximality", 1e-4)];

#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: USAGE, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownName { .. }
            | Error::InvalidDomain(_)
            | Error::InvalidData(_)
            | Error::InvalidArgument(_)
            | Error::Parse { .. }
            | Error::DomainViolation(_) => USAGE,
            _ => FAILED,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args().collect()))
}

fn run(argv: Vec<String>) -> u8 {
    let (argv, tols) = match args::split_tolerances(argv) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return USAGE;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { USAGE } else { 0 };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return USAGE;
        }
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let outcome = match cli.command {
        Command::Example(a) => example(a, &tols),
        Command::Mesh(a) => no_tolerances(&tols).and_then(|_| mesh(a)),
        Command::Verify(a) => verify(a, &tols, &[Suite::Surface, Suite::Catalog, Suite::Hodograph]),
        Command::Hodograph(a) => verify(a, &tols, &[Suite::Hodograph]),
        Command::Family(a) => family(a, &tols),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}

fn no_tolerances(tols: &BTreeMap<String, f64>) -> Result<(), Failure> {
    if tols.is_empty() {
        Ok(())
    } else {
        Err(Failure::usage("--tol-* flags do not apply to mesh"))
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn finish(report: &VerificationReport, out: Option<&Path>) -> Outcome {
    print!("{}", report.summary());
    if let Some(path) = out {
        write(path, &export_report(report)?)?;
        println!("report written to {}", path.display());
    }
    Ok(if report.all_pass() { 0 } else { FAILED })
}

/// Everything a subcommand needs about the surface.
struct Setup {
    entry: Option<CatalogEntry>,
    data: WeierstrassData,
    frame: Frame,
    f: Option<Expr>,
    integrator: Integrator,
}

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::usage)
}

fn apply_domain(mut domain: DomainSpec, a: &DataArgs) -> Result<DomainSpec, Failure> {
    if let Some(src) = &a.domain {
        let [r0, r1, a0, a1] = usage(args::parse_sector(src))?;
        domain = DomainSpec { r_min: r0, r_max: r1, angle_min: a0, angle_max: a1, ..domain };
    }
    domain.n_r = a.nr.unwrap_or(domain.n_r);
    domain.n_angle = a.nangle.unwrap_or(domain.n_angle);
    for e in &a.exclusions {
        let (c, r): (Complex64, f64) = usage(args::parse_tagged(e, "--exclude"))?;
        domain.exclusions.push((c, r));
    }
    domain.validate()?;
    Ok(domain)
}

fn setup(a: &DataArgs) -> Result<Setup, Failure> {
    let sign: PhiSign = a.phi_sign.into();
    let basepoint = a.basepoint.as_deref().map(args::parse_complex).transpose().map_err(Failure::usage)?;
    let rule = QuadratureRegistry::default().get(&a.rule)?;
    let integrator = Integrator::default().with_rule(rule);

    if let Some(name) = &a.source.example {
        let entry = catalog::lookup(name)?;
        let domain = apply_domain(entry.domain().clone(), a)?;
        let mut entry = entry.with_domain(domain)?.with_sign(sign)?;
        if let Some(b) = basepoint {
            let mut offsets = entry.we_closed_form.eval(b)?;
            offsets[2] *= sign.factor();
            entry.frame = Frame { basepoint: b, offsets, phi_sign: sign };
        }
        return Ok(Setup {
            data: entry.weierstrass.clone(),
            frame: entry.frame,
            f: Some(entry.f.clone()),
            entry: Some(entry),
            integrator,
        });
    }

    let src = a.source.data_expr.as_deref().expect("clap enforces one data source");
    let m = parse(src)?;
    let mut poles = Vec::new();
    for p in &a.poles {
        let (c, order): (Complex64, u32) = usage(args::parse_tagged(p, "--pole"))?;
        if order == 0 {
            return Err(Failure::usage(format!("--pole '{p}': order must be at least 1")));
        }
        poles.push(PoleDecl::new(c, order, PoleSource::User));
    }
    if a.domain.is_none() {
        return Err(Failure::usage("--data-expr needs --domain"));
    }
    let (n_r, n_a) = catalog::DEFAULT_RESOLUTION;
    let mut domain = apply_domain(DomainSpec::sector(1.0, 2.0, 0.0, 1.0, n_r, n_a), a)?;
    for p in &poles {
        if domain.in_sector(p.location) && !domain.excluded(p.location) {
            domain.exclusions.push((p.location, POLE_EXCLUSION));
        }
    }
    let data = WeierstrassData::new(Some(src.to_string()), m, poles, domain)?;
    let f = a.f_expr.as_deref().map(parse).transpose()?;
    let base = match basepoint {
        Some(b) => b,
        None => data.default_basepoint()?,
    };
    Ok(Setup { entry: None, frame: Frame::new(base).with_sign(sign), data, f, integrator })
}

fn example(a: ExampleArgs, tols: &BTreeMap<String, f64>) -> Outcome {
    let Some(name) = a.name else {
        for e in catalog::all() {
            println!("{:<10} M = {}   F = {}   domain {}", e.name, e.weierstrass.expr(), e.f, e.domain());
        }
        return Ok(0);
    };
    let entry = catalog::lookup(&name)?;
    println!("{}", entry.name);
    println!("  M      = {}", entry.weierstrass.expr());
    println!("  F      = {}", entry.f);
    println!("  graph  = {}", entry.graph.name);
    println!("  domain = {}", entry.domain());
    let b = entry.frame.basepoint;
    println!("  basepoint {}{:+}i, offsets {:?}", b.re, b.im, entry.frame.offsets);
    let mut report = catalog::cross_check(&entry, a.samples, a.seed)?;
    let known: Vec<&str> = report.rows.iter().map(|r| r.check.as_str()).collect();
    for name in tols.keys() {
        if !known.contains(&name.as_str()) {
            return Err(Failure::usage(format!("unknown check '{name}' for example")));
        }
    }
    for row in &mut report.rows {
        if let Some(t) = tols.get(&row.check) {
            *row = ReportRow::new(row.check.clone(), row.max_residual, *t, row.samples);
        }
    }
    finish(&report, a.out.as_deref())
}

fn mesh(a: MeshArgs) -> Outcome {
    let s = setup(&a.data)?;
    let mesh = build_mesh_with(&s.integrator, &s.data, &s.data.domain, &s.frame, a.step)?;
    write(&a.out, &export_obj(&mesh))?;
    println!(
        "{}: {} vertices, {} faces written to {}",
        s.data.label(),
        mesh.vertices.len(),
        mesh.faces.len(),
        a.out.display()
    );
    if let Some(csv) = &a.csv {
        write(csv, &export_csv(&mesh.samples))?;
        println!("{} samples written to {}", mesh.samples.len(), csv.display());
    }
    Ok(0)
}

fn verify(a: VerifyArgs, tols: &BTreeMap<String, f64>, default_suites: &[Suite]) -> Outcome {
    let s = setup(&a.data)?;
    let suites: Vec<Suite> = if a.suites.is_empty() {
        default_suites.to_vec()
    } else {
        a.suites
            .iter()
            .map(|s| match s {
                SuiteArg::Surface => Suite::Surface,
                SuiteArg::Catalog => Suite::Catalog,
                SuiteArg::Hodograph => Suite::Hodograph,
            })
            .collect()
    };
    let mut ctx = Context::new(&s.data, s.frame, a.samples, a.seed)?;
    ctx.entry = s.entry.as_ref();
    ctx.f = s.f.as_ref();
    ctx.integrator = s.integrator.clone();
    let meta = ReportMetadata::new(s.data.label(), s.data.domain.to_string(), a.seed);
    let report = CheckRegistry::default().run(&ctx, &suites, tols, meta)?;
    finish(&report, a.out.as_deref())
}

fn family(a: FamilyArgs, tols: &BTreeMap<String, f64>) -> Outcome {
    for name in tols.keys() {
        if !FAMILY_CHECKS.iter().any(|(n, _)| n == name) {
            return Err(Failure::usage(format!("unknown check '{name}' for family")));
        }
    }
    let s = setup(&a.data)?;
    let spec = if a.extended {
        FamilySpec::extended(s.data.clone(), a.theta, a.steps)?
    } else {
        FamilySpec::new(s.data.clone(), a.theta, a.steps)?
    };
    if a.samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    let probes = s.data.domain.random_points(a.samples, a.seed)?;
    let dev = isometry_sweep(&spec, &probes)?;

    let members = spec.members();
    let mut worst_h = 0.0_f64;
    for (k, (theta, member)) in members.iter().enumerate() {
        let stencil = StencilEvaluator::new(&s.integrator, member, s.frame.phi_sign);
        for &z in &probes {
            worst_h = worst_h.max(mean_curvature(&stencil.forms_at(z, DEFAULT_STEP)?)?.abs());
        }
        if let Some(dir) = &a.mesh_dir {
            std::fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
            let mesh = build_mesh_with(&s.integrator, member, &member.domain, &s.frame, DEFAULT_STEP)?;
            let path = dir.join(format!("member_{k:02}.obj"));
            write(&path, &export_obj(&mesh))?;
            println!("theta = {theta:.6}: {} vertices written to {}", mesh.vertices.len(), path.display());
        }
    }

    let tol = |name: &str| {
        tols.get(name).copied().unwrap_or_else(|| FAMILY_CHECKS.iter().find(|(n, _)| *n == name).expect("known check").1)
    };
    let n = probes.len() * members.len();
    let rows = vec![
        ReportRow::new("isometry_closed_form", dev.closed_form, tol("isometry_closed_form"), n),
        ReportRow::new("isometry_fd", dev.finite_difference, tol("isometry_fd"), n),
        ReportRow::new("family_maximality", worst_h, tol("family_maximality"), n),
    ];
    let meta = ReportMetadata::new(s.data.label(), s.data.domain.to_string(), a.seed).with_steps(a.steps);
    let mut report = VerificationReport::new(meta, rows);
    report.notes.push(format!(
        "theta = {}",
        spec.thetas().iter().map(|t| format!("{t:.6}")).collect::<Vec<_>>().join(", ")
    ));
    finish(&report, a.out.as_deref())
}
