use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxsurf::expr::parse;
use maxsurf::surface::PhiSign;
use num_complex::Complex64;

const TOL_HELP: &str = "\
Tolerance overrides:
  --tol-<check> <VALUE>  Replace the default tolerance of a named check (VALUE > 0).
                         Checks: gauss_norm, gauss_sigma, conformality, metric,
                         maximality, spacelike, holomorphy, declared_poles,
                         immersion_closed_form, graph_relation, f_prime_equals_m,
                         graph_mse, hodographic_form, characteristic_round_trip,
                         lemma, isothermal_length, isothermal_angle, phi_rho, wick,
                         gradient_band, jacobian; for `family` also
                         isometry_closed_form, isometry_fd, family_maximality.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error.";

#[derive(Debug, Parser)]
#[command(name = "maxsurf", version, about = "Maximal surfaces in Lorentz-Minkowski space from Weierstrass data")]
pub struct Cli {
    /// Worker threads for sampling (default: available parallelism).
    #[arg(long, global = true, env = "MAXSURF_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog entries, or describe one and cross-check its closed forms.
    #[command(after_help = TOL_HELP)]
    Example(ExampleArgs),
    /// Sample a surface and write an OBJ mesh (and optionally a CSV table).
    Mesh(MeshArgs),
    /// Run the verification suites and write a report.
    #[command(after_help = TOL_HELP)]
    Verify(VerifyArgs),
    /// Run the hodograph suite (characteristic and rho coordinates, graph PDEs).
    #[command(after_help = TOL_HELP)]
    Hodograph(VerifyArgs),
    /// Sweep the associated family M -> exp(i theta) M.
    #[command(after_help = TOL_HELP)]
    Family(FamilyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for PhiSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => PhiSign::Plus,
            SignArg::Minus => PhiSign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum SuiteArg {
    Surface,
    Catalog,
    Hodograph,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct SourceArgs {
    /// Catalog entry (catenoid, helicoid).
    #[arg(long, group = "source")]
    pub example: Option<String>,
    /// Weierstrass datum M as an expression in zeta, e.g. "-1/(2*zeta^2)".
    #[arg(long, group = "source", allow_hyphen_values = true)]
    pub data_expr: Option<String>,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Declared pole of the expression as `c:order`, e.g. `0:2` or `1+2i:1` (repeatable).
    #[arg(long = "pole", value_name = "C:ORDER", requires = "data_expr")]
    pub poles: Vec<String>,
    /// Antiderivative F of the expression, enabling the hodographic checks.
    #[arg(long, value_name = "EXPR", requires = "data_expr", allow_hyphen_values = true)]
    pub f_expr: Option<String>,
    /// Annular sector `rmin,rmax,amin,amax`; entries may be expressions such as `-3*pi/4`.
    #[arg(long, value_name = "RMIN,RMAX,AMIN,AMAX", allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Excluded disk `c:radius` (repeatable); declared poles get one automatically.
    #[arg(long = "exclude", value_name = "C:RADIUS")]
    pub exclusions: Vec<String>,
    /// Number of rings.
    #[arg(long)]
    pub nr: Option<usize>,
    /// Number of spokes.
    #[arg(long)]
    pub nangle: Option<usize>,
    /// Integration basepoint (default: centre of the sector).
    #[arg(long, value_name = "C", allow_hyphen_values = true)]
    pub basepoint: Option<String>,
    /// Sign of the phi integrand.
    #[arg(long, value_enum, default_value = "plus")]
    pub phi_sign: SignArg,
    /// Quadrature rule (gk15, gk21).
    #[arg(long, default_value = "gk15")]
    pub rule: String,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// Entry to describe; lists all entries when omitted.
    pub name: Option<String>,
    /// Random sample points for the cross-check.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// OBJ output file.
    #[arg(long)]
    pub out: PathBuf,
    /// CSV sample table.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Finite-difference step for the per-vertex curvature.
    #[arg(long, default_value_t = 1e-4)]
    pub step: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Suites to run (default: all for `verify`, hodograph for `hodograph`).
    #[arg(long = "suite", value_enum)]
    pub suites: Vec<SuiteArg>,
    /// Random sample points per check.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Largest angle of the sweep.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
    pub theta: f64,
    /// Number of steps; members are theta*k/steps for k = 0..=steps.
    #[arg(long, default_value_t = 8)]
    pub steps: u32,
    /// Allow theta outside [0, pi/2].
    #[arg(long)]
    pub extended: bool,
    /// Random probe points.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for one OBJ mesh per member.
    #[arg(long)]
    pub mesh_dir: Option<PathBuf>,
    /// Report file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Splits `--tol-NAME VALUE` and `--tol-NAME=VALUE` out of argv.
pub fn split_tolerances(argv: Vec<String>) -> Result<(Vec<String>, BTreeMap<String, f64>), String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut tols = BTreeMap::new();
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        let Some(spec) = arg.strip_prefix("--tol-") else {
            rest.push(arg);
            continue;
        };
        let (name, value) = match spec.split_once('=') {
            Some((n, v)) => (n.to_string(), v.to_string()),
            None => (spec.to_string(), it.next().ok_or_else(|| format!("--tol-{spec} needs a value"))?),
        };
        let tol: f64 = value.parse().map_err(|_| format!("--tol-{name}: '{value}' is not a number"))?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(format!("--tol-{name}: tolerance must be positive"));
        }
        tols.insert(name.replace('-', "_"), tol);
    }
    Ok((rest, tols))
}

/// A constant complex number written as an expression, e.g. `1-2i` or `exp(i*pi/4)`.
pub fn parse_complex(src: &str) -> Result<Complex64, String> {
    let e = parse(src).map_err(|e| format!("'{src}': {e}"))?;
    let a = e.eval(Complex64::new(0.3, 0.1)).map_err(|e| format!("'{src}': {e}"))?;
    let b = e.eval(Complex64::new(-1.7, 2.9)).map_err(|e| format!("'{src}': {e}"))?;
    if a != b {
        return Err(format!("'{src}' is not a constant"));
    }
    Ok(a)
}

pub fn parse_real(src: &str) -> Result<f64, String> {
    let c = parse_complex(src)?;
    if c.im != 0.0 {
        return Err(format!("'{src}' is not real"));
    }
    Ok(c.re)
}

/// `c:value` with the value after the last colon.
pub fn parse_tagged<T: std::str::FromStr>(src: &str, what: &str) -> Result<(Complex64, T), String> {
    let (c, v) = src.rsplit_once(':').ok_or_else(|| format!("{what} '{src}' must look like c:value"))?;
    let value = v.trim().parse().map_err(|_| format!("{what} '{src}': bad value '{v}'"))?;
    Ok((parse_complex(c)?, value))
}

pub fn parse_sector(src: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("--domain '{src}' needs four comma-separated values"));
    }
    let mut out = [0.0; 4];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_real(p.trim())?;
    }
    Ok(out)
}
