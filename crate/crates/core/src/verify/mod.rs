//! Named numerical checks, grouped into suites and selected at run time.
//!
//! Each check measures one residual over a shared [`Context`]; the registry
//! turns measurements into report rows against default or overridden
//! tolerances.

mod checks;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::catalog::CatalogEntry;
use crate::contour::{period_report, Integrator};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::surf_io::{ReportMetadata, ReportRow, VerificationReport};
use crate::surface::{conformal_factor, Frame, WeierstrassData, DEFAULT_STEP};

pub use checks::builtin_checks;

/// Default number of sample points per check.
pub const DEFAULT_SAMPLES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Surface,
    Catalog,
    Hodograph,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Surface, Suite::Catalog, Suite::Hodograph];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Surface => "surface",
            Suite::Catalog => "catalog",
            Suite::Hodograph => "hodograph",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inputs shared by every check of a run.
pub struct Context<'a> {
    pub data: &'a WeierstrassData,
    pub frame: Frame,
    pub entry: Option<&'a CatalogEntry>,
    /// Antiderivative of `M`, for the hodographic checks.
    pub f: Option<&'a Expr>,
    pub points: Vec<Complex64>,
    pub seed: u64,
    /// Finite-difference step for the fundamental forms.
    pub h: f64,
    pub integrator: Integrator,
}

impl<'a> Context<'a> {
    pub fn new(data: &'a WeierstrassData, frame: Frame, samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidArgument("need at least one sample".into()));
        }
        Ok(Context {
            data,
            frame,
            entry: None,
            f: None,
            points: data.domain.random_points(samples, seed)?,
            seed,
            h: DEFAULT_STEP,
            integrator: Integrator::default(),
        })
    }

    /// Context for a catalog entry, with its frame and antiderivative.
    pub fn for_entry(entry: &'a CatalogEntry, samples: usize, seed: u64) -> Result<Self> {
        let mut ctx = Context::new(&entry.weierstrass, entry.frame, samples, seed)?;
        ctx.entry = Some(entry);
        ctx.f = Some(&entry.f);
        Ok(ctx)
    }
}

/// Largest residual over the samples the check used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub residual: f64,
    pub samples: usize,
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn suite(&self) -> Suite;
    fn default_tolerance(&self) -> f64;
    /// `None` when the context lacks what the check needs.
    fn measure(&self, ctx: &Context) -> Option<Result<Measurement>>;
}

pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut reg = CheckRegistry { checks: Vec::new() };
        for c in builtin_checks() {
            reg.register(c);
        }
        reg
    }
}

impl CheckRegistry {
    /// Adds a check, replacing any check already registered under its name.
    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.retain(|c| c.name() != check.name());
        self.checks.push(check);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Check> {
        self.checks
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::UnknownName { kind: "check", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn checks(&self) -> impl Iterator<Item = &dyn Check> {
        self.checks.iter().map(|c| c.as_ref())
    }

    pub fn in_suite(&self, suite: Suite) -> impl Iterator<Item = &dyn Check> {
        self.checks().filter(move |c| c.suite() == suite)
    }

    /// Runs every applicable check of the suites. Overrides are keyed by check
    /// name; a check that errors yields a failing row and a note.
    pub fn run(
        &self,
        ctx: &Context,
        suites: &[Suite],
        overrides: &BTreeMap<String, f64>,
        metadata: ReportMetadata,
    ) -> Result<VerificationReport> {
        for (name, tol) in overrides {
            self.get(name)?;
            if !(*tol > 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance for {name} must be positive")));
            }
        }
        let mut report = VerificationReport::new(metadata, Vec::new());
        for check in self.checks().filter(|c| suites.contains(&c.suite())) {
            let Some(outcome) = check.measure(ctx) else { continue };
            let tol = overrides.get(check.name()).copied().unwrap_or(check.default_tolerance());
            let row = match outcome {
                Ok(m) => ReportRow::new(check.name(), m.residual, tol, m.samples),
                Err(e) => {
                    report.notes.push(format!("{}: {e}", check.name()));
                    ReportRow::new(check.name(), f64::INFINITY, tol, 0)
                }
            };
            report.rows.push(row);
        }
        if suites.contains(&Suite::Surface) {
            report.notes.extend(surface_notes(ctx));
        }
        if let Some(entry) = ctx.entry {
            report.notes.extend(crate::catalog::sign_note(entry));
        }
        if report.rows.is_empty() {
            return Err(Error::EmptyReport);
        }
        Ok(report)
    }
}

/// Periods around declared poles and the smallest sampled conformal factor.
fn surface_notes(ctx: &Context) -> Vec<String> {
    let mut notes = Vec::new();
    for pole in &ctx.data.poles {
        match period_report(ctx.data, pole) {
            Ok(p) => {
                let coords = ["x", "y", "phi"];
                let multi: Vec<String> = (0..3)
                    .filter(|&k| !p.single_valued[k])
                    .map(|k| format!("{} (period {:.6})", coords[k], p.periods[k].re))
                    .collect();
                let desc = if multi.is_empty() { "all coordinates single-valued".to_string() } else { format!("multivalued: {}", multi.join(", ")) };
                notes.push(format!("pole at {}: {desc}", pole.location));
            }
            Err(e) => notes.push(format!("pole at {}: period not computed ({e})", pole.location)),
        }
    }
    let min = ctx
        .points
        .iter()
        .filter_map(|&z| conformal_factor(ctx.data, z).ok())
        .fold(f64::INFINITY, f64::min);
    if min.is_finite() {
        notes.push(format!("smallest sampled lambda_sq = {min:.6e}"));
        if min < 1e-12 {
            notes.push("lambda_sq vanishes at a sample point (branch point of the metric)".into());
        }
    }
    notes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_entries_pass_every_suite() {
        let reg = CheckRegistry::default();
        for e in catalog::all() {
            let entry = e.with_domain(e.domain().with_resolution(16, 32)).unwrap();
            let ctx = Context::for_entry(&entry, 12, 3).unwrap();
            let meta = ReportMetadata::new(entry.name, entry.domain().to_string(), 3);
            let report = reg.run(&ctx, &Suite::ALL, &BTreeMap::new(), meta).unwrap();
            assert!(report.all_pass(), "{}", report.summary());
            assert!(report.rows.len() >= 15);
        }
    }

    #[test]
    fn overrides_are_validated_and_applied() {
        let reg = CheckRegistry::default();
        let entry = catalog::catenoid();
        let ctx = Context::for_entry(&entry, 4, 1).unwrap();
        let meta = || ReportMetadata::new("catenoid", "d", 1);
        let mut o = BTreeMap::new();
        o.insert("nosuch".to_string(), 1.0);
        assert!(matches!(reg.run(&ctx, &[Suite::Surface], &o, meta()), Err(Error::UnknownName { .. })));
        let mut o = BTreeMap::new();
        o.insert("maximality".to_string(), 1e-20);
        let r = reg.run(&ctx, &[Suite::Surface], &o, meta()).unwrap();
        let row = r.rows.iter().find(|r| r.check == "maximality").unwrap();
        assert!(!row.pass && row.tolerance == 1e-20);
    }

    #[test]
    fn registry_names_are_unique() {
        let reg = CheckRegistry::default();
        let mut names = reg.names();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
        assert!(reg.get("gauss_norm").is_ok());
    }
}
