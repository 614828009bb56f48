//! Maximal surfaces in Lorentz–Minkowski space built from a single
//! meromorphic Weierstrass datum `M(ζ)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`expr`] – closed-form complex expressions with exact differentiation.
//! * [`contour`] – adaptive Gauss–Kronrod contour integration, residues and periods.
//! * [`surface`] – the Weierstrass–Enneper immersion, metric, normal and curvature.
//! * [`hodograph`] – characteristic coordinates, graph-side PDE residuals and
//!   hodographic (ρ) coordinates.
//! * [`family`] – the associated family `M ↦ e^{iθ} M`.
//! * [`catalog`] – the Lorentzian catenoid and helicoid.
//! * [`surf_io`] – domain sampling, meshes and file formats.
//! * [`verify`] – named numerical checks assembled into reports.

pub mod catalog;
pub mod contour;
pub mod error;
pub mod expr;
pub mod family;
pub mod hodograph;
pub mod surf_io;
pub mod surface;
pub mod verify;

pub(crate) mod fd;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Crate version, written into report metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
