use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expression is singular at {0}")]
    SingularEvaluation(Complex64),
    #[error("evaluation overflowed to a non-finite value at {0}")]
    NonFinite(Complex64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("integration path passes within {distance:e} of the singularity at {location}")]
    PathThroughSingularity { location: Complex64, distance: f64 },
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    ToleranceNotMet { tol: f64, estimate: f64 },
    #[error("grid node {0} is not reachable from the basepoint")]
    DisconnectedGrid(usize),
    #[error("point {0} lies outside the surface domain")]
    DomainViolation(Complex64),
    #[error("Gauss map is lightlike at {0} (|zeta| = 1)")]
    LightlikeGaussMap(Complex64),
    #[error("finite-difference stencil around {0} leaves the domain")]
    StencilOutOfDomain(Complex64),
    #[error("first fundamental form is degenerate (EG - F^2 = {0:e})")]
    DegenerateMetric(f64),
    #[error("1 + zeta*zeta_bar vanishes")]
    DegenerateDenominator,
    #[error("1 - 4uv = {0} lies on the branch cut of the square root")]
    BranchCutHit(Complex64),
    #[error("Newton inversion of F did not converge near {0}")]
    NewtonDivergence(Complex64),
    #[error("F' vanishes at {0}; F is not locally invertible")]
    CriticalPointOfF(Complex64),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid Weierstrass data: {0}")]
    InvalidData(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("report has no rows")]
    EmptyReport,
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}
