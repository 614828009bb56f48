//! Characteristic and hodographic coordinates, and graph-side PDE checks.

mod characteristic;
mod graph;
mod rho;

pub use characteristic::{
    lemma_residual, lemma_residual_with, uv_from_zeta, zeta_from_uv, zeta_from_uv_branch, Branch, CharacteristicPair,
};
pub use graph::{
    bie_residual, euclidean_mse_residual, jacobian_identity, mse_residual, partials, wick_check, GraphFunction,
    Partials, DEFAULT_PDE_STEP,
};
pub use rho::{isothermal_check, rho_from_zeta, IsothermalReport, NewtonInverse};
