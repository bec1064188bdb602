//! Numerical evaluation of ν(c) and the closed-form regime estimates for
//! pl(n, M) with their predicted component structure.

pub mod gamma;
pub(crate) mod hiprec;
mod nu;
mod quad;
mod regimes;

pub use gamma::{gamma_fn, ln_gamma};
pub use nu::{nu, NuFunction, NuValue};
pub use quad::adaptive_simpson;
pub use regimes::{
    ln_binom_edges, pl_critical_envelope, pl_middle, pl_second_range, pl_subcritical,
    pl_supercritical, predict_structure, second_range_b_root, supercritical_integral,
    AsymptError, AsymptoticEstimate, Regime, StructurePrediction,
};
