//! Samplers for G(n, M) and P(n, M) with structure statistics: rejection
//! and exhaustive samplers are exactly uniform; the edge-swap MCMC is
//! diagnostic-grade (uniform on its communicating class). All randomness
//! flows through seeded per-stream generators, so results are reproducible
//! and independent of the worker count.

mod checker;
mod experiment;
mod gnm;
mod mcmc;
mod rng;

pub use checker::SparseChecker;
pub use experiment::{
    run_experiment, trial_record, Aggregate, ExperimentConfig, SampleStats, SamplerMode,
    TrialRecord,
};
pub use gnm::{sample_gnm, sample_pnm_rejection, unrank_pair, ExhaustiveSampler, McError};
pub use mcmc::{greedy_planar_seed, mcmc_planar_chain, PlanarChain};
pub use rng::{stream_rng, STREAM_BOOTSTRAP, STREAM_CHAIN};
