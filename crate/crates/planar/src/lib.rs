//! Exact and asymptotic enumeration of labeled planar graphs with a given
//! number of vertices and edges, plus samplers for the uniform random planar
//! graph `P(n, M)`.
//!
//! The crate is organized around one pipeline:
//!
//! * [`graph`] — labeled multigraphs, core/kernel decomposition and the
//!   multigraph weight function,
//! * [`planarity`] — an exact left-right planarity tester plus an independent
//!   Kuratowski-subdivision oracle,
//! * [`oracle`] — brute-force enumeration at small sizes (ground truth),
//! * [`series`] — the exact power-series system for cubic planar weighted
//!   multigraphs and the growth-constant extraction,
//! * [`counting`] — exact counting formulas (`U(n, M)`, the kernel-based
//!   construction of complex planar graphs, and the master convolution for
//!   `pl(n, M)`),
//! * [`asympt`] — the ν function and closed-form regime estimates,
//! * [`mc`] — seeded samplers (rejection, edge-swap MCMC, exhaustive) and
//!   structure experiments,
//! * [`verify`] — the machine-checkable acceptance suite.
//!
//! With the default `parallel` feature the data-parallel inner loops
//! (enumeration sweeps, Monte Carlo batches) run on rayon; disabling it gives
//! a purely sequential build with identical results.

pub mod asympt;
pub mod counting;
pub mod graph;
pub mod mc;
pub mod oracle;
pub mod planarity;
pub mod series;
pub mod verify;

pub(crate) mod par;

/// Version string embedded in CLI payloads and cache files.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Identifier of the series solver; bumping it invalidates series caches.
pub const SOLVER_VERSION: &str = "cubic-system/2";

/// Identifier of the RNG scheme used by all samplers.
pub const RNG_VERSION: &str = "chacha12/streams-v1";
