//! Edge-swap Markov chain on planar graphs with fixed (n, M): propose
//! removing a uniform present edge and adding a uniform absent slot, accept
//! iff the result stays planar. The proposal is symmetric, so the stationary
//! distribution is uniform on the chain's communicating class.

use super::checker::SparseChecker;
use super::gnm::{unrank_pair, McError};
use crate::graph::SimpleGraph;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use std::collections::HashSet;

/// Greedy planar seed: an M-edge prefix of a stacked triangulation
/// (triangle 0-1-2, then vertex i joins 0, 1 and i−1), remaining vertices
/// isolated.
pub fn greedy_planar_seed(n: usize, m: usize) -> Result<SimpleGraph, McError> {
    let max = if n >= 3 { 3 * n - 6 } else { n.saturating_sub(1) };
    if m > max {
        return Err(McError::NoPlanarGraph { n, m });
    }
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
    if n >= 2 {
        edges.push((0, 1));
    }
    if n >= 3 {
        edges.push((1, 2));
        edges.push((0, 2));
    }
    let mut i = 3u32;
    while edges.len() < m {
        edges.push((0, i));
        if edges.len() < m {
            edges.push((1, i));
        }
        if edges.len() < m {
            edges.push((i - 1, i));
        }
        i += 1;
    }
    edges.truncate(m);
    Ok(SimpleGraph::from_edges(n, &edges))
}

/// The chain state. Scratch buffers are reused across steps.
pub struct PlanarChain {
    n: usize,
    edges: Vec<(u32, u32)>,
    present: HashSet<(u32, u32)>,
    checker: SparseChecker,
    rng: ChaCha12Rng,
    pub accepted: u64,
    pub proposed: u64,
    scratch: Vec<(u32, u32)>,
}

impl PlanarChain {
    pub fn new(seed_graph: SimpleGraph, rng: ChaCha12Rng) -> Self {
        let n = seed_graph.n();
        let edges = seed_graph.edges().to_vec();
        let present = edges.iter().copied().collect();
        PlanarChain {
            n,
            edges,
            present,
            checker: SparseChecker::new(n),
            rng,
            accepted: 0,
            proposed: 0,
            scratch: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, &self.edges)
    }

    /// One proposal; returns whether it was accepted.
    pub fn step(&mut self) -> bool {
        self.proposed += 1;
        let m = self.edges.len();
        let slots = self.n as u64 * (self.n as u64 - 1) / 2;
        if m == 0 || m as u64 == slots {
            return false;
        }
        let out_idx = self.rng.random_range(0..m);
        let removed = self.edges[out_idx];
        // uniform absent slot by rejection against the present set
        let added = loop {
            let idx = self.rng.random_range(0..slots);
            let pair = unrank_pair(self.n as u64, idx);
            if !self.present.contains(&pair) {
                break pair;
            }
        };
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.edges);
        self.scratch[out_idx] = added;
        if !self.checker.is_planar(&self.scratch) {
            return false;
        }
        self.present.remove(&removed);
        self.present.insert(added);
        self.edges[out_idx] = added;
        self.accepted += 1;
        true
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    /// Planarity invariant, for periodic asserts in long runs.
    pub fn assert_planar(&mut self) {
        let edges = self.edges.clone();
        assert!(self.checker.is_planar(&edges), "chain left the planar state space");
    }
}

/// Run a chain and return the state after `steps` proposals, starting from
/// the greedy seed.
pub fn mcmc_planar_chain(
    n: usize,
    m: usize,
    steps: u64,
    rng: ChaCha12Rng,
) -> Result<SimpleGraph, McError> {
    let seed = greedy_planar_seed(n, m)?;
    let mut chain = PlanarChain::new(seed, rng);
    chain.run(steps);
    Ok(chain.graph())
}
