//! Uniform samplers: G(n, M) by sparse partial Fisher–Yates over the
//! C(n,2) edge slots, P(n, M) by rejection, and the exact exhaustive
//! sampler at oracle sizes.

use super::checker::SparseChecker;
use crate::graph::SimpleGraph;
use crate::oracle::{planar_graph_list, OracleError};
use rand::Rng;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error("rejection sampler exhausted {tries} tries at (n, M) = ({n}, {m}); acceptance is at most ~{acc:.2e}")]
    RejectionExhausted { n: usize, m: usize, tries: u64, acc: f64 },
    #[error("no planar graph with (n, M) = ({n}, {m}) exists")]
    NoPlanarGraph { n: usize, m: usize },
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
}

/// Map a linear index in [0, C(n,2)) to the pair (u, v), u < v, in the
/// shared lexicographic slot order.
pub fn unrank_pair(n: u64, idx: u64) -> (u32, u32) {
    // row u starts at S(u) = u·n − u(u+1)/2 − u... solve by a float guess
    // then fix up exactly
    let nf = n as f64;
    let idxf = idx as f64;
    // S(u) = u·(2n − u − 1)/2 ≤ idx
    let mut u = ((2.0 * nf - 1.0 - ((2.0 * nf - 1.0).powi(2) - 8.0 * idxf).max(0.0).sqrt()) / 2.0)
        .floor() as u64;
    u = u.min(n - 2);
    let start = |u: u64| u * (2 * n - u - 1) / 2;
    while start(u) > idx {
        u -= 1;
    }
    while u + 1 <= n - 2 && start(u + 1) <= idx {
        u += 1;
    }
    let v = u + 1 + (idx - start(u));
    (u as u32, v as u32)
}

/// Uniform G(n, M): the first M entries of a Fisher–Yates shuffle of the
/// edge slots, with the virtual array kept sparsely.
pub fn sample_gnm(n: usize, m: usize, rng: &mut impl Rng) -> SimpleGraph {
    let slots = n as u64 * (n as u64 - 1) / 2;
    assert!(m as u64 <= slots, "M exceeds C(n,2)");
    let mut swap: HashMap<u64, u64> = HashMap::with_capacity(2 * m);
    let mut edges = Vec::with_capacity(m);
    for i in 0..m as u64 {
        let j = rng.random_range(i..slots);
        let vj = *swap.get(&j).unwrap_or(&j);
        let vi = *swap.get(&i).unwrap_or(&i);
        swap.insert(j, vi);
        edges.push(unrank_pair(n as u64, vj));
    }
    SimpleGraph::from_edges(n, &edges)
}

/// Uniform P(n, M) by rejection from G(n, M); returns the accepted graph
/// and the number of attempts.
pub fn sample_pnm_rejection(
    n: usize,
    m: usize,
    rng: &mut impl Rng,
    max_tries: u64,
) -> Result<(SimpleGraph, u64), McError> {
    let mut checker = SparseChecker::new(n);
    for tries in 1..=max_tries {
        let g = sample_gnm(n, m, rng);
        if checker.is_planar(g.edges()) {
            return Ok((g, tries));
        }
    }
    Err(McError::RejectionExhausted { n, m, tries: max_tries, acc: 1.0 / max_tries as f64 })
}

/// Exactly uniform P(n, M) at oracle sizes: index into the enumerated
/// planar list. The list is the expensive part; reuse it across draws.
pub struct ExhaustiveSampler {
    graphs: Vec<SimpleGraph>,
}

impl ExhaustiveSampler {
    pub fn new(n: usize, m: usize) -> Result<Self, McError> {
        let graphs = planar_graph_list(n, m)?;
        if graphs.is_empty() {
            return Err(McError::NoPlanarGraph { n, m });
        }
        Ok(ExhaustiveSampler { graphs })
    }

    pub fn support(&self) -> usize {
        self.graphs.len()
    }

    pub fn draw(&self, rng: &mut impl Rng) -> &SimpleGraph {
        &self.graphs[rng.random_range(0..self.graphs.len())]
    }

    pub fn draw_index(&self, rng: &mut impl Rng) -> usize {
        rng.random_range(0..self.graphs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::stream_rng;

    #[test]
    fn unrank_covers_all_pairs() {
        for n in [2u64, 3, 5, 9] {
            let mut seen = std::collections::HashSet::new();
            for idx in 0..n * (n - 1) / 2 {
                let (u, v) = unrank_pair(n, idx);
                assert!(u < v && (v as u64) < n);
                assert!(seen.insert((u, v)));
            }
        }
    }

    #[test]
    fn gnm_fixed_cases() {
        let mut rng = stream_rng(7, 0);
        let g = sample_gnm(3, 3, &mut rng);
        assert_eq!(g.m(), 3);
        let g = sample_gnm(50, 0, &mut rng);
        assert_eq!(g.m(), 0);
        let g = sample_gnm(100, 70, &mut rng);
        assert_eq!(g.m(), 70, "Fisher–Yates slots are distinct");
    }

    #[test]
    fn gnm_edge_frequency() {
        // inclusion probability of a fixed pair is M/C(n,2)
        let (n, m, trials) = (12usize, 9usize, 100_000u64);
        let slots = n * (n - 1) / 2;
        let mut hits = 0u64;
        for t in 0..trials {
            let mut rng = stream_rng(99, t);
            let g = sample_gnm(n, m, &mut rng);
            if g.edges().contains(&(2, 7)) {
                hits += 1;
            }
        }
        let p = m as f64 / slots as f64;
        let sd = (trials as f64 * p * (1.0 - p)).sqrt();
        let diff = hits as f64 - trials as f64 * p;
        assert!(diff.abs() < 3.5 * sd, "hits {hits}, expected {}", trials as f64 * p);
    }

    #[test]
    fn rejection_sampler_small_cases() {
        let mut rng = stream_rng(5, 0);
        let (g, _) = sample_pnm_rejection(5, 9, &mut rng, 1000).unwrap();
        assert_eq!(g.m(), 9);
        assert!(crate::planarity::is_planar(&g));
        // K5 is never planar
        assert!(sample_pnm_rejection(5, 10, &mut rng, 200).is_err());
    }

    #[test]
    fn exhaustive_sampler_uniform_support() {
        let s = ExhaustiveSampler::new(5, 9).unwrap();
        assert_eq!(s.support(), 10);
        let mut rng = stream_rng(11, 0);
        let mut counts = vec![0u64; 10];
        for _ in 0..10_000 {
            counts[s.draw_index(&mut rng)] += 1;
        }
        for &c in &counts {
            assert!(c > 800 && c < 1200, "counts {counts:?}");
        }
        // (4,6) is K4 only
        let k4 = ExhaustiveSampler::new(4, 6).unwrap();
        assert_eq!(k4.support(), 1);
    }
}
