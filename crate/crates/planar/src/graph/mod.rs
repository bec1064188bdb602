//! Labeled (multi)graph carriers and the decomposition used everywhere else:
//! connected components, excess, core, kernel, deficiency and the multigraph
//! weight function.
//!
//! Vertices are `0..n` internally; the canonical JSON interchange format uses
//! 1-based labels.

mod kernel;

pub use kernel::{KernelDecomposition, KernelEdgePath};

use num::BigRational;
use num::{BigInt, One};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(u32, usize),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Labeled multigraph: per-vertex loop counts plus a multiplicity for each
/// unordered vertex pair. Immutable in spirit: all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMultigraph {
    n: usize,
    loops: Vec<u32>,
    mult: BTreeMap<(u32, u32), u32>,
}

impl LabeledMultigraph {
    pub fn new(n: usize) -> Self {
        LabeledMultigraph { n, loops: vec![0; n], mult: BTreeMap::new() }
    }

    /// Build from an edge list; `u == v` entries are loops.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 1);
        }
        g
    }

    /// Add `k` parallel copies of the edge `{u, v}` (a loop when `u == v`).
    pub fn add_edge(&mut self, u: u32, v: u32, k: u32) {
        assert!((u as usize) < self.n && (v as usize) < self.n, "vertex out of range");
        if k == 0 {
            return;
        }
        if u == v {
            self.loops[u as usize] += k;
        } else {
            let key = (u.min(v), u.max(v));
            *self.mult.entry(key).or_insert(0) += k;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loops(&self, v: u32) -> u32 {
        self.loops[v as usize]
    }

    pub fn loop_counts(&self) -> &[u32] {
        &self.loops
    }

    pub fn mult(&self, u: u32, v: u32) -> u32 {
        if u == v {
            return self.loops[u as usize];
        }
        *self.mult.get(&(u.min(v), u.max(v))).unwrap_or(&0)
    }

    /// Pairs with positive multiplicity, ascending.
    pub fn pair_edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.mult.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// degree(v) = 2·loops(v) + Σ_u mult(v, u)
    pub fn degree(&self, v: u32) -> u32 {
        let mut d = 2 * self.loops[v as usize];
        for (&(a, b), &m) in &self.mult {
            if a == v || b == v {
                d += m;
            }
        }
        d
    }

    fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.loops.iter().map(|&l| 2 * l).collect();
        for (&(a, b), &m) in &self.mult {
            d[a as usize] += m;
            d[b as usize] += m;
        }
        d
    }

    /// Total edge count; a loop counts as one edge.
    pub fn edge_count(&self) -> u64 {
        let l: u64 = self.loops.iter().map(|&x| x as u64).sum();
        let m: u64 = self.mult.values().map(|&x| x as u64).sum();
        l + m
    }

    pub fn is_simple(&self) -> bool {
        self.loops.iter().all(|&l| l == 0) && self.mult.values().all(|&m| m <= 1)
    }

    /// Edges minus vertices (loops count as one edge).
    pub fn excess(&self) -> i64 {
        self.edge_count() as i64 - self.n as i64
    }

    /// Partition of `0..n` into connected components (loops do not connect).
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for (&(a, b), _) in &self.mult {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s as u32];
            comp[s] = id;
            stack.push(s as u32);
            while let Some(v) = stack.pop() {
                for &w in &adj[v as usize] {
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True iff every component has excess ≥ 1.
    pub fn is_complex(&self) -> bool {
        let comps = self.components();
        let mut comp_of = vec![0usize; self.n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v as usize] = i;
            }
        }
        let mut edges = vec![0i64; comps.len()];
        for (v, &l) in self.loops.iter().enumerate() {
            edges[comp_of[v]] += l as i64;
        }
        for (&(a, _b), &m) in &self.mult {
            edges[comp_of[a as usize]] += m as i64;
        }
        comps.iter().enumerate().all(|(i, c)| edges[i] - c.len() as i64 >= 1)
    }

    /// Maximal subgraph of minimum degree two, relabeled densely
    /// (order-preserving). Empty for forests.
    pub fn core(&self) -> LabeledMultigraph {
        let decomp = self.kernelize();
        let keep: Vec<u32> = decomp.core_vertices.clone();
        let index: BTreeMap<u32, u32> =
            keep.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let mut g = LabeledMultigraph::new(keep.len());
        for (v, &l) in self.loops.iter().enumerate() {
            if let Some(&nv) = index.get(&(v as u32)) {
                g.loops[nv as usize] = l;
            }
        }
        for (&(a, b), &m) in &self.mult {
            if let (Some(&na), Some(&nb)) = (index.get(&a), index.get(&b)) {
                g.add_edge(na, nb, m);
            }
        }
        g
    }

    /// Kernel decomposition: core, isolated cycles, suppressed paths, forest.
    pub fn kernelize(&self) -> KernelDecomposition {
        kernel::kernelize(self)
    }

    /// Σ deg over kernel vertices − 3·|kernel vertices| (0 for empty kernels).
    pub fn deficiency(&self) -> u64 {
        self.kernelize().deficiency()
    }

    /// q-weight 2^(−#loops)·Π (multiplicity!)^(−1), with k parallel loops at
    /// one vertex contributing 2^(−k)/k!. Equals 1 on simple graphs.
    pub fn weight(&self) -> BigRational {
        let mut den = BigInt::one();
        for &l in &self.loops {
            if l > 0 {
                den *= BigInt::from(2u32).pow(l) * factorial(l);
            }
        }
        for &m in self.mult.values() {
            if m >= 2 {
                den *= factorial(m);
            }
        }
        BigRational::new(BigInt::one(), den)
    }

    /// Drop loops, cap multiplicities at 1.
    pub fn simplify(&self) -> SimpleGraph {
        let edges: Vec<(u32, u32)> = self.mult.keys().copied().collect();
        SimpleGraph::from_edges(self.n, &edges)
    }

    /// Canonical JSON: `{"n": int, "loops": [int], "edges": [[u,v,mult]]}`
    /// with 1-based `u < v`, lexicographically sorted.
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .mult
            .iter()
            .map(|(&(u, v), &m)| serde_json::json!([u + 1, v + 1, m]))
            .collect();
        serde_json::json!({ "n": self.n, "loops": self.loops, "edges": edges })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, GraphError> {
        let n = value["n"].as_u64().ok_or_else(|| GraphError::Json("missing n".into()))? as usize;
        let mut g = LabeledMultigraph::new(n);
        let loops = value["loops"].as_array().ok_or_else(|| GraphError::Json("missing loops".into()))?;
        if loops.len() != n {
            return Err(GraphError::Json("loops length != n".into()));
        }
        for (v, l) in loops.iter().enumerate() {
            g.loops[v] = l.as_u64().ok_or_else(|| GraphError::Json("bad loop count".into()))? as u32;
        }
        for e in value["edges"].as_array().ok_or_else(|| GraphError::Json("missing edges".into()))? {
            let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| GraphError::Json("bad edge triple".into()))?;
            let u = t[0].as_u64().ok_or_else(|| GraphError::Json("bad edge".into()))? as u32;
            let v = t[1].as_u64().ok_or_else(|| GraphError::Json("bad edge".into()))? as u32;
            let m = t[2].as_u64().ok_or_else(|| GraphError::Json("bad edge".into()))? as u32;
            if u == 0 || v == 0 || u as usize > n || v as usize > n || u >= v {
                return Err(GraphError::Json(format!("bad edge [{u},{v},{m}]")));
            }
            g.add_edge(u - 1, v - 1, m);
        }
        Ok(g)
    }
}

fn factorial(k: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    f
}

/// Simple graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { n, edges: Vec::new() }
    }

    /// Build from pairs; duplicates and loops are dropped.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut es: Vec<(u32, u32)> = edges
            .iter()
            .filter(|&&(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        es.sort_unstable();
        es.dedup();
        for &(_, v) in &es {
            assert!((v as usize) < n, "vertex out of range");
        }
        SimpleGraph { n, edges: es }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    pub fn to_multigraph(&self) -> LabeledMultigraph {
        LabeledMultigraph::from_edges(self.n, &self.edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        SimpleGraph { n, edges }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                edges.push((u, a as u32 + v));
            }
        }
        SimpleGraph { n: a + b, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Ratio;

    fn ratio(num: i64, den: i64) -> BigRational {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn triple_edge() -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new(2);
        g.add_edge(0, 1, 3);
        g
    }

    fn dumbbell() -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new(2);
        g.add_edge(0, 0, 1);
        g.add_edge(1, 1, 1);
        g.add_edge(0, 1, 1);
        g
    }

    fn k4() -> LabeledMultigraph {
        SimpleGraph::complete(4).to_multigraph()
    }

    #[test]
    fn components_basic() {
        let g = LabeledMultigraph::new(3);
        assert_eq!(g.components(), vec![vec![0], vec![1], vec![2]]);
        let g = LabeledMultigraph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(k4().components().len(), 1);
    }

    #[test]
    fn excess_examples() {
        let tree = LabeledMultigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(tree.excess(), -1);
        assert_eq!(k4().excess(), 2);
        let tri = LabeledMultigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(tri.excess(), 0);
    }

    #[test]
    fn is_complex_examples() {
        assert!(k4().is_complex());
        let tri = LabeledMultigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(!tri.is_complex());
        let mut g = LabeledMultigraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)]);
        assert!(!g.is_complex());
        g.add_edge(4, 5, 1); // still excess 0 on {4,5}? two parallel edges: 2 edges - 2 vertices = 0
        assert!(!g.is_complex());
    }

    #[test]
    fn core_examples() {
        let tree = LabeledMultigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(tree.core().n(), 0);
        let tri_pendant = LabeledMultigraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let c = tri_pendant.core();
        assert_eq!(c.n(), 3);
        assert_eq!(c.edge_count(), 3);
        assert_eq!(k4().core(), k4());
        // idempotence
        assert_eq!(k4().core().core(), k4().core());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(triple_edge().weight(), ratio(1, 6));
        assert_eq!(dumbbell().weight(), ratio(1, 4));
        assert_eq!(k4().weight(), ratio(1, 1));
        // two parallel loops at one vertex: 2^(-2)/2! = 1/8
        let mut g = LabeledMultigraph::new(1);
        g.add_edge(0, 0, 2);
        assert_eq!(g.weight(), ratio(1, 8));
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(k4().deficiency(), 0);
        let forest = LabeledMultigraph::from_edges(3, &[(0, 1)]);
        assert_eq!(forest.deficiency(), 0);
        // one vertex of degree 4 joined to a cubic rest: two loops at one vertex
        // has kernel degree 4, deficiency 1
        let mut g = LabeledMultigraph::new(1);
        g.add_edge(0, 0, 2);
        assert_eq!(g.deficiency(), 1);
    }

    #[test]
    fn simplify_examples() {
        assert_eq!(triple_edge().simplify().m(), 1);
        let s = k4().simplify();
        assert_eq!(s, SimpleGraph::complete(4));
        let mut g = LabeledMultigraph::new(1);
        g.add_edge(0, 0, 2);
        assert_eq!(g.simplify().m(), 0);
    }

    #[test]
    fn json_round_trip() {
        let g = dumbbell();
        let j = g.to_json();
        assert_eq!(j["edges"][0], serde_json::json!([1, 2, 1]));
        let back = LabeledMultigraph::from_json(&j).unwrap();
        assert_eq!(back, g);
    }
}
