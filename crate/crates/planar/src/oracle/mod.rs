//! Brute-force exact enumeration at small sizes: ground truth for the
//! series, the counting formulas and the samplers.
//!
//! Simple graphs on `n ≤ 8` vertices are swept as bitmasks over the
//! `C(n,2)` edge slots; multigraphs with minimum degree three are enumerated
//! as multiplicity vectors with degree-feasibility pruning. Search spaces are
//! partitioned by slot prefix for parallel workers and merged by exact
//! addition, so results are independent of the worker count.

mod census;
mod mindeg3;

pub use census::{kernel_census_brute, CensusClass, InsertionProfile, KernelCensus};
pub use mindeg3::{enum_min_deg3_multigraphs, q_brute, q_brute_connected, q_brute_unguarded};

use crate::graph::SimpleGraph;
use crate::planarity::is_planar_edges;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("size guard: {what} requires {limit}, got {got}")]
    SizeGuard { what: &'static str, limit: &'static str, got: usize },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// Edge-slot order shared by every sweep: pairs `(u,v)`, `u < v`,
/// lexicographic.
pub fn pair_slots(n: usize) -> Vec<(u32, u32)> {
    let mut slots = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            slots.push((u, v));
        }
    }
    slots
}

/// Deterministic stream of all labeled graphs with `n` vertices and `m`
/// edges, lexicographic over sorted edge lists. Guarded at `n ≤ 10`.
pub fn enum_graphs(n: usize, m: usize) -> Result<impl Iterator<Item = SimpleGraph>, OracleError> {
    if n > 10 {
        return Err(OracleError::SizeGuard { what: "enum_graphs", limit: "n <= 10", got: n });
    }
    let slots = pair_slots(n);
    if m > slots.len() {
        return Err(OracleError::Infeasible(format!("m = {m} > C({n},2) = {}", slots.len())));
    }
    Ok(Combinations::new(slots.len(), m).map(move |combo| {
        let edges: Vec<(u32, u32)> = combo.iter().map(|&i| slots[i]).collect();
        SimpleGraph::from_edges(n, &edges)
    }))
}

/// Lexicographic k-combinations of `0..n` as index vectors.
pub struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let state = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, k, state }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let state = self.state.as_mut()?;
        let out = state.clone();
        if self.k == 0 {
            self.state = None;
            return Some(out);
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.state = None;
                break;
            }
            i -= 1;
            if state[i] != i + self.n - self.k {
                state[i] += 1;
                for j in i + 1..self.k {
                    state[j] = state[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Everything a full sweep of `n ≤ 7` learns, indexed by edge count.
#[derive(Debug, Clone)]
pub struct GraphClassTables {
    pub n: usize,
    /// total[m] = C(C(n,2), m), a sweep sanity check
    pub total: Vec<u64>,
    /// pl[m] = number of planar graphs
    pub pl: Vec<u64>,
    /// u[m] = number of graphs with no complex component
    pub u: Vec<u64>,
    /// complex planar graphs on all n vertices keyed by (excess, deficiency)
    pub complex_by_excess_deficiency: BTreeMap<(u64, u64), u64>,
    /// connected complex planar graphs keyed by excess
    pub connected_complex_by_excess: BTreeMap<u64, u64>,
}

fn class_tables_uncached(n: usize) -> GraphClassTables {
    let slots = pair_slots(n);
    let nbits = slots.len();
    debug_assert!(nbits <= 21);
    let chunk_bits = nbits.saturating_sub(12);
    let low_bits = nbits - chunk_bits;
    let chunks: Vec<u32> = (0..1u32 << chunk_bits).collect();

    #[derive(Clone)]
    struct Acc {
        total: Vec<u64>,
        pl: Vec<u64>,
        u: Vec<u64>,
        cd: BTreeMap<(u64, u64), u64>,
        cc: BTreeMap<u64, u64>,
    }
    let len = nbits + 1;
    let zero = move || Acc {
        total: vec![0; len],
        pl: vec![0; len],
        u: vec![0; len],
        cd: BTreeMap::new(),
        cc: BTreeMap::new(),
    };
    let slots_ref = &slots;
    let acc = crate::par::map_reduce(
        chunks,
        zero,
        move |hi| {
            let mut a = zero();
            let mut edges: Vec<(u32, u32)> = Vec::with_capacity(nbits);
            for low in 0u32..1 << low_bits {
                let mask = (hi << low_bits) | low;
                let m = mask.count_ones() as usize;
                a.total[m] += 1;
                edges.clear();
                let mut adj = [0u16; 8];
                let mut bits = mask;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let (u, v) = slots_ref[b];
                    adj[u as usize] |= 1 << v;
                    adj[v as usize] |= 1 << u;
                    edges.push((u, v));
                }
                let stats = mask_components(n, &adj);
                if stats.all_light {
                    a.u[m] += 1;
                }
                if is_planar_edges(n, &edges) {
                    a.pl[m] += 1;
                    if stats.all_complex {
                        let l = (m - n) as u64;
                        let g = SimpleGraph::from_edges(n, &edges).to_multigraph();
                        let d = g.deficiency();
                        *a.cd.entry((l, d)).or_insert(0) += 1;
                        if stats.component_count == 1 {
                            *a.cc.entry(l).or_insert(0) += 1;
                        }
                    }
                }
            }
            a
        },
        |mut x, y| {
            for i in 0..x.total.len() {
                x.total[i] += y.total[i];
                x.pl[i] += y.pl[i];
                x.u[i] += y.u[i];
            }
            for (k, v) in y.cd {
                *x.cd.entry(k).or_insert(0) += v;
            }
            for (k, v) in y.cc {
                *x.cc.entry(k).or_insert(0) += v;
            }
            x
        },
    );
    GraphClassTables {
        n,
        total: acc.total,
        pl: acc.pl,
        u: acc.u,
        complex_by_excess_deficiency: acc.cd,
        connected_complex_by_excess: acc.cc,
    }
}

struct MaskStats {
    component_count: usize,
    /// every component has excess ≤ 0 (trees and unicyclic only)
    all_light: bool,
    /// every component has excess ≥ 1
    all_complex: bool,
}

fn mask_components(n: usize, adj: &[u16; 8]) -> MaskStats {
    let mut unvisited: u16 = (1u16 << n) - 1;
    let mut count = 0;
    let mut all_light = true;
    let mut all_complex = true;
    while unvisited != 0 {
        let v = unvisited.trailing_zeros() as usize;
        let mut comp: u16 = 1 << v;
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[w];
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        unvisited &= !comp;
        count += 1;
        let size = comp.count_ones() as i64;
        let mut edges = 0i64;
        let mut bits = comp;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            edges += (adj[w] & comp).count_ones() as i64;
        }
        edges /= 2;
        let excess = edges - size;
        if excess > 0 {
            all_light = false;
        }
        if excess < 1 {
            all_complex = false;
        }
    }
    MaskStats { component_count: count, all_light, all_complex }
}

fn tables_cache() -> &'static Mutex<BTreeMap<usize, Arc<GraphClassTables>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<GraphClassTables>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Full classification sweep for `n ≤ 7`, cached per `n`.
pub fn class_tables(n: usize) -> Result<Arc<GraphClassTables>, OracleError> {
    if n > 7 {
        return Err(OracleError::SizeGuard { what: "class_tables", limit: "n <= 7", got: n });
    }
    if let Some(t) = tables_cache().lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(class_tables_uncached(n));
    tables_cache().lock().unwrap().insert(n, t.clone());
    Ok(t)
}

/// pl(n, M) by brute force. Cached sweep for `n ≤ 7`, combination sweep with
/// per-graph testing at `n = 8`. Guarded at `n ≤ 8`.
pub fn pl_brute(n: usize, m: usize) -> Result<u64, OracleError> {
    if n > 8 {
        return Err(OracleError::SizeGuard { what: "pl_brute", limit: "n <= 8", got: n });
    }
    if m > n * (n - 1) / 2 {
        return Ok(0);
    }
    if n <= 7 {
        return Ok(class_tables(n)?.pl[m]);
    }
    Ok(sweep_count_n8(m, |edges, _| is_planar_edges(8, edges)))
}

/// U(n, M): graphs whose components are all trees or unicyclic.
pub fn u_brute(n: usize, m: usize) -> Result<u64, OracleError> {
    if n > 8 {
        return Err(OracleError::SizeGuard { what: "u_brute", limit: "n <= 8", got: n });
    }
    if m > n * (n - 1) / 2 {
        return Ok(0);
    }
    if n <= 7 {
        return Ok(class_tables(n)?.u[m]);
    }
    Ok(sweep_count_n8(m, |_, adj| mask_components(8, adj).all_light))
}

/// Complex planar graphs on k vertices with k+l edges.
pub fn c_brute(k: usize, l: u64) -> Result<u64, OracleError> {
    let m = k as u64 + l;
    if m > (k * (k.saturating_sub(1)) / 2) as u64 {
        return Ok(0);
    }
    if k <= 7 {
        let t = class_tables(k)?;
        return Ok(t
            .complex_by_excess_deficiency
            .iter()
            .filter(|&(&(le, _), _)| le == l)
            .map(|(_, &c)| c)
            .sum());
    }
    if k > 8 {
        return Err(OracleError::SizeGuard { what: "c_brute", limit: "k <= 8", got: k });
    }
    Ok(sweep_count_n8(m as usize, |edges, adj| {
        mask_components(8, adj).all_complex && is_planar_edges(8, edges)
    }))
}

/// Complex planar graphs with deficiency d.
pub fn cd_brute(k: usize, l: u64, d: u64) -> Result<u64, OracleError> {
    let m = k as u64 + l;
    if m > (k * (k.saturating_sub(1)) / 2) as u64 {
        return Ok(0);
    }
    if k <= 7 {
        let t = class_tables(k)?;
        return Ok(*t.complex_by_excess_deficiency.get(&(l, d)).unwrap_or(&0));
    }
    if k > 8 {
        return Err(OracleError::SizeGuard { what: "cd_brute", limit: "k <= 8", got: k });
    }
    Ok(sweep_count_n8(m as usize, |edges, adj| {
        if !mask_components(8, adj).all_complex || !is_planar_edges(8, edges) {
            return false;
        }
        SimpleGraph::from_edges(8, edges).to_multigraph().deficiency() == d
    }))
}

/// Complex planar graphs on 8 vertices with 8+l edges, classified by
/// deficiency in one sweep.
pub fn cd_counts_n8(l: u64) -> std::collections::BTreeMap<u64, u64> {
    let m = (8 + l) as usize;
    let slots = pair_slots(8);
    let nbits = slots.len();
    if m > nbits {
        return Default::default();
    }
    let firsts: Vec<usize> = (0..=nbits - m).collect();
    let slots_ref = &slots;
    crate::par::map_reduce(
        firsts,
        BTreeMap::<u64, u64>::new,
        move |first| {
            let mut acc: BTreeMap<u64, u64> = BTreeMap::new();
            let rest = nbits - first - 1;
            let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
            for combo in Combinations::new(rest, m - 1) {
                edges.clear();
                let mut adj = [0u16; 8];
                for slot in std::iter::once(first).chain(combo.iter().map(|&i| first + 1 + i)) {
                    let (u, v) = slots_ref[slot];
                    adj[u as usize] |= 1 << v;
                    adj[v as usize] |= 1 << u;
                    edges.push((u, v));
                }
                if !mask_components(8, &adj).all_complex || !is_planar_edges(8, &edges) {
                    continue;
                }
                let d = SimpleGraph::from_edges(8, &edges).to_multigraph().deficiency();
                *acc.entry(d).or_insert(0) += 1;
            }
            acc
        },
        |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        },
    )
}

/// Connected complex planar graphs.
pub fn c_conn_brute(k: usize, l: u64) -> Result<u64, OracleError> {
    let m = k as u64 + l;
    if m > (k * (k.saturating_sub(1)) / 2) as u64 {
        return Ok(0);
    }
    if k <= 7 {
        let t = class_tables(k)?;
        return Ok(*t.connected_complex_by_excess.get(&l).unwrap_or(&0));
    }
    if k > 8 {
        return Err(OracleError::SizeGuard { what: "c_conn_brute", limit: "k <= 8", got: k });
    }
    Ok(sweep_count_n8(m as usize, |edges, adj| {
        let s = mask_components(8, adj);
        s.component_count == 1 && s.all_complex && is_planar_edges(8, edges)
    }))
}

/// Parallel combination sweep over graphs with 8 vertices and `m` edges;
/// counts those accepted by `pred(edges, adjacency)`. Partitioned by the
/// first edge slot; summation is exact, so worker count does not matter.
fn sweep_count_n8(m: usize, pred: impl Fn(&[(u32, u32)], &[u16; 8]) -> bool + Sync + Send) -> u64 {
    let slots = pair_slots(8);
    let nbits = slots.len(); // 28
    if m > nbits {
        return 0;
    }
    if m == 0 {
        return pred(&[], &[0u16; 8]) as u64;
    }
    let firsts: Vec<usize> = (0..=nbits - m).collect();
    let slots_ref = &slots;
    let pred_ref = &pred;
    crate::par::map_reduce(
        firsts,
        || 0u64,
        move |first| {
            let mut count = 0u64;
            let rest = nbits - first - 1;
            let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
            for combo in Combinations::new(rest, m - 1) {
                edges.clear();
                let mut adj = [0u16; 8];
                for slot in std::iter::once(first).chain(combo.iter().map(|&i| first + 1 + i)) {
                    let (u, v) = slots_ref[slot];
                    adj[u as usize] |= 1 << v;
                    adj[v as usize] |= 1 << u;
                    edges.push((u, v));
                }
                if pred_ref(&edges, &adj) {
                    count += 1;
                }
            }
            count
        },
        |a, b| a + b,
    )
}

/// Exact distribution of (largest component size, complex-part excess) over
/// all planar graphs with `n ≤ 7` vertices and `m` edges, the ground-truth
/// joint statistic for sampler validation.
pub fn planar_structure_distribution(
    n: usize,
    m: usize,
) -> Result<BTreeMap<(u32, i64), u64>, OracleError> {
    if n > 7 {
        return Err(OracleError::SizeGuard {
            what: "planar_structure_distribution",
            limit: "n <= 7",
            got: n,
        });
    }
    let slots = pair_slots(n);
    let mut out: BTreeMap<(u32, i64), u64> = BTreeMap::new();
    for combo in Combinations::new(slots.len(), m) {
        let edges: Vec<(u32, u32)> = combo.iter().map(|&i| slots[i]).collect();
        if !is_planar_edges(n, &edges) {
            continue;
        }
        let mut adj = [0u16; 8];
        for &(u, v) in &edges {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        *out.entry(structure_key(n, &adj)).or_insert(0) += 1;
    }
    Ok(out)
}

/// (L1, excess of the complex part) for a small adjacency-mask graph.
pub(crate) fn structure_key(n: usize, adj: &[u16; 8]) -> (u32, i64) {
    let mut unvisited: u16 = (1u16 << n) - 1;
    let mut l1 = 0u32;
    let mut ex_c = 0i64;
    while unvisited != 0 {
        let v = unvisited.trailing_zeros() as usize;
        let mut comp: u16 = 1 << v;
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[w];
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        unvisited &= !comp;
        let size = comp.count_ones();
        let mut edges = 0i64;
        let mut bits = comp;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            edges += (adj[w] & comp).count_ones() as i64;
        }
        edges /= 2;
        l1 = l1.max(size);
        let excess = edges - size as i64;
        if excess >= 1 {
            ex_c += excess;
        }
    }
    (l1, ex_c)
}

/// All planar graphs with n vertices and m edges, in deterministic order.
/// Backs the exhaustive sampler. Guarded at `n ≤ 8`.
pub fn planar_graph_list(n: usize, m: usize) -> Result<Vec<SimpleGraph>, OracleError> {
    if n > 8 {
        return Err(OracleError::SizeGuard { what: "planar_graph_list", limit: "n <= 8", got: n });
    }
    let slots = pair_slots(n);
    if m > slots.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for combo in Combinations::new(slots.len(), m) {
        let edges: Vec<(u32, u32)> = combo.iter().map(|&i| slots[i]).collect();
        if is_planar_edges(n, &edges) {
            out.push(SimpleGraph::from_edges(n, &edges));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enum_graphs_examples() {
        assert_eq!(enum_graphs(3, 3).unwrap().count(), 1);
        assert_eq!(enum_graphs(4, 1).unwrap().count(), 6);
        assert_eq!(enum_graphs(5, 10).unwrap().count(), 1);
    }

    #[test]
    fn pl_brute_examples() {
        assert_eq!(pl_brute(4, 6).unwrap(), 1);
        assert_eq!(pl_brute(5, 10).unwrap(), 0);
        assert_eq!(pl_brute(5, 9).unwrap(), 10);
        // every 8-edge graph on 6 vertices is planar (K3,3 needs 9 edges)
        assert_eq!(pl_brute(6, 8).unwrap(), 6435);
    }

    #[test]
    fn u_brute_examples() {
        assert_eq!(u_brute(3, 3).unwrap(), 1);
        assert_eq!(u_brute(4, 3).unwrap(), 20);
        for m in 5..=6 {
            assert_eq!(u_brute(4, m).unwrap(), 0, "U(n, M) = 0 for M > n");
        }
    }

    #[test]
    fn c_brute_examples() {
        assert_eq!(c_brute(4, 1).unwrap(), 6);
        assert_eq!(c_brute(3, 4).unwrap(), 0);
        assert_eq!(cd_brute(4, 2, 0).unwrap(), 1);
        assert_eq!(cd_brute(4, 1, 0).unwrap(), 6);
        assert_eq!(cd_brute(5, 1, 0).unwrap(), 190);
        assert_eq!(cd_brute(5, 1, 1).unwrap(), 15);
        for (k, l) in [(5usize, 1u64), (6, 1), (6, 2)] {
            let total = c_brute(k, l).unwrap();
            let by_d: u64 = (0..2 * l).map(|d| cd_brute(k, l, d).unwrap()).sum();
            assert_eq!(total, by_d, "(k, l) = ({k}, {l})");
        }
    }

    #[test]
    fn totals_match_binomials() {
        let t = class_tables(6).unwrap();
        let mut binom = 1u64;
        assert_eq!(t.total[0], 1);
        for m in 1..=15 {
            binom = binom * (15 - m as u64 + 1) / m as u64;
            assert_eq!(t.total[m], binom);
        }
        for m in 0..=2 {
            assert_eq!(t.pl[m], t.total[m], "small m: everything is planar");
        }
    }

    #[test]
    fn deterministic_stream() {
        let a: Vec<_> = enum_graphs(5, 4).unwrap().collect();
        let b: Vec<_> = enum_graphs(5, 4).unwrap().collect();
        assert_eq!(a, b);
    }
}
