//! Exact planarity testing.
//!
//! Two independent implementations ship on purpose: the fast left-right
//! tester ([`is_planar`]) used everywhere, and a slow Kuratowski-subdivision
//! search ([`is_planar_kuratowski`]) that the test suites cross-validate it
//! against. Enumeration correctness hinges entirely on this predicate.

mod kuratowski;
mod lr;

pub use kuratowski::is_planar_kuratowski;

use crate::graph::{LabeledMultigraph, SimpleGraph};

/// Drop loops and cap multiplicities at 1.
pub fn simplify(g: &LabeledMultigraph) -> SimpleGraph {
    g.simplify()
}

/// Exact planarity of a simple graph (left-right criterion). Disconnected
/// inputs are handled component by component.
pub fn is_planar(g: &SimpleGraph) -> bool {
    is_planar_edges(g.n(), g.edges())
}

/// Planarity from an explicit edge list without constructing a graph.
/// Edges must be loop-free; duplicates are tolerated (deduplicated here).
pub fn is_planar_edges(n: usize, edges: &[(u32, u32)]) -> bool {
    // K5 needs 10 edges and 5 vertices, K3,3 needs 9 and 6; subdivisions
    // only grow both counts.
    if n < 5 || edges.len() < 9 {
        return true;
    }
    let mut es: Vec<(u32, u32)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    es.sort_unstable();
    es.dedup();
    if n >= 3 && es.len() > 3 * n - 6 {
        return false;
    }
    lr::lr_planar(n, &es)
}

/// Planarity of a multigraph: loops and parallel edges never obstruct
/// embeddings, so this is planarity of the simplification.
pub fn is_planar_multi(g: &LabeledMultigraph) -> bool {
    is_planar(&g.simplify())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledMultigraph;

    #[test]
    fn known_graphs() {
        assert!(is_planar(&SimpleGraph::complete(4)));
        assert!(!is_planar(&SimpleGraph::complete(5)));
        assert!(!is_planar(&SimpleGraph::complete_bipartite(3, 3)));
        assert!(is_planar(&SimpleGraph::complete_bipartite(2, 3)));
    }

    #[test]
    fn petersen_graph_is_not_planar() {
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
        let edges: Vec<(u32, u32)> = outer.iter().chain(&spokes).chain(&inner).copied().collect();
        assert!(!is_planar(&SimpleGraph::from_edges(10, &edges)));
    }

    #[test]
    fn euler_bound_rejects() {
        // K6 has 15 > 3*6-6 = 12 edges
        assert!(!is_planar(&SimpleGraph::complete(6)));
    }

    #[test]
    fn grids_are_planar() {
        let (w, h) = (6usize, 5usize);
        let idx = |x: usize, y: usize| (y * w + x) as u32;
        let mut edges = Vec::new();
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    edges.push((idx(x, y), idx(x + 1, y)));
                }
                if y + 1 < h {
                    edges.push((idx(x, y), idx(x, y + 1)));
                }
            }
        }
        assert!(is_planar(&SimpleGraph::from_edges(w * h, &edges)));
    }

    #[test]
    fn maximal_planar_plus_any_edge_is_nonplanar() {
        // stacked triangulation: vertex i >= 3 joins {0, 1, i-1}
        let n = 40usize;
        let mut edges = vec![(0u32, 1u32), (1, 2), (0, 2)];
        for i in 3..n as u32 {
            edges.push((0, i));
            edges.push((1, i));
            edges.push((i - 1, i));
        }
        assert_eq!(edges.len(), 3 * n - 6);
        assert!(is_planar(&SimpleGraph::from_edges(n, &edges)));
        // adding any absent edge must break planarity (maximal planar)
        let g = SimpleGraph::from_edges(n, &edges);
        let present: std::collections::HashSet<(u32, u32)> = g.edges().iter().copied().collect();
        for u in 0..6u32 {
            for v in u + 1..n as u32 {
                if !present.contains(&(u, v)) {
                    let mut e2 = edges.clone();
                    e2.push((u, v));
                    assert!(!is_planar(&SimpleGraph::from_edges(n, &e2)), "({u},{v})");
                }
            }
        }
    }

    #[test]
    fn disconnected_components() {
        // two K4 blocks, then adding a K5 block breaks planarity
        let mut edges = Vec::new();
        for base in [0u32, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    edges.push((base + u, base + v));
                }
            }
        }
        assert!(is_planar(&SimpleGraph::from_edges(8, &edges)));
        for u in 8..13u32 {
            for v in u + 1..13 {
                edges.push((u, v));
            }
        }
        assert!(!is_planar(&SimpleGraph::from_edges(13, &edges)));
    }

    #[test]
    fn multigraph_examples() {
        let mut triple = LabeledMultigraph::new(2);
        triple.add_edge(0, 1, 3);
        assert!(is_planar_multi(&triple));

        let mut k5_doubled = SimpleGraph::complete(5).to_multigraph();
        k5_doubled.add_edge(0, 1, 1);
        assert!(!is_planar_multi(&k5_doubled));

        let mut dumbbell = LabeledMultigraph::new(2);
        dumbbell.add_edge(0, 0, 1);
        dumbbell.add_edge(1, 1, 1);
        dumbbell.add_edge(0, 1, 1);
        assert!(is_planar_multi(&dumbbell));
    }
}
