//! Core/kernel extraction and exact reassembly.
//!
//! The core is obtained by recursively deleting vertices of degree ≤ 1. The
//! kernel drops isolated cycles of the core and suppresses each maximal path
//! through degree-2 core vertices into a single edge; a suppressed cycle that
//! meets exactly one degree-≥3 vertex becomes a loop there.

use super::LabeledMultigraph;

/// One kernel edge instance together with the ordered degree-2 core vertices
/// that subdivide it in the original graph. `endpoints` are original vertex
/// ids; `u == v` marks a kernel loop.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KernelEdgePath {
    pub endpoints: (u32, u32),
    pub interior: Vec<u32>,
}

/// Exact decomposition of a multigraph into kernel + subdividing paths +
/// isolated cycles + attached rooted forest. `reassemble` inverts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDecomposition {
    /// Original vertex count.
    pub n: usize,
    /// Core vertices (sorted original ids).
    pub core_vertices: Vec<u32>,
    /// Kernel vertices (sorted original ids); index = dense kernel label.
    pub kernel_vertices: Vec<u32>,
    /// Kernel multigraph on the dense labels `0..kernel_vertices.len()`.
    pub kernel: LabeledMultigraph,
    /// One entry per kernel edge instance.
    pub edge_paths: Vec<KernelEdgePath>,
    /// Cycles removed from the core: vertex lists in traversal order.
    /// `[v]` is a loop at `v`, `[u, v]` a double edge.
    pub isolated_cycles: Vec<Vec<u32>>,
    /// `forest_parent[v] = Some(p)` attaches non-core vertex `v` below `p`;
    /// `None` for core vertices and for the root of each coreless tree
    /// component.
    pub forest_parent: Vec<Option<u32>>,
}

impl KernelDecomposition {
    pub fn deficiency(&self) -> u64 {
        let k = self.kernel.n();
        if k == 0 {
            return 0;
        }
        let degree_sum: u64 = (0..k as u32).map(|v| self.kernel.degree(v) as u64).sum();
        degree_sum - 3 * k as u64
    }

    /// Rebuild the original graph exactly (edge multisets agree).
    pub fn reassemble(&self) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new(self.n);
        for path in &self.edge_paths {
            let (u, v) = path.endpoints;
            if path.interior.is_empty() {
                g.add_edge(u, v, 1);
            } else {
                let mut prev = u;
                for &w in &path.interior {
                    g.add_edge(prev, w, 1);
                    prev = w;
                }
                g.add_edge(prev, v, 1);
            }
        }
        for cycle in &self.isolated_cycles {
            match cycle.len() {
                1 => g.add_edge(cycle[0], cycle[0], 1),
                2 => g.add_edge(cycle[0], cycle[1], 2),
                _ => {
                    for i in 0..cycle.len() {
                        g.add_edge(cycle[i], cycle[(i + 1) % cycle.len()], 1);
                    }
                }
            }
        }
        for (v, parent) in self.forest_parent.iter().enumerate() {
            if let Some(p) = parent {
                g.add_edge(v as u32, *p, 1);
            }
        }
        g
    }
}

pub(super) fn kernelize(g: &LabeledMultigraph) -> KernelDecomposition {
    let n = g.n();

    // Half-edge incidence: instance `id` has sides 0 and 1; `ends[id]` are
    // the endpoint vertices (equal for loops).
    let mut ends: Vec<(u32, u32)> = Vec::new();
    let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); n];
    for (v, &l) in g.loop_counts().iter().enumerate() {
        for _ in 0..l {
            let id = ends.len() as u32;
            ends.push((v as u32, v as u32));
            adj[v].push((id, 0));
            adj[v].push((id, 1));
        }
    }
    for (u, v, m) in g.pair_edges() {
        for _ in 0..m {
            let id = ends.len() as u32;
            ends.push((u, v));
            adj[u as usize].push((id, 0));
            adj[v as usize].push((id, 1));
        }
    }
    let end_of = |id: u32, side: u8| -> u32 {
        let (a, b) = ends[id as usize];
        if side == 0 {
            a
        } else {
            b
        }
    };

    // Prune to the 2-core.
    let mut degree: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
    let mut alive = vec![true; n];
    let mut removed_edge = vec![false; ends.len()];
    let mut queue: Vec<u32> = (0..n as u32).filter(|&v| degree[v as usize] <= 1).collect();
    while let Some(v) = queue.pop() {
        if !alive[v as usize] {
            continue;
        }
        alive[v as usize] = false;
        for &(id, side) in &adj[v as usize] {
            if removed_edge[id as usize] {
                continue;
            }
            let w = end_of(id, 1 - side);
            if w == v {
                continue;
            }
            removed_edge[id as usize] = true;
            degree[w as usize] -= 1;
            if alive[w as usize] && degree[w as usize] <= 1 {
                queue.push(w);
            }
        }
    }

    let core_vertices: Vec<u32> = (0..n as u32).filter(|&v| alive[v as usize]).collect();

    // Forest parents: multi-source BFS from the core; coreless tree
    // components are rooted at their minimum label.
    let mut forest_parent: Vec<Option<u32>> = vec![None; n];
    let mut seen: Vec<bool> = alive.clone();
    let mut bfs: std::collections::VecDeque<u32> = core_vertices.iter().copied().collect();
    let mut root_cursor = 0usize;
    loop {
        while let Some(v) = bfs.pop_front() {
            for &(id, side) in &adj[v as usize] {
                let w = end_of(id, 1 - side);
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    forest_parent[w as usize] = Some(v);
                    bfs.push_back(w);
                }
            }
        }
        while root_cursor < n && seen[root_cursor] {
            root_cursor += 1;
        }
        if root_cursor == n {
            break;
        }
        seen[root_cursor] = true;
        bfs.push_back(root_cursor as u32);
    }

    // Kernel vertices = core vertices of degree ≥ 3.
    let kernel_vertices: Vec<u32> =
        core_vertices.iter().copied().filter(|&v| degree[v as usize] >= 3).collect();
    let mut kernel_label = vec![u32::MAX; n];
    for (i, &v) in kernel_vertices.iter().enumerate() {
        kernel_label[v as usize] = i as u32;
    }

    // Walk maximal degree-2 paths starting from kernel vertices, consuming
    // half-edges so each path is traced exactly once.
    let mut used = vec![[false; 2]; ends.len()];
    let mut on_path = vec![false; n];
    let mut edge_paths: Vec<KernelEdgePath> = Vec::new();
    for &start in &kernel_vertices {
        for &(id0, side0) in &adj[start as usize] {
            if removed_edge[id0 as usize] || used[id0 as usize][side0 as usize] {
                continue;
            }
            used[id0 as usize][side0 as usize] = true;
            let mut id = id0;
            let mut side = side0;
            let mut interior = Vec::new();
            let endpoint;
            loop {
                let far = 1 - side;
                used[id as usize][far as usize] = true;
                let w = end_of(id, far);
                if kernel_label[w as usize] != u32::MAX {
                    endpoint = w;
                    break;
                }
                // w has core degree 2 and no loop; continue via its other
                // unused alive half-edge.
                interior.push(w);
                on_path[w as usize] = true;
                let (nid, nside) = adj[w as usize]
                    .iter()
                    .copied()
                    .find(|&(id2, s2)| {
                        !removed_edge[id2 as usize] && !used[id2 as usize][s2 as usize]
                    })
                    .expect("degree-2 core vertex must continue the path");
                used[nid as usize][nside as usize] = true;
                id = nid;
                side = nside;
            }
            let mut path = KernelEdgePath { endpoints: (start, endpoint), interior };
            if path.endpoints.0 > path.endpoints.1 {
                path.interior.reverse();
                path.endpoints = (path.endpoints.1, path.endpoints.0);
            } else if path.endpoints.0 == path.endpoints.1 {
                let rev: Vec<u32> = path.interior.iter().rev().copied().collect();
                if rev < path.interior {
                    path.interior = rev;
                }
            }
            edge_paths.push(path);
        }
    }
    edge_paths.sort();

    // Isolated cycles: remaining core vertices (degree 2, not on any kernel
    // path) form pure cycle components.
    let mut in_cycle = vec![false; n];
    let mut isolated_cycles: Vec<Vec<u32>> = Vec::new();
    for &v in &core_vertices {
        if kernel_label[v as usize] != u32::MAX || on_path[v as usize] || in_cycle[v as usize] {
            continue;
        }
        in_cycle[v as usize] = true;
        if g.loops(v) > 0 {
            isolated_cycles.push(vec![v]);
            continue;
        }
        let alive_nbrs = |x: u32| -> Vec<u32> {
            adj[x as usize]
                .iter()
                .filter(|&&(id, _)| !removed_edge[id as usize])
                .map(|&(id, s)| end_of(id, 1 - s))
                .collect()
        };
        let nbrs = alive_nbrs(v);
        debug_assert_eq!(nbrs.len(), 2);
        let mut cyc = vec![v];
        if nbrs[0] == nbrs[1] {
            // double edge 2-cycle
            in_cycle[nbrs[0] as usize] = true;
            cyc.push(nbrs[0]);
        } else {
            let mut prev = v;
            let mut cur = nbrs[0].min(nbrs[1]);
            while cur != v {
                in_cycle[cur as usize] = true;
                cyc.push(cur);
                let nb = alive_nbrs(cur);
                let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = nxt;
            }
        }
        isolated_cycles.push(cyc);
    }
    isolated_cycles.sort();

    // Kernel multigraph on dense labels.
    let mut kernel = LabeledMultigraph::new(kernel_vertices.len());
    for p in &edge_paths {
        let a = kernel_label[p.endpoints.0 as usize];
        let b = kernel_label[p.endpoints.1 as usize];
        kernel.add_edge(a, b, 1);
    }

    KernelDecomposition {
        n,
        core_vertices,
        kernel_vertices,
        kernel,
        edge_paths,
        isolated_cycles,
        forest_parent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn unicyclic_has_empty_kernel() {
        // 5-cycle with a pendant
        let g = LabeledMultigraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5)]);
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 0);
        assert_eq!(d.isolated_cycles.len(), 1);
        assert_eq!(d.isolated_cycles[0].len(), 5);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn theta_becomes_triple_edge() {
        // two hubs joined by three internally disjoint paths of length >= 2
        let g =
            LabeledMultigraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 2);
        assert_eq!(d.kernel.mult(0, 1), 3);
        assert_eq!(d.deficiency(), 0);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn k4_is_its_own_kernel() {
        let g = SimpleGraph::complete(4).to_multigraph();
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 4);
        assert!(d.edge_paths.iter().all(|p| p.interior.is_empty()));
        assert_eq!(d.deficiency(), 0);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn attached_cycle_becomes_loop() {
        // K4 on {0..3} plus a triangle {3,4,5} sharing only vertex 3
        let g = LabeledMultigraph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5)],
        );
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 4);
        let k3 = d.kernel_vertices.iter().position(|&v| v == 3).unwrap() as u32;
        assert_eq!(d.kernel.loops(k3), 1);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn figure_eight_two_loops() {
        // two triangles sharing one vertex
        let g =
            LabeledMultigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 1);
        assert_eq!(d.kernel.loops(0), 2);
        assert_eq!(d.deficiency(), 1);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn parallel_edges_between_kernel_vertices() {
        // dumbbell with doubled middle edge: degrees 4,4
        let mut g = LabeledMultigraph::new(2);
        g.add_edge(0, 0, 1);
        g.add_edge(1, 1, 1);
        g.add_edge(0, 1, 2);
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 2);
        assert_eq!(d.kernel.mult(0, 1), 2);
        assert_eq!(d.kernel.loops(0), 1);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn attached_two_cycle_via_double_edge() {
        // kernel vertex 0 (K4) with a pendant double edge to vertex 4
        let mut g = LabeledMultigraph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        );
        g.add_edge(0, 4, 2);
        let d = g.kernelize();
        // vertex 4 has degree 2: the double edge is a 2-cycle through kernel
        // vertex 0, i.e. a kernel loop with interior [4]
        let k0 = d.kernel_vertices.iter().position(|&v| v == 0).unwrap() as u32;
        assert_eq!(d.kernel.loops(k0), 1);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn forest_round_trip() {
        let g = LabeledMultigraph::from_edges(7, &[(0, 1), (1, 2), (3, 4), (5, 6)]);
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 0);
        assert!(d.isolated_cycles.is_empty());
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn isolated_loop_and_double_edge_cycles() {
        let mut g = LabeledMultigraph::new(3);
        g.add_edge(0, 0, 1); // loop cycle
        g.add_edge(1, 2, 2); // 2-cycle
        let d = g.kernelize();
        assert_eq!(d.kernel.n(), 0);
        assert_eq!(d.isolated_cycles, vec![vec![0], vec![1, 2]]);
        assert_eq!(d.reassemble(), g);
    }

    #[test]
    fn excess_preserved_on_complex_graphs() {
        let g = LabeledMultigraph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (0, 6), (6, 7)],
        );
        let d = g.kernelize();
        assert_eq!(d.kernel.excess(), g.excess());
    }
}
