//! Independent planarity oracle: exhaustive search for a K5 or K3,3
//! subdivision. Exponential, intended for cross-validation at small sizes
//! (the suites use it up to n = 9; guard at n = 12).

use crate::graph::SimpleGraph;

/// Exact planarity by Kuratowski's theorem: planar iff no K5 or K3,3
/// subdivision. Panics beyond the size guard.
pub fn is_planar_kuratowski(g: &SimpleGraph) -> bool {
    let n = g.n();
    assert!(n <= 12, "Kuratowski search is guarded at n <= 12 (got {n})");
    if n < 5 || g.m() < 9 {
        return true;
    }
    let adj = adjacency_matrix(g);
    !has_k5_subdivision(n, &adj) && !has_k33_subdivision(n, &adj)
}

fn adjacency_matrix(g: &SimpleGraph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u as usize][v as usize] = true;
        a[v as usize][u as usize] = true;
    }
    a
}

fn degrees(n: usize, adj: &[Vec<bool>]) -> Vec<usize> {
    (0..n).map(|v| (0..n).filter(|&w| adj[v][w]).count()).collect()
}

fn has_k5_subdivision(n: usize, adj: &[Vec<bool>]) -> bool {
    let deg = degrees(n, adj);
    // branch vertices of a K5 subdivision have degree >= 4
    let cands: Vec<usize> = (0..n).filter(|&v| deg[v] >= 4).collect();
    if cands.len() < 5 {
        return false;
    }
    let mut choose = vec![0usize; 5];
    subsets(&cands, 5, &mut choose, 0, 0, &mut |branch| {
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        link_pairs(n, adj, branch, &pairs)
    })
}

fn has_k33_subdivision(n: usize, adj: &[Vec<bool>]) -> bool {
    let deg = degrees(n, adj);
    let cands: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    if cands.len() < 6 {
        return false;
    }
    let mut six = vec![0usize; 6];
    subsets(&cands, 6, &mut six, 0, 0, &mut |chosen| {
        // split the six into two sides; fix chosen[0] on side A
        let rest = &chosen[1..];
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let mut a = vec![chosen[0]];
                let mut b = Vec::new();
                for (k, &v) in rest.iter().enumerate() {
                    if k == i || k == j {
                        a.push(v);
                    } else {
                        b.push(v);
                    }
                }
                let branch: Vec<usize> = a.iter().chain(&b).copied().collect();
                let pairs: Vec<(usize, usize)> =
                    (0..3).flat_map(|x| (3..6).map(move |y| (x, y))).collect();
                if link_pairs(n, adj, &branch, &pairs) {
                    return true;
                }
            }
        }
        false
    })
}

/// Enumerate k-subsets of `cands`, invoking `f` on each; true on first hit.
fn subsets(
    cands: &[usize],
    k: usize,
    out: &mut Vec<usize>,
    start: usize,
    depth: usize,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if depth == k {
        return f(out);
    }
    for i in start..cands.len() {
        if cands.len() - i < k - depth {
            break;
        }
        out[depth] = cands[i];
        if subsets(cands, k, out, i + 1, depth + 1, f) {
            return true;
        }
    }
    false
}

/// Try to realize internally disjoint paths joining `pairs` of branch
/// vertices, with interiors drawn from vertices outside `branch`.
fn link_pairs(n: usize, adj: &[Vec<bool>], branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut is_branch = vec![false; n];
    for &b in branch {
        is_branch[b] = true;
    }
    let mut used = vec![false; n];
    solve(n, adj, branch, pairs, 0, &mut used, &mut is_branch)
}

fn solve(
    n: usize,
    adj: &[Vec<bool>],
    branch: &[usize],
    pairs: &[(usize, usize)],
    idx: usize,
    used: &mut Vec<bool>,
    is_branch: &mut Vec<bool>,
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (a, b) = (branch[pairs[idx].0], branch[pairs[idx].1]);
    // enumerate simple paths a -> b with interior in free non-branch vertices
    let mut path: Vec<usize> = Vec::new();
    extend(n, adj, branch, pairs, idx, used, is_branch, a, b, &mut path)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    n: usize,
    adj: &[Vec<bool>],
    branch: &[usize],
    pairs: &[(usize, usize)],
    idx: usize,
    used: &mut Vec<bool>,
    is_branch: &mut Vec<bool>,
    cur: usize,
    target: usize,
    path: &mut Vec<usize>,
) -> bool {
    if adj[cur][target] {
        // close this path and move to the next pair
        if solve(n, adj, branch, pairs, idx + 1, used, is_branch) {
            return true;
        }
    }
    for next in 0..n {
        if adj[cur][next] && !is_branch[next] && !used[next] {
            used[next] = true;
            path.push(next);
            if extend(n, adj, branch, pairs, idx, used, is_branch, next, target, path) {
                return true;
            }
            path.pop();
            used[next] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kuratowski_known_graphs() {
        assert!(!is_planar_kuratowski(&SimpleGraph::complete(5)));
        assert!(!is_planar_kuratowski(&SimpleGraph::complete_bipartite(3, 3)));
        assert!(is_planar_kuratowski(&SimpleGraph::complete(4)));
        // K5 minus an edge is planar
        let mut edges: Vec<(u32, u32)> = SimpleGraph::complete(5).edges().to_vec();
        edges.pop();
        assert!(is_planar_kuratowski(&SimpleGraph::from_edges(5, &edges)));
    }

    #[test]
    fn kuratowski_subdivided_k5() {
        // K5 with every edge subdivided once: 5 + 10 = 15 vertices... too
        // big for the guard; subdivide three edges only (8 vertices).
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let k5: Vec<(u32, u32)> = SimpleGraph::complete(5).edges().to_vec();
        let mut next = 5u32;
        for (i, &(u, v)) in k5.iter().enumerate() {
            if i < 3 {
                edges.push((u, next));
                edges.push((next, v));
                next += 1;
            } else {
                edges.push((u, v));
            }
        }
        assert!(!is_planar_kuratowski(&SimpleGraph::from_edges(next as usize, &edges)));
    }
}
