//! Allocation-free planarity checking for sampler hot loops: prune to the
//! 2-core, suppress degree-2 paths to the simplified kernel, then run the
//! left-right test on what is left (usually a few dozen vertices).

use crate::planarity::is_planar_edges;

pub struct SparseChecker {
    n: usize,
    head: Vec<i32>,
    next: Vec<i32>,
    to: Vec<u32>,
    degree: Vec<u32>,
    alive: Vec<bool>,
    queue: Vec<u32>,
    used: Vec<bool>,
    kernel_edges: Vec<(u32, u32)>,
}

impl SparseChecker {
    pub fn new(n: usize) -> Self {
        SparseChecker {
            n,
            head: vec![-1; n],
            next: Vec::new(),
            to: Vec::new(),
            degree: vec![0; n],
            alive: vec![false; n],
            queue: Vec::new(),
            used: Vec::new(),
            kernel_edges: Vec::new(),
        }
    }

    /// Planarity of the simple graph given by `edges` on `self.n` vertices.
    pub fn is_planar(&mut self, edges: &[(u32, u32)]) -> bool {
        let n = self.n;
        let m = edges.len();
        if n >= 3 && m > 3 * n - 6 {
            return false;
        }
        if m < 9 {
            return true;
        }
        // forward-star adjacency with edge ids (two arcs per edge)
        self.head.iter_mut().for_each(|h| *h = -1);
        self.next.clear();
        self.to.clear();
        self.next.resize(2 * m, -1);
        self.to.resize(2 * m, 0);
        self.degree.iter_mut().for_each(|d| *d = 0);
        for (id, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (u as usize, v as usize);
            self.to[2 * id] = v;
            self.next[2 * id] = self.head[a];
            self.head[a] = (2 * id) as i32;
            self.to[2 * id + 1] = u;
            self.next[2 * id + 1] = self.head[b];
            self.head[b] = (2 * id + 1) as i32;
            self.degree[a] += 1;
            self.degree[b] += 1;
        }
        // prune to the 2-core
        for v in 0..n {
            self.alive[v] = true;
        }
        self.queue.clear();
        for v in 0..n {
            if self.degree[v] <= 1 {
                self.queue.push(v as u32);
            }
        }
        self.used.clear();
        self.used.resize(2 * m, false); // reused as "arc removed" during prune
        while let Some(v) = self.queue.pop() {
            if !self.alive[v as usize] {
                continue;
            }
            self.alive[v as usize] = false;
            let mut arc = self.head[v as usize];
            while arc >= 0 {
                let id = (arc as usize) / 2;
                if !self.used[2 * id] {
                    let w = self.to[arc as usize];
                    if self.alive[w as usize] {
                        self.used[2 * id] = true;
                        self.used[2 * id + 1] = true;
                        self.degree[w as usize] -= 1;
                        if self.degree[w as usize] <= 1 {
                            self.queue.push(w);
                        }
                    }
                }
                arc = self.next[arc as usize];
            }
        }
        // walk degree-2 chains from kernel vertices; collect simplified
        // kernel edges (parallels deduplicated later, loops dropped)
        self.kernel_edges.clear();
        let mut any_core = false;
        for v in 0..n as u32 {
            if !self.alive[v as usize] || self.degree[v as usize] < 3 {
                continue;
            }
            any_core = true;
            let mut arc = self.head[v as usize];
            while arc >= 0 {
                let aidx = arc as usize;
                if self.used[aidx] {
                    arc = self.next[aidx];
                    continue;
                }
                // follow the degree-2 chain, consuming both arcs per edge
                self.used[aidx] = true;
                let mut cur_arc = aidx;
                let endpoint;
                loop {
                    self.used[cur_arc ^ 1] = true;
                    let w = self.to[cur_arc];
                    if self.degree[w as usize] >= 3 {
                        endpoint = w;
                        break;
                    }
                    let mut a2 = self.head[w as usize];
                    let mut found = usize::MAX;
                    while a2 >= 0 {
                        let i2 = a2 as usize;
                        if !self.used[i2] && self.alive[self.to[i2] as usize] {
                            found = i2;
                            break;
                        }
                        a2 = self.next[i2];
                    }
                    debug_assert!(found != usize::MAX, "degree-2 core vertex must continue");
                    self.used[found] = true;
                    cur_arc = found;
                }
                if endpoint != v {
                    let (a, b) = (v.min(endpoint), v.max(endpoint));
                    self.kernel_edges.push((a, b));
                }
                arc = self.next[aidx];
            }
        }
        if !any_core {
            return true;
        }
        self.kernel_edges.sort_unstable();
        self.kernel_edges.dedup();
        // relabel densely
        let mut label = std::collections::HashMap::new();
        let mut dense: Vec<(u32, u32)> = Vec::with_capacity(self.kernel_edges.len());
        for &(a, b) in &self.kernel_edges {
            let nl = label.len() as u32;
            let ia = *label.entry(a).or_insert(nl);
            let nl = label.len() as u32;
            let ib = *label.entry(b).or_insert(nl);
            dense.push((ia, ib));
        }
        is_planar_edges(label.len(), &dense)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::planarity::is_planar;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn checker_agrees_with_direct_lr() {
        let mut rng = StdRng::seed_from_u64(4242);
        for trial in 0..3000 {
            let n = rng.random_range(2..=24usize);
            let slots: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            let m = rng.random_range(0..=slots.len().min(3 * n));
            let mut idx: Vec<usize> = (0..slots.len()).collect();
            for i in 0..m {
                let j = rng.random_range(i..slots.len());
                idx.swap(i, j);
            }
            let edges: Vec<(u32, u32)> = idx[..m].iter().map(|&i| slots[i]).collect();
            let mut checker = SparseChecker::new(n);
            let direct = is_planar(&SimpleGraph::from_edges(n, &edges));
            let fast = checker.is_planar(&edges);
            assert_eq!(fast, direct, "trial {trial}: n = {n}, edges = {edges:?}");
        }
    }
}
