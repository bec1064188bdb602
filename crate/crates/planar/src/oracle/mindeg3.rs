//! Enumeration of labeled multigraphs with minimum degree ≥ 3 and the
//! weighted counts q(n; d) over their planar members.
//!
//! Multiplicity vectors are enumerated slot by slot (loop slots and pair
//! slots in lexicographic row order) with two prunes: a vertex's degree is
//! checked the moment its last slot is fixed, and a branch dies when the
//! remaining edge budget cannot supply the missing degrees.

use super::OracleError;
use crate::graph::LabeledMultigraph;
use crate::planarity::is_planar_edges;
use num::{BigInt, BigRational, One, Zero};

#[derive(Clone, Copy, Debug)]
enum Slot {
    Loop(u32),
    Pair(u32, u32),
}

fn slot_layout(n: usize) -> (Vec<Slot>, Vec<Option<u32>>) {
    let mut slots = Vec::new();
    for v in 0..n as u32 {
        slots.push(Slot::Loop(v));
        for w in v + 1..n as u32 {
            slots.push(Slot::Pair(v, w));
        }
    }
    // vertex whose degree becomes final after the slot at each index
    let mut finalizes = vec![None; slots.len()];
    for (i, s) in slots.iter().enumerate() {
        let last_of_row = match *s {
            Slot::Loop(v) if v as usize == n - 1 => Some(v),
            Slot::Pair(v, w) if w as usize == n - 1 => Some(v),
            _ => None,
        };
        finalizes[i] = last_of_row;
    }
    (slots, finalizes)
}

struct Enumerator<'a, F: FnMut(&[u32], &[u32])> {
    slots: &'a [Slot],
    finalizes: &'a [Option<u32>],
    degrees: Vec<u32>,
    counts: Vec<u32>,
    visit: F,
}

impl<F: FnMut(&[u32], &[u32])> Enumerator<'_, F> {
    /// `budget` = edges still to place from slot `idx` on.
    fn run(&mut self, idx: usize, budget: u32) {
        if idx == self.slots.len() {
            if budget == 0 && self.degrees.iter().all(|&d| d >= 3) {
                (self.visit)(&self.counts, &self.degrees);
            }
            return;
        }
        // missing degree must be coverable: each remaining edge adds ≤ 2
        let needed: u32 = self.degrees.iter().map(|&d| 3u32.saturating_sub(d)).sum();
        if needed > 2 * budget {
            return;
        }
        let slot = self.slots[idx];
        for k in 0..=budget {
            self.counts[idx] = k;
            match slot {
                Slot::Loop(v) => self.degrees[v as usize] += 2 * k,
                Slot::Pair(u, v) => {
                    self.degrees[u as usize] += k;
                    self.degrees[v as usize] += k;
                }
            }
            let ok = match self.finalizes[idx] {
                Some(v) => self.degrees[v as usize] >= 3,
                None => true,
            };
            if ok {
                self.run(idx + 1, budget - k);
            }
            match slot {
                Slot::Loop(v) => self.degrees[v as usize] -= 2 * k,
                Slot::Pair(u, v) => {
                    self.degrees[u as usize] -= k;
                    self.degrees[v as usize] -= k;
                }
            }
        }
        self.counts[idx] = 0;
    }
}

/// Visit every labeled multigraph on `n` vertices with `edges` edges and
/// minimum degree ≥ 3, in lexicographic multiplicity order. The callback
/// receives the multiplicity vector aligned with `slot_layout` plus degrees.
fn visit_min_deg3(n: usize, edges: u32, visit: impl FnMut(&[u32], &[u32])) {
    let (slots, finalizes) = slot_layout(n);
    let mut e = Enumerator {
        slots: &slots,
        finalizes: &finalizes,
        degrees: vec![0; n],
        counts: vec![0; slots.len()],
        visit,
    };
    e.run(0, edges);
}

/// Materialized deterministic enumeration. Guarded at `n ≤ 6`.
pub fn enum_min_deg3_multigraphs(
    n: usize,
    edges: u32,
) -> Result<Vec<LabeledMultigraph>, OracleError> {
    if n > 6 {
        return Err(OracleError::SizeGuard {
            what: "enum_min_deg3_multigraphs",
            limit: "n <= 6",
            got: n,
        });
    }
    let (slots, _) = slot_layout(n);
    let mut out = Vec::new();
    visit_min_deg3(n, edges, |counts, _| {
        let mut g = LabeledMultigraph::new(n);
        for (i, &k) in counts.iter().enumerate() {
            if k > 0 {
                match slots[i] {
                    Slot::Loop(v) => g.add_edge(v, v, k),
                    Slot::Pair(u, v) => g.add_edge(u, v, k),
                }
            }
        }
        out.push(g);
    });
    Ok(out)
}

fn factorial_int(k: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    f
}

/// q-weight straight from a multiplicity vector.
fn weight_of(slots: &[Slot], counts: &[u32]) -> BigRational {
    let mut den = BigInt::one();
    for (i, &k) in counts.iter().enumerate() {
        if k == 0 {
            continue;
        }
        match slots[i] {
            Slot::Loop(_) => den *= BigInt::from(2u32).pow(k) * factorial_int(k),
            Slot::Pair(..) => {
                if k >= 2 {
                    den *= factorial_int(k);
                }
            }
        }
    }
    BigRational::new(BigInt::one(), den)
}

fn connected(n: usize, slots: &[Slot], counts: &[u32]) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![0u16; n];
    for (i, &k) in counts.iter().enumerate() {
        if k > 0 {
            if let Slot::Pair(u, v) = slots[i] {
                adj[u as usize] |= 1 << v;
                adj[v as usize] |= 1 << u;
            }
        }
    }
    let mut comp: u16 = 1;
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
    comp.count_ones() as usize == n
}

fn q_brute_impl(n: usize, d: u64, connected_only: bool) -> Result<BigRational, OracleError> {
    q_brute_guarded(n, d, connected_only, false)
}

/// `override_guard` lifts the n ≤ 6 limit; n = 8 takes minutes, beyond that
/// the multiplicity space explodes.
pub fn q_brute_unguarded(
    n: usize,
    d: u64,
    connected_only: bool,
) -> Result<BigRational, OracleError> {
    q_brute_guarded(n, d, connected_only, true)
}

fn q_brute_guarded(
    n: usize,
    d: u64,
    connected_only: bool,
    override_guard: bool,
) -> Result<BigRational, OracleError> {
    if n > 6 && !override_guard {
        return Err(OracleError::SizeGuard { what: "q_brute", limit: "n <= 6", got: n });
    }
    if (3 * n as u64 + d) % 2 != 0 {
        return Ok(BigRational::zero());
    }
    let edges = ((3 * n as u64 + d) / 2) as u32;
    let (slots, _) = slot_layout(n);
    let mut sum = BigRational::zero();
    let mut simple_edges: Vec<(u32, u32)> = Vec::new();
    visit_min_deg3(n, edges, |counts, _| {
        if connected_only && !connected(n, &slots, counts) {
            return;
        }
        simple_edges.clear();
        for (i, &k) in counts.iter().enumerate() {
            if k > 0 {
                if let Slot::Pair(u, v) = slots[i] {
                    simple_edges.push((u, v));
                }
            }
        }
        if is_planar_edges(n, &simple_edges) {
            sum += weight_of(&slots, counts);
        }
    });
    Ok(sum)
}

/// q(n; d): total q-weight of planar multigraphs on `n` vertices with
/// `(3n+d)/2` edges and minimum degree ≥ 3. Zero when `3n + d` is odd.
pub fn q_brute(n: usize, d: u64) -> Result<BigRational, OracleError> {
    q_brute_impl(n, d, false)
}

/// Restriction of `q_brute` to connected multigraphs.
pub fn q_brute_connected(n: usize, d: u64) -> Result<BigRational, OracleError> {
    q_brute_impl(n, d, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Ratio;

    fn ratio(num: i64, den: i64) -> BigRational {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn two_vertex_cubic_multigraphs() {
        let gs = enum_min_deg3_multigraphs(2, 3).unwrap();
        assert_eq!(gs.len(), 2, "triple edge and dumbbell");
        assert!(enum_min_deg3_multigraphs(1, 1).unwrap().is_empty());
        assert!(enum_min_deg3_multigraphs(2, 2).unwrap().is_empty());
    }

    #[test]
    fn q_small_values() {
        assert_eq!(q_brute(2, 0).unwrap(), ratio(5, 12));
        assert_eq!(q_brute_connected(2, 0).unwrap(), ratio(5, 12));
        assert_eq!(q_brute(3, 1).unwrap(), q_brute(3, 1).unwrap());
        assert_eq!(q_brute(1, 0).unwrap(), ratio(0, 1), "odd 3n+d");
        // hand-enumerated: q(4,0) = 15/2 connected + 25/48 disconnected
        assert_eq!(q_brute_connected(4, 0).unwrap(), ratio(15, 2));
        assert_eq!(q_brute(4, 0).unwrap(), ratio(385, 48));
        // q(1,1): two loops at one vertex, weight 2^-2/2! = 1/8
        assert_eq!(q_brute(1, 1).unwrap(), ratio(1, 8));
    }
}
