//! Kernel census: planar min-degree-3 multigraphs with the vertex/edge
//! counts of an (excess, deficiency) kernel class, grouped by how their
//! loops and parallel edges constrain core-vertex insertions.
//!
//! Subdividing a kernel into a simple core forces interior vertices: every
//! loop needs at least two, and in a parallel class of j edges at most one
//! edge may stay bare. The census keeps, per structural profile, the exact
//! generating polynomial of admissible insertion vectors; the spec-level
//! summary `entries` maps the minimum forced insertions r = 2f1 + Σ(j−1)f_j
//! to total q-weight.

use super::{enum_min_deg3_multigraphs, OracleError};
use crate::planarity::is_planar_multi;
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;

/// Loop/parallel structure of a kernel, as far as insertion counting cares.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InsertionProfile {
    /// per-vertex loop counts (only vertices with loops), sorted
    pub loop_classes: Vec<u32>,
    /// parallel-class sizes ≥ 2, sorted
    pub parallel_classes: Vec<u32>,
    /// number of single (multiplicity-1) edges
    pub single_edges: u32,
}

impl InsertionProfile {
    pub fn edge_count(&self) -> u64 {
        self.loop_classes.iter().map(|&c| c as u64).sum::<u64>()
            + self.parallel_classes.iter().map(|&j| j as u64).sum::<u64>()
            + self.single_edges as u64
    }

    /// Minimum insertions forced by simplicity: 2 per loop, j−1 per
    /// parallel class of size j.
    pub fn required_insertions(&self) -> u64 {
        2 * self.loop_classes.iter().map(|&c| c as u64).sum::<u64>()
            + self.parallel_classes.iter().map(|&j| (j - 1) as u64).sum::<u64>()
    }

    /// Numerator polynomial of the insertion-vector generating function:
    /// the admissible vectors are counted by `num(y) / (1-y)^e`, where a
    /// loop class of c loops contributes y^(2c), a parallel class of size j
    /// contributes y^(j-1)·(j − (j−1)y), and single edges contribute 1.
    pub fn insertion_numerator(&self) -> Vec<BigInt> {
        let mut poly: Vec<BigInt> = vec![BigInt::one()];
        for &c in &self.loop_classes {
            // multiply by y^(2c)
            let mut shifted = vec![BigInt::zero(); 2 * c as usize];
            shifted.extend(poly);
            poly = shifted;
        }
        for &j in &self.parallel_classes {
            // multiply by y^(j-1) * (j - (j-1) y)
            let jj = BigInt::from(j);
            let jm1 = BigInt::from(j - 1);
            let mut next = vec![BigInt::zero(); poly.len() + j as usize];
            for (q, coeff) in poly.iter().enumerate() {
                next[q + (j - 1) as usize] += coeff * &jj;
                next[q + j as usize] -= coeff * &jm1;
            }
            poly = next;
        }
        poly
    }

    /// Number of ways to distribute `x` unlabeled insertions over the `e`
    /// kernel edges so that the subdivided multigraph is simple:
    /// `Σ_q num_q · C(x − q + e − 1, e − 1)`.
    pub fn insertion_vector_count(&self, x: u64) -> BigInt {
        let e = self.edge_count();
        debug_assert!(e >= 1);
        let num = self.insertion_numerator();
        let mut total = BigInt::zero();
        for (q, coeff) in num.iter().enumerate() {
            if coeff.is_zero() || (q as u64) > x {
                continue;
            }
            total += coeff * binomial(x - q as u64 + e - 1, e - 1);
        }
        total
    }
}

/// C(a, b) as a big integer (0 when b > a).
pub(crate) fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// One census class: all kernels sharing an insertion profile.
#[derive(Debug, Clone)]
pub struct CensusClass {
    pub profile: InsertionProfile,
    pub required_insertions: u64,
    pub weight: BigRational,
}

/// Census of the kernels with excess `l` and deficiency `d`: planar
/// min-degree-3 multigraphs on 2l−d vertices with 3l−d edges.
#[derive(Debug, Clone)]
pub struct KernelCensus {
    pub excess: u64,
    pub deficiency: u64,
    pub kernel_vertices: usize,
    pub kernel_edges: u64,
    /// spec-level summary: required insertions r → total q-weight
    pub entries: BTreeMap<u64, BigRational>,
    /// exact per-profile classes (refines `entries`)
    pub classes: Vec<CensusClass>,
}

impl KernelCensus {
    pub fn total_weight(&self) -> BigRational {
        self.classes.iter().map(|c| c.weight.clone()).fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Enumerate the kernels of the (l, d) class and group them. Guarded at
/// kernel size 2l−d ≤ 6.
pub fn kernel_census_brute(l: u64, d: u64) -> Result<KernelCensus, OracleError> {
    if l == 0 || d > 2 * l - 1 {
        return Err(OracleError::Infeasible(format!(
            "kernel class needs l >= 1 and d <= 2l-1 (got l = {l}, d = {d})"
        )));
    }
    let v = (2 * l - d) as usize;
    let e = 3 * l - d;
    if v > 6 {
        return Err(OracleError::SizeGuard {
            what: "kernel_census_brute",
            limit: "2l - d <= 6",
            got: v,
        });
    }
    let mut by_profile: BTreeMap<InsertionProfile, BigRational> = BTreeMap::new();
    for g in enum_min_deg3_multigraphs(v, e as u32)? {
        if !is_planar_multi(&g) {
            continue;
        }
        let mut loop_classes: Vec<u32> =
            g.loop_counts().iter().copied().filter(|&c| c > 0).collect();
        loop_classes.sort_unstable();
        let mut parallel_classes: Vec<u32> = Vec::new();
        let mut single_edges = 0u32;
        for (_, _, m) in g.pair_edges() {
            if m >= 2 {
                parallel_classes.push(m);
            } else {
                single_edges += 1;
            }
        }
        parallel_classes.sort_unstable();
        let profile = InsertionProfile { loop_classes, parallel_classes, single_edges };
        let w = g.weight();
        by_profile
            .entry(profile)
            .and_modify(|acc| *acc += w.clone())
            .or_insert(w);
    }
    let mut entries: BTreeMap<u64, BigRational> = BTreeMap::new();
    let mut classes = Vec::new();
    for (profile, weight) in by_profile {
        let r = profile.required_insertions();
        entries.entry(r).and_modify(|acc| *acc += weight.clone()).or_insert_with(|| weight.clone());
        classes.push(CensusClass { profile, required_insertions: r, weight });
    }
    Ok(KernelCensus {
        excess: l,
        deficiency: d,
        kernel_vertices: v,
        kernel_edges: e,
        entries,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Ratio;

    fn ratio(num: i64, den: i64) -> BigRational {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn census_l1_d0() {
        // 2 vertices, 3 edges: triple edge (r=2, w=1/6), dumbbell (r=4, w=1/4)
        let c = kernel_census_brute(1, 0).unwrap();
        assert_eq!(c.kernel_vertices, 2);
        assert_eq!(c.kernel_edges, 3);
        assert_eq!(c.entries.len(), 2);
        assert_eq!(c.entries[&2], ratio(1, 6));
        assert_eq!(c.entries[&4], ratio(1, 4));
    }

    #[test]
    fn census_l1_d1() {
        // 1 vertex, 2 edges: two loops, weight 1/8, r = 4
        let c = kernel_census_brute(1, 1).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert_eq!(c.entries[&4], ratio(1, 8));
    }

    #[test]
    fn insertion_counts_triple_edge() {
        let p = InsertionProfile {
            loop_classes: vec![],
            parallel_classes: vec![3],
            single_edges: 0,
        };
        assert_eq!(p.required_insertions(), 2);
        // x = 2: (1,1,0) patterns -> 3; x = 3: 3 + perms of (2,1,0) -> 7
        assert_eq!(p.insertion_vector_count(2), BigInt::from(3));
        assert_eq!(p.insertion_vector_count(3), BigInt::from(7));
        assert_eq!(p.insertion_vector_count(1), BigInt::zero());
    }

    #[test]
    fn insertion_counts_dumbbell() {
        let p = InsertionProfile {
            loop_classes: vec![1, 1],
            parallel_classes: vec![],
            single_edges: 1,
        };
        assert_eq!(p.required_insertions(), 4);
        // x = 4: loops get (2,2), bridge 0 -> exactly 1 vector
        assert_eq!(p.insertion_vector_count(4), BigInt::one());
        // x = 5: (3,2,0),(2,3,0),(2,2,1) -> 3
        assert_eq!(p.insertion_vector_count(5), BigInt::from(3));
    }

    #[test]
    fn census_l2_d1_nonempty() {
        let c = kernel_census_brute(2, 1).unwrap();
        assert_eq!(c.kernel_vertices, 3);
        assert_eq!(c.kernel_edges, 5);
        assert!(!c.classes.is_empty());
        // weights positive
        for cl in &c.classes {
            assert!(cl.weight > BigRational::zero());
        }
    }
}
