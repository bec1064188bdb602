//! Cross-validation of the left-right tester against the independent
//! Kuratowski-subdivision oracle, plus the kernel-planarity equivalence.

use planar::graph::{LabeledMultigraph, SimpleGraph};
use planar::planarity::{is_planar, is_planar_kuratowski, is_planar_multi};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

fn mask_graph(n: usize, mask: u32) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    SimpleGraph::from_edges(n, &edges)
}

#[test]
fn lr_equals_kuratowski_exhaustive_n6() {
    let n = 6;
    let slots = n * (n - 1) / 2;
    let bad: Vec<u32> = (0u32..1 << slots)
        .into_par_iter()
        .filter(|&mask| {
            let g = mask_graph(n, mask);
            is_planar(&g) != is_planar_kuratowski(&g)
        })
        .collect();
    assert!(bad.is_empty(), "disagreements at masks {:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn lr_equals_kuratowski_random_n9() {
    let trials = 10_000;
    let bad: Vec<u64> = (0u64..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = StdRng::seed_from_u64(0x5eed_0000 + t);
            let n = rng.random_range(5..=9);
            let slots = n * (n - 1) / 2;
            // edge probability around the planarity-interesting density
            let m = rng.random_range(8..=(3 * n - 6).max(9) + 4).min(slots);
            let mut all: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            for i in 0..m {
                let j = rng.random_range(i..slots);
                all.swap(i, j);
            }
            let g = SimpleGraph::from_edges(n, &all[..m]);
            is_planar(&g) != is_planar_kuratowski(&g)
        })
        .collect();
    assert!(bad.is_empty(), "disagreements at seeds {:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn planarity_equals_kernel_planarity() {
    // random multigraphs, n <= 12: planar iff the simplified kernel is planar
    let trials = 10_000;
    let bad: Vec<u64> = (0u64..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = StdRng::seed_from_u64(0xbeef_0000 + t);
            let n = rng.random_range(1..=12usize);
            let mut g = LabeledMultigraph::new(n);
            let edges = rng.random_range(0..=(2 * n));
            for _ in 0..edges {
                let u = rng.random_range(0..n as u32);
                let v = rng.random_range(0..n as u32);
                g.add_edge(u, v, 1);
            }
            let via_kernel = is_planar(&g.kernelize().kernel.simplify());
            is_planar_multi(&g) != via_kernel
        })
        .collect();
    assert!(bad.is_empty(), "kernel-planarity mismatches at seeds {:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn planarity_is_monotone_under_edge_deletion() {
    let mut rng = StdRng::seed_from_u64(77);
    for _ in 0..300 {
        let n = rng.random_range(5..=10usize);
        let slots = n * (n - 1) / 2;
        let m = rng.random_range(0..=slots);
        let mut all: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        for i in 0..m {
            let j = rng.random_range(i..slots);
            all.swap(i, j);
        }
        let g = SimpleGraph::from_edges(n, &all[..m]);
        if is_planar(&g) && m > 0 {
            let k = rng.random_range(0..m);
            let sub: Vec<(u32, u32)> =
                all[..m].iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &e)| e).collect();
            assert!(is_planar(&SimpleGraph::from_edges(n, &sub)));
        }
    }
}

#[test]
fn round_trip_and_core_properties_random() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=10usize);
        let mut g = LabeledMultigraph::new(n);
        for _ in 0..rng.random_range(0..=2 * n) {
            g.add_edge(rng.random_range(0..n as u32), rng.random_range(0..n as u32), 1);
        }
        let d = g.kernelize();
        assert_eq!(d.reassemble(), g, "round trip failed");
        // kernel minimum degree >= 3 whenever nonempty
        for v in 0..d.kernel.n() as u32 {
            assert!(d.kernel.degree(v) >= 3);
        }
        // complex graphs preserve excess through core and kernel
        if g.is_complex() {
            assert_eq!(g.core().excess(), g.excess());
            assert_eq!(d.kernel.excess(), g.excess());
        }
        // weight in (0, 1], equal to 1 iff simple
        let w = g.weight();
        assert!(w > num::BigRational::from_integer(0.into()));
        assert!(w <= num::BigRational::from_integer(1.into()));
        assert_eq!(w == num::BigRational::from_integer(1.into()), g.is_simple());
    }
}
