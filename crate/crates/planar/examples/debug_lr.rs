use planar::graph::SimpleGraph;
use planar::planarity::{is_planar, is_planar_kuratowski};

fn mask_graph(n: usize, mask: u32) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if mask >> bit & 1 == 1 { edges.push((u, v)); }
            bit += 1;
        }
    }
    SimpleGraph::from_edges(n, &edges)
}

fn main() {
    let g = mask_graph(6, 15751);
    println!("edges: {:?}", g.edges());
    println!("lr: {}  kuratowski: {}", is_planar(&g), is_planar_kuratowski(&g));
}
