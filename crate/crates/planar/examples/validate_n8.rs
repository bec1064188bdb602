use planar::oracle::q_brute_unguarded;
use planar::series::solve_system;
use std::time::Instant;

fn main() {
    let sol = solve_system(8).unwrap();
    let t = Instant::now();
    let q8 = q_brute_unguarded(8, 0, false).unwrap();
    let q8c = q_brute_unguarded(8, 0, true).unwrap();
    println!("brute q(8,0)      = {q8}  ({:?})", t.elapsed());
    println!("series g0(8)      = {}", sol.g0_count(8).unwrap());
    println!("brute q_conn(8,0) = {q8c}");
    println!("series g1(8)      = {}", sol.g1_count(8).unwrap());
    println!("all match: {}", q8 == sol.g0_count(8).unwrap() && q8c == sol.g1_count(8).unwrap());
}
