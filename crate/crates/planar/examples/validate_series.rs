use planar::oracle::{q_brute, q_brute_connected};
use planar::series::{estimate_constants, solve_system};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let sol = solve_system(8).unwrap();
    for n in [2usize, 4, 6] {
        let t = Instant::now();
        let qb = q_brute(n, 0).unwrap();
        let qc = q_brute_connected(n, 0).unwrap();
        let g0 = sol.g0_count(n).unwrap();
        let g1 = sol.g1_count(n).unwrap();
        println!(
            "n={n}: qBrute={qb} g0={g0} match={} | conn qBrute={qc} g1={g1} match={} ({:?})",
            qb == g0, qc == g1, t.elapsed()
        );
    }
    let t = Instant::now();
    let sol200 = solve_system(200).unwrap();
    println!("solve_system(200) in {:?}", t.elapsed());
    let t = Instant::now();
    for (name, r) in sol200.residuals() {
        assert!(r.is_zero(), "residual {name}");
    }
    println!("residuals(200) exact-zero in {:?}", t.elapsed());
    let t = Instant::now();
    let k = estimate_constants(200).unwrap();
    println!(
        "gamma = {} +- {} ; rho = {} ; g = {} +- {} ; g_c = {} +- {} ({:?})",
        k.gamma, k.gamma_err, k.rho, k.g, k.g_err, k.g_c, k.g_c_err, t.elapsed()
    );
    let (gap, budget) = k.amplitude_ratio_check();
    println!("g_c/g = {} vs e^-G1(rho) = {} ; gap {gap} budget {budget}",
        k.g_c / k.g, (-k.g1_at_rho).exp());
    println!("total {:?}", t0.elapsed());
}
