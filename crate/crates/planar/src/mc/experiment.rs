//! Structure experiments: sample P(n, M) (or G(n, M)), decompose every
//! trial, and aggregate the component statistics that the evolution
//! theorems predict.

use super::gnm::{sample_gnm, sample_pnm_rejection, ExhaustiveSampler, McError};
use super::mcmc::{greedy_planar_seed, PlanarChain};
use super::rng::{stream_rng, STREAM_BOOTSTRAP, STREAM_CHAIN};
use crate::graph::SimpleGraph;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerMode {
    /// uniform G(n, M), no planarity conditioning
    Gnm,
    /// uniform P(n, M) by rejection
    Rejection,
    /// edge-swap chain samples (diagnostic: uniformity rests on the
    /// chain's unproven irreducibility)
    Mcmc,
    /// exactly uniform from the enumerated planar list (n ≤ 8)
    Exhaustive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub m: usize,
    pub mode: SamplerMode,
    pub trials: usize,
    pub seed: u64,
    /// MCMC burn-in in proposals; default 50·n·M
    pub mcmc_burn_in: Option<u64>,
    /// MCMC thinning in proposals between samples; default n
    pub mcmc_thin: Option<u64>,
    /// rejection cap per trial
    pub max_tries: Option<u64>,
}

impl ExperimentConfig {
    pub fn burn_in(&self) -> u64 {
        self.mcmc_burn_in.unwrap_or(50 * self.n as u64 * self.m as u64)
    }

    pub fn thin(&self) -> u64 {
        self.mcmc_thin.unwrap_or(self.n as u64).max(1)
    }
}

/// Per-trial structure record.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrialRecord {
    pub l1: u32,
    pub l2: u32,
    /// total size of complex components
    pub l_c: u32,
    /// total excess of complex components
    pub ex_c: i64,
    /// core vertices inside complex components
    pub core_c: u32,
    pub deficiency: u64,
    pub largest_is_tree: bool,
    pub contains_k4: bool,
    /// rejection attempts (1 for direct samplers)
    pub tries: u64,
}

/// Mean/sd/quantile summary of one statistic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Aggregate {
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub q05: f64,
    pub median: f64,
    pub q95: f64,
    pub max: f64,
    /// bootstrap 95% interval for the mean
    pub mean_ci: (f64, f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleStats {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub l1: Aggregate,
    pub l_c: Aggregate,
    pub ex_c: Aggregate,
    pub core_c: Aggregate,
    pub deficiency: Aggregate,
    pub largest_is_tree_fraction: f64,
    pub contains_k4_fraction: f64,
    pub acceptance_rate: f64,
    /// proposals accepted / made (MCMC only)
    pub mcmc_acceptance: Option<f64>,
}

/// Component decomposition of one sampled graph.
pub fn trial_record(g: &SimpleGraph) -> TrialRecord {
    let n = g.n();
    let adj = g.adjacency();
    let mut comp = vec![u32::MAX; n];
    let mut sizes: Vec<u32> = Vec::new();
    let mut edges_in: Vec<u64> = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if comp[s] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        comp[s] = id;
        stack.push(s as u32);
        let mut size = 0u32;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in &adj[v as usize] {
                if comp[w as usize] == u32::MAX {
                    comp[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
        edges_in.push(0);
    }
    for &(u, _) in g.edges() {
        edges_in[comp[u as usize] as usize] += 1;
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(sizes[i]));
    let l1 = sizes[order[0]];
    let l2 = if order.len() > 1 { sizes[order[1]] } else { 0 };
    let largest_excess = edges_in[order[0]] as i64 - sizes[order[0]] as i64;
    let mut l_c = 0u32;
    let mut ex_c = 0i64;
    let mut complex_comp = vec![false; sizes.len()];
    for i in 0..sizes.len() {
        let ex = edges_in[i] as i64 - sizes[i] as i64;
        if ex >= 1 {
            complex_comp[i] = true;
            l_c += sizes[i];
            ex_c += ex;
        }
    }

    // 2-core restricted to complex components, kernel degrees for the
    // deficiency, and K4 detection on kernel vertices
    let decomp = g.to_multigraph().kernelize();
    let mut core_c = 0u32;
    for &v in &decomp.core_vertices {
        if complex_comp[comp[v as usize] as usize] {
            core_c += 1;
        }
    }
    let deficiency = decomp.deficiency();
    let contains_k4 = kernel_k4(g, &decomp.kernel_vertices);

    TrialRecord {
        l1,
        l2,
        l_c,
        ex_c,
        core_c,
        deficiency,
        largest_is_tree: largest_excess == -1,
        contains_k4,
        tries: 1,
    }
}

/// K4 subgraph scan: all four corners of a K4 are kernel vertices, so the
/// quadruple search runs over those only, with direct-edge adjacency.
fn kernel_k4(g: &SimpleGraph, kernel_vertices: &[u32]) -> bool {
    let k = kernel_vertices.len();
    if k < 4 {
        return false;
    }
    let present: HashSet<(u32, u32)> = g.edges().iter().copied().collect();
    let has = |a: u32, b: u32| present.contains(&(a.min(b), a.max(b)));
    // restrict to kernel vertices with >= 3 kernel neighbors joined directly
    for a in 0..k {
        for b in a + 1..k {
            if !has(kernel_vertices[a], kernel_vertices[b]) {
                continue;
            }
            for c in b + 1..k {
                if !has(kernel_vertices[a], kernel_vertices[c])
                    || !has(kernel_vertices[b], kernel_vertices[c])
                {
                    continue;
                }
                for d in c + 1..k {
                    if has(kernel_vertices[a], kernel_vertices[d])
                        && has(kernel_vertices[b], kernel_vertices[d])
                        && has(kernel_vertices[c], kernel_vertices[d])
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn aggregate(values: &[f64], seed: u64) -> Aggregate {
    assert!(!values.is_empty());
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n.max(2) as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q = |p: f64| sorted[((p * (n - 1) as f64).round() as usize).min(n - 1)];
    // bootstrap the mean
    let mut rng = stream_rng(seed, STREAM_BOOTSTRAP);
    let mut boots: Vec<f64> = (0..1000)
        .map(|_| (0..n).map(|_| values[rng.random_range(0..n)]).sum::<f64>() / n as f64)
        .collect();
    boots.sort_by(f64::total_cmp);
    Aggregate {
        mean,
        sd: var.sqrt(),
        min: sorted[0],
        q05: q(0.05),
        median: q(0.5),
        q95: q(0.95),
        max: sorted[n - 1],
        mean_ci: (boots[25], boots[974]),
    }
}

/// Run the experiment. Independent-sampler trials use per-trial RNG
/// streams and parallelize; MCMC runs one sequential chain and records a
/// sample every `thin` proposals after burn-in. Identical configs produce
/// identical stats for any worker count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<SampleStats, McError> {
    let max_tries = cfg.max_tries.unwrap_or(1_000_000);
    let mut mcmc_acceptance = None;
    let records: Vec<TrialRecord> = match cfg.mode {
        SamplerMode::Gnm => crate::par::map_collect(0..cfg.trials as u64, |t| {
            let mut rng = stream_rng(cfg.seed, t);
            trial_record(&sample_gnm(cfg.n, cfg.m, &mut rng))
        }),
        SamplerMode::Rejection => {
            let results: Vec<Result<TrialRecord, McError>> =
                crate::par::map_collect(0..cfg.trials as u64, |t| {
                    let mut rng = stream_rng(cfg.seed, t);
                    let (g, tries) = sample_pnm_rejection(cfg.n, cfg.m, &mut rng, max_tries)?;
                    let mut rec = trial_record(&g);
                    rec.tries = tries;
                    Ok(rec)
                });
            results.into_iter().collect::<Result<Vec<_>, _>>()?
        }
        SamplerMode::Exhaustive => {
            let sampler = ExhaustiveSampler::new(cfg.n, cfg.m)?;
            crate::par::map_collect(0..cfg.trials as u64, |t| {
                let mut rng = stream_rng(cfg.seed, t);
                trial_record(sampler.draw(&mut rng))
            })
        }
        SamplerMode::Mcmc => {
            let seed_graph = greedy_planar_seed(cfg.n, cfg.m)?;
            let mut chain =
                PlanarChain::new(seed_graph, stream_rng(cfg.seed, STREAM_CHAIN));
            chain.run(cfg.burn_in());
            let mut recs = Vec::with_capacity(cfg.trials);
            for _ in 0..cfg.trials {
                chain.run(cfg.thin());
                recs.push(trial_record(&chain.graph()));
            }
            mcmc_acceptance = Some(chain.accepted as f64 / chain.proposed.max(1) as f64);
            recs
        }
    };
    let col = |f: fn(&TrialRecord) -> f64| -> Vec<f64> { records.iter().map(f).collect() };
    let total_tries: u64 = records.iter().map(|r| r.tries).sum();
    Ok(SampleStats {
        l1: aggregate(&col(|r| r.l1 as f64), cfg.seed),
        l_c: aggregate(&col(|r| r.l_c as f64), cfg.seed),
        ex_c: aggregate(&col(|r| r.ex_c as f64), cfg.seed),
        core_c: aggregate(&col(|r| r.core_c as f64), cfg.seed),
        deficiency: aggregate(&col(|r| r.deficiency as f64), cfg.seed),
        largest_is_tree_fraction: records.iter().filter(|r| r.largest_is_tree).count() as f64
            / records.len() as f64,
        contains_k4_fraction: records.iter().filter(|r| r.contains_k4).count() as f64
            / records.len() as f64,
        acceptance_rate: records.len() as f64 / total_tries.max(1) as f64,
        mcmc_acceptance,
        records,
        config: cfg.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, m: usize, mode: SamplerMode, trials: usize) -> ExperimentConfig {
        ExperimentConfig {
            n,
            m,
            mode,
            trials,
            seed: 2024,
            mcmc_burn_in: None,
            mcmc_thin: None,
            max_tries: None,
        }
    }

    #[test]
    fn trial_record_known_graphs() {
        // K4 plus isolated vertex
        let g = SimpleGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let r = trial_record(&g);
        assert_eq!(r.l1, 4);
        assert_eq!(r.l2, 1);
        assert_eq!(r.l_c, 4);
        assert_eq!(r.ex_c, 2);
        assert_eq!(r.core_c, 4);
        assert_eq!(r.deficiency, 0);
        assert!(r.contains_k4);
        assert!(!r.largest_is_tree);
        // spanning tree
        let t = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let r = trial_record(&t);
        assert!(r.largest_is_tree);
        assert_eq!(r.ex_c, 0);
        assert!(!r.contains_k4);
        // triangle + K4 sharing nothing: subdivided K4 has no direct K4
        let sub = SimpleGraph::from_edges(
            7,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (4, 3), (5, 6)],
        );
        let r = trial_record(&sub);
        assert!(!r.contains_k4, "subdivided K4 is not a K4 subgraph");
    }

    #[test]
    fn determinism_across_runs() {
        let c = cfg(30, 20, SamplerMode::Rejection, 40);
        let a = run_experiment(&c).unwrap();
        let b = run_experiment(&c).unwrap();
        assert_eq!(serde_json::to_string(&a.records).unwrap(), serde_json::to_string(&b.records).unwrap());
        assert_eq!(a.l1.mean, b.l1.mean);
    }

    #[test]
    fn exhaustive_mode_runs() {
        let c = cfg(5, 9, SamplerMode::Exhaustive, 200);
        let s = run_experiment(&c).unwrap();
        assert_eq!(s.records.len(), 200);
        assert!(s.l1.mean > 4.9, "every (5,9) planar graph is connected");
    }

    #[test]
    fn mcmc_mode_runs_and_tracks_acceptance() {
        let mut c = cfg(7, 9, SamplerMode::Mcmc, 50);
        c.mcmc_burn_in = Some(2000);
        let s = run_experiment(&c).unwrap();
        assert_eq!(s.records.len(), 50);
        assert!(s.mcmc_acceptance.unwrap() > 0.1);
    }
}
