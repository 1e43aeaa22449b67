//! Forward and backward Monte Carlo.

use std::collections::HashMap;

use rand::Rng;

use crate::access::Oracle;
use crate::config::{ceil_count, EstimatorConfig};
use crate::error::Result;
use crate::graph::Vertex;
use crate::sparse::SparseEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOutcome {
    pub endpoint: Vertex,
    pub steps: usize,
}

/// α-discounted walk. Each step costs a DEG and a NEIGH query; a walk that
/// reaches an isolated vertex stops there.
pub fn random_walk<O: Oracle>(o: &mut O, start: Vertex, alpha: f64) -> Result<WalkOutcome> {
    let mut v = start;
    let mut steps = 0;
    loop {
        if o.rng().gen::<f64>() < alpha {
            return Ok(WalkOutcome { endpoint: v, steps });
        }
        let d = o.deg(v)?;
        if d == 0 {
            return Ok(WalkOutcome { endpoint: v, steps });
        }
        let i = o.rng().gen_range(1..=d);
        v = o.neigh(v, i)?;
        steps += 1;
    }
}

pub fn mc_walk_count(cfg: &EstimatorConfig) -> usize {
    ceil_count(cfg.kappa_mc() / cfg.delta)
}

/// π̂(s,u) = fraction of W = ⌈κ/δ⌉ walks from `s` ending at u.
pub fn mc_single_source<O: Oracle>(o: &mut O, s: Vertex, cfg: &EstimatorConfig) -> Result<SparseEstimate> {
    let w = mc_walk_count(cfg);
    let mut hits: indexmap::IndexMap<Vertex, usize> = indexmap::IndexMap::new();
    for _ in 0..w {
        let end = random_walk(o, s, cfg.alpha)?.endpoint;
        *hits.entry(end).or_insert(0) += 1;
    }
    let mut est = SparseEstimate::new();
    for (u, k) in hits {
        est.set(u, k as f64 / w as f64);
    }
    Ok(est)
}

/// Walks from `t`, rescaled by reversibility: π̂(u,t) = freq(u)·d(t)/d(u).
pub fn bmc_single_target<O: Oracle>(o: &mut O, t: Vertex, cfg: &EstimatorConfig) -> Result<SparseEstimate> {
    let dt = o.deg(t)?;
    if dt == 0 {
        return Ok(SparseEstimate::unit(t));
    }
    let w = ceil_count(cfg.kappa_mc() * dt as f64 / cfg.delta);
    let mut hits: indexmap::IndexMap<Vertex, usize> = indexmap::IndexMap::new();
    for _ in 0..w {
        let end = random_walk(o, t, cfg.alpha)?.endpoint;
        *hits.entry(end).or_insert(0) += 1;
    }
    let mut est = SparseEstimate::new();
    for (u, k) in hits {
        let du = o.deg(u)?;
        est.set(u, k as f64 / w as f64 * dt as f64 / du as f64);
    }
    Ok(est)
}

/// Walk count for [`bmc_single_node`]: ⌈min{d(t), 2m/((1−α)d(t))}/(αc²p_f)⌉.
pub fn bmc_node_walk_count(dt: usize, m: usize, cfg: &EstimatorConfig) -> usize {
    let dt = dt as f64;
    let a = cfg.alpha;
    let budget = dt.min(2.0 * m as f64 / ((1.0 - a) * dt));
    ceil_count(budget / (a * cfg.c * cfg.c * cfg.p_f)).max(1)
}

/// π̂(t) = (d(t)/(nW)) Σ_walks 1/d(endpoint), walks started at `t`.
pub fn bmc_single_node<O: Oracle>(o: &mut O, t: Vertex, cfg: &EstimatorConfig) -> Result<f64> {
    let n = o.n() as f64;
    let dt = o.deg(t)?;
    if dt == 0 {
        return Ok(1.0 / n);
    }
    let w = bmc_node_walk_count(dt, o.m(), cfg);
    let mut degs: HashMap<Vertex, usize> = HashMap::new();
    let mut acc = 0.0;
    for _ in 0..w {
        let end = random_walk(o, t, cfg.alpha)?.endpoint;
        let d = match degs.get(&end) {
            Some(&d) => d,
            None => {
                let d = o.deg(end)?;
                degs.insert(end, d);
                d
            }
        };
        acc += 1.0 / d as f64;
    }
    Ok(dt as f64 * acc / (n * w as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::access::{AccessModel, Session};
    use crate::graph::Graph;

    #[test]
    fn isolated_start_never_moves() {
        let g = Graph::from_edges(2, &[]).unwrap();
        let mut s = Session::new(&g, AccessModel::BASE, 1);
        for _ in 0..100 {
            let w = random_walk(&mut s, 1, 0.2).unwrap();
            assert_eq!(w, WalkOutcome { endpoint: 1, steps: 0 });
        }
    }

    #[test]
    fn k2_endpoint_frequency() {
        let g = Graph::parse("2 1\n0 1").unwrap();
        let mut s = Session::new(&g, AccessModel::BASE, 7);
        let walks = 100_000;
        let home = (0..walks).filter(|_| random_walk(&mut s, 0, 0.2).unwrap().endpoint == 0).count();
        let p = home as f64 / walks as f64;
        assert!((p - 1.0 / 1.8).abs() < 0.01, "{p}");
    }

    #[test]
    fn k3_mean_steps() {
        let g = Graph::parse("3 3\n0 1\n1 2\n0 2").unwrap();
        let mut s = Session::new(&g, AccessModel::BASE, 8);
        let walks = 100_000;
        let total: usize = (0..walks).map(|_| random_walk(&mut s, 0, 0.2).unwrap().steps).sum();
        let mean = total as f64 / walks as f64;
        assert!((mean - 4.0).abs() < 0.1, "{mean}");
        // two queries per step, nothing else
        assert_eq!(s.counts().total(), 2 * total as u64);
    }

    #[test]
    fn single_vertex_estimators() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let cfg = EstimatorConfig::with_delta(0.5);
        let mut s = Session::new(&g, AccessModel::BASE, 0);
        assert_eq!(mc_single_source(&mut s, 0, &cfg).unwrap().get(0), 1.0);
        assert_eq!(bmc_single_target(&mut s, 0, &cfg).unwrap().get(0), 1.0);
        assert_eq!(bmc_single_node(&mut s, 0, &cfg).unwrap(), 1.0);
    }

    #[test]
    fn bmc_isolated_target() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let cfg = EstimatorConfig::with_delta(0.5);
        let mut s = Session::new(&g, AccessModel::BASE, 0);
        let est = bmc_single_target(&mut s, 2, &cfg).unwrap();
        assert_eq!(est.len(), 1);
        assert_eq!(est.get(2), 1.0);
        assert!((bmc_single_node(&mut s, 2, &cfg).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn node_walk_count_uses_smaller_bound() {
        let cfg = EstimatorConfig::default();
        // d(t)=10, m large: the d(t) term wins
        assert_eq!(bmc_node_walk_count(10, 10_000, &cfg), 50_000);
        // hub with d(t)=100, m=100: 2m/((1−α)d(t)) = 2.5
        assert_eq!(bmc_node_walk_count(100, 100, &cfg), 12_500);
    }
}
