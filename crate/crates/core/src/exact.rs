//! Ground-truth PPR values. Nothing here is query-counted.
//!
//! Two independent routes: a direct solve (dense LU on the relevant
//! component, fixed-point iteration on large components) and a truncated
//! step-by-step DP over walk lengths.

use nalgebra::{DMatrix, DVector};

use crate::config::EstimatorConfig;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Components up to this size are solved by LU, larger ones by iteration.
pub const DENSE_LIMIT: usize = 1200;

pub const DEFAULT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PprKind {
    SingleSource(Vertex),
    SingleTarget(Vertex),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PprVector {
    pub values: Vec<f64>,
    pub kind: PprKind,
}

impl PprVector {
    pub fn get(&self, v: Vertex) -> f64 {
        self.values[v]
    }
}

fn check(g: &Graph, v: Vertex, eps: f64) -> Result<()> {
    if v >= g.n() {
        return Err(Error::InvalidVertex { v, n: g.n() });
    }
    if eps <= 0.0 {
        return Err(Error::InvalidParam("eps must be positive".into()));
    }
    Ok(())
}

/// x[u] ≈ π(u,t) for all u.
pub fn exact_single_target(g: &Graph, cfg: &EstimatorConfig, t: Vertex, eps: f64) -> Result<PprVector> {
    check(g, t, eps)?;
    let values = solve_component(g, cfg.alpha, t, eps, Direction::Target);
    Ok(PprVector { values, kind: PprKind::SingleTarget(t) })
}

/// x[v] ≈ π(s,v) for all v.
pub fn exact_single_source(g: &Graph, cfg: &EstimatorConfig, s: Vertex, eps: f64) -> Result<PprVector> {
    check(g, s, eps)?;
    let values = solve_component(g, cfg.alpha, s, eps, Direction::Source);
    Ok(PprVector { values, kind: PprKind::SingleSource(s) })
}

/// π(t) = (1/n) Σ_u π(u,t).
pub fn exact_pagerank(g: &Graph, cfg: &EstimatorConfig, t: Vertex, eps: f64) -> Result<f64> {
    let x = exact_single_target(g, cfg, t, eps)?;
    Ok(x.values.iter().sum::<f64>() / g.n() as f64)
}

/// Σ_{k ≤ max_len} α(1−α)^k P[k-step walk from u is at t].
pub fn truncated_dp_oracle(g: &Graph, cfg: &EstimatorConfig, t: Vertex, max_len: usize) -> Result<PprVector> {
    check(g, t, 1.0)?;
    let alpha = cfg.alpha;
    let n = g.n();
    // h[u] = P[k-step walk from u is at t]; an isolated vertex stays put.
    let mut h = vec![0.0; n];
    h[t] = 1.0;
    let mut out = vec![0.0; n];
    let mut weight = alpha;
    for k in 0..=max_len {
        for u in 0..n {
            out[u] += weight * h[u];
        }
        if k == max_len {
            break;
        }
        let next: Vec<f64> = (0..n)
            .map(|u| {
                let nb = g.neighbors(u);
                if nb.is_empty() {
                    h[u]
                } else {
                    nb.iter().map(|&w| h[w]).sum::<f64>() / nb.len() as f64
                }
            })
            .collect();
        h = next;
        weight *= 1.0 - alpha;
    }
    Ok(PprVector { values: out, kind: PprKind::SingleTarget(t) })
}

#[derive(Clone, Copy)]
enum Direction {
    Target,
    Source,
}

fn solve_component(g: &Graph, alpha: f64, root: Vertex, eps: f64, dir: Direction) -> Vec<f64> {
    let n = g.n();
    let mut values = vec![0.0; n];
    if g.degree(root) == 0 {
        values[root] = 1.0;
        return values;
    }
    let comp = g.component(root);
    let k = comp.len();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let sol = if k <= DENSE_LIMIT {
        dense_solve(g, alpha, &comp, &local, dir)
    } else {
        iterate(g, alpha, &comp, &local, eps, dir)
    };
    for (i, &v) in comp.iter().enumerate() {
        values[v] = sol[i];
    }
    values
}

// Target: x_u − (1−α)/d(u) Σ_{w∈N(u)} x_w = α·1{u=root}
// Source: x_v − (1−α) Σ_{w∈N(v)} x_w/d(w) = α·1{v=root}
fn dense_solve(g: &Graph, alpha: f64, comp: &[Vertex], local: &[usize], dir: Direction) -> Vec<f64> {
    let k = comp.len();
    let mut a = DMatrix::<f64>::identity(k, k);
    for (i, &u) in comp.iter().enumerate() {
        let du = g.degree(u) as f64;
        for &w in g.neighbors(u) {
            let j = local[w];
            let coef = match dir {
                Direction::Target => (1.0 - alpha) / du,
                Direction::Source => (1.0 - alpha) / g.degree(w) as f64,
            };
            a[(i, j)] -= coef;
        }
    }
    let mut b = DVector::<f64>::zeros(k);
    b[0] = alpha;
    a.lu().solve(&b).expect("I − (1−α)P is nonsingular").iter().copied().collect()
}

fn iterate(g: &Graph, alpha: f64, comp: &[Vertex], local: &[usize], eps: f64, dir: Direction) -> Vec<f64> {
    let k = comp.len();
    // x_{j+1} = α e + (1−α) M x_j from x_0 = 0 has error ≤ (1−α)^j.
    let rounds = ((eps / 2.0).ln() / (1.0 - alpha).ln()).ceil() as usize + 1;
    let mut x = vec![0.0; k];
    for _ in 0..rounds {
        let mut next = vec![0.0; k];
        for (i, &u) in comp.iter().enumerate() {
            let s: f64 = match dir {
                Direction::Target => g.neighbors(u).iter().map(|&w| x[local[w]]).sum::<f64>() / g.degree(u) as f64,
                Direction::Source => g.neighbors(u).iter().map(|&w| x[local[w]] / g.degree(w) as f64).sum(),
            };
            next[i] = (1.0 - alpha) * s;
        }
        next[0] += alpha;
        x = next;
    }
    x
}
