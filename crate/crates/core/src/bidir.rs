//! Estimators that combine push with sampling: SingleNode, BiPPRAvg and
//! the JUMP-based bidirectional single-target estimators.

use indexmap::IndexMap;
use rand::Rng;

use crate::access::Oracle;
use crate::config::{ceil_count, EstimatorConfig};
use crate::error::{QueryKind, Result};
use crate::graph::Vertex;
use crate::mc::random_walk;
use crate::push::{backwards_push, backwards_push_avg, NeighborScan, PushState};
use crate::sparse::SparseEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingleNodeParams {
    pub tau: usize,
    pub w_low: usize,
    pub w_high: usize,
}

/// τ = n if d(t) ≤ √n else ⌈√n⌉; w_L = ⌈2 min{τ,(1−α)d(t)}/(c²αp_f)⌉;
/// w_H = ⌈2(1−α)n/(τc²αp_f)⌉.
pub fn single_node_params(dt: usize, n: usize, cfg: &EstimatorConfig) -> SingleNodeParams {
    let root = (n as f64).sqrt();
    let tau = if dt as f64 <= root { n } else { ceil_count(root) };
    let k = cfg.c * cfg.c * cfg.alpha * cfg.p_f;
    let low = (tau as f64).min((1.0 - cfg.alpha) * dt as f64);
    SingleNodeParams {
        tau,
        w_low: ceil_count(2.0 * low / k),
        w_high: ceil_count(2.0 * (1.0 - cfg.alpha) * n as f64 / (tau as f64 * k)),
    }
}

/// Largest k such that the first k entries of NEIGH-SORTED(t) have degree ≤ τ.
pub fn low_degree_prefix<O: Oracle>(o: &mut O, t: Vertex, dt: usize, tau: usize) -> Result<usize> {
    let (mut lo, mut hi) = (0usize, dt);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        let v = o.neigh_sorted(t, mid)?;
        if o.deg(v)? <= tau {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// Alg. 3: unbiased estimate of π(t) using JUMP, NEIGH-SORTED and ADJ.
pub fn single_node<O: Oracle>(o: &mut O, t: Vertex, cfg: &EstimatorConfig) -> Result<f64> {
    single_node_with(o, t, cfg, None)
}

/// [`single_node`] with an optional parameter override (used by tests that
/// pin small walk counts).
pub fn single_node_with<O: Oracle>(
    o: &mut O,
    t: Vertex,
    cfg: &EstimatorConfig,
    params: Option<SingleNodeParams>,
) -> Result<f64> {
    o.model().require(&[QueryKind::Jump, QueryKind::NeighSorted, QueryKind::Adj])?;
    let n = o.n();
    let nf = n as f64;
    let a = cfg.alpha;
    let dt = o.deg(t)?;
    if dt == 0 {
        return Ok(1.0 / nf);
    }
    let SingleNodeParams { tau, w_low, w_high } = params.unwrap_or_else(|| single_node_params(dt, n, cfg));
    let xl = low_degree_prefix(o, t, dt, tau)?;
    let mut est = a / nf;
    if xl > 0 && w_low > 0 {
        let mut acc = 0.0;
        for _ in 0..w_low {
            let i = o.rng().gen_range(1..=xl);
            let x = o.neigh_sorted(t, i)?;
            let end = random_walk(o, x, a)?.endpoint;
            acc += 1.0 / o.deg(end)? as f64;
        }
        est += (1.0 - a) * xl as f64 * acc / (nf * w_low as f64);
    }
    if w_high > 0 {
        let mut acc = 0.0;
        for _ in 0..w_high {
            let start = o.jump()?;
            let x = random_walk(o, start, a)?.endpoint;
            if x == t {
                continue;
            }
            let dx = o.deg(x)?;
            if dx > tau && o.adj(x, t)? {
                acc += 1.0 / dx as f64;
            }
        }
        est += (1.0 - a) * acc / w_high as f64;
    }
    Ok(est)
}

/// Where the X-correction of BiPPRAvg is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correction {
    /// Scan N(t) and add (1−α)/d(x) to r(x) for x ∈ X before sampling.
    Eager,
    /// Add the term at walk endpoints u with d(u) > 1/r_max and ADJ(u,t).
    Lazy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiPprParams {
    pub r_max: f64,
    pub walks: usize,
}

pub fn bippr_params(cfg: &EstimatorConfig) -> BiPprParams {
    let r_max = cfg.delta.cbrt().min(0.5);
    BiPprParams { r_max, walks: ceil_count(2.0 * r_max / (cfg.c * cfg.c * cfg.delta * cfg.p_f)).max(1) }
}

/// BackwardsPushAvg from `t` followed by the X-correction; the returned
/// residuals satisfy the bippr identity p(u) + Σ_v r(v)π(u,v) = π(u,t).
pub fn corrected_push_avg<O: Oracle>(o: &mut O, t: Vertex, r_max: f64, cfg: &EstimatorConfig) -> Result<PushState> {
    let out = backwards_push_avg(o, t, r_max, cfg, NeighborScan::Full)?;
    let mut st = out.state;
    for x in out.skipped.unwrap_or_default() {
        let dx = o.deg(x)?;
        st.r.add(x, (1.0 - cfg.alpha) / dx as f64);
    }
    Ok(st)
}

/// Alg. 6: π̂(s,t) = p(s) + (1/n_r) Σ_i r(u_i) over n_r walks from `s`.
pub fn bippr_avg_pair<O: Oracle>(
    o: &mut O,
    s: Vertex,
    t: Vertex,
    cfg: &EstimatorConfig,
    mode: Correction,
) -> Result<f64> {
    let BiPprParams { r_max, walks } = bippr_params(cfg);
    let a = cfg.alpha;
    match mode {
        Correction::Eager => {
            let st = corrected_push_avg(o, t, r_max, cfg)?;
            let mut acc = 0.0;
            for _ in 0..walks {
                let u = random_walk(o, s, a)?.endpoint;
                acc += st.r.get(u);
            }
            Ok(st.p.get(s) + acc / walks as f64)
        }
        Correction::Lazy => {
            o.model().require(&[QueryKind::NeighSorted, QueryKind::Adj])?;
            let st = backwards_push_avg(o, t, r_max, cfg, NeighborScan::SortedPrefix)?.state;
            let mut acc = 0.0;
            for _ in 0..walks {
                let u = random_walk(o, s, a)?.endpoint;
                let mut r = st.r.get(u);
                if u != t {
                    let du = o.deg(u)?;
                    if du as f64 > 1.0 / r_max && o.adj(u, t)? {
                        r += (1.0 - a) / du as f64;
                    }
                }
                acc += r;
            }
            Ok(st.p.get(s) + acc / walks as f64)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpVariant {
    /// BackwardsPush with r_max = (δd(t)/n)^{1/2}.
    Worst,
    /// BackwardsPushAvg with r_max = (δ/n)^{1/3}.
    Avg,
}

pub fn jump_st_rmax(dt: usize, n: usize, cfg: &EstimatorConfig, variant: JumpVariant) -> f64 {
    let nf = n as f64;
    match variant {
        JumpVariant::Worst => (cfg.delta * dt as f64 / nf).sqrt().min(0.5),
        JumpVariant::Avg => (cfg.delta / nf).cbrt().min(0.5),
    }
}

/// JUMP-started walks bucketed by start vertex on top of a push state.
pub fn jump_bidirectional_st<O: Oracle>(
    o: &mut O,
    t: Vertex,
    cfg: &EstimatorConfig,
    variant: JumpVariant,
) -> Result<SparseEstimate> {
    o.model().require(&[QueryKind::Jump])?;
    let dt = o.deg(t)?;
    let r_max = jump_st_rmax(dt, o.n(), cfg, variant);
    let st = match variant {
        JumpVariant::Worst => backwards_push(o, t, r_max, cfg)?,
        JumpVariant::Avg => corrected_push_avg(o, t, r_max, cfg)?,
    };
    let walks = ceil_count(cfg.kappa_mc() * o.n() as f64 * r_max / cfg.delta);
    jump_walks_from_state(o, &st, walks, cfg)
}

/// π̂(u,t) = p(u) + mean of r(endpoint) over the walks that started at u
/// (p(u) alone when no walk started there).
pub fn jump_walks_from_state<O: Oracle>(
    o: &mut O,
    st: &PushState,
    walks: usize,
    cfg: &EstimatorConfig,
) -> Result<SparseEstimate> {
    o.model().require(&[QueryKind::Jump])?;
    let mut buckets: IndexMap<Vertex, (f64, usize)> = IndexMap::new();
    for _ in 0..walks {
        let u = o.jump()?;
        let end = random_walk(o, u, cfg.alpha)?.endpoint;
        let e = buckets.entry(u).or_insert((0.0, 0));
        e.0 += st.r.get(end);
        e.1 += 1;
    }
    let mut est = st.p.clone();
    for (u, (sum, k)) in buckets {
        if sum > 0.0 {
            est.add(u, sum / k as f64);
        }
    }
    Ok(est)
}
