//! Local push: BackwardsPush, the power method, RandPush, the hybrid
//! single-target estimator and BackwardsPushAvg.

use std::collections::{HashSet, VecDeque};

use rand::Rng;

use crate::access::Oracle;
use crate::config::EstimatorConfig;
use crate::error::{QueryKind, Result};
use crate::graph::Vertex;
use crate::sparse::{SparseEstimate, SparseVec};

/// Residuals at or below this are never pushed.
pub const RESIDUAL_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PushState {
    pub p: SparseVec,
    pub r: SparseVec,
}

impl PushState {
    /// p = 0, r = e_t.
    pub fn unit(t: Vertex) -> PushState {
        PushState { p: SparseVec::new(), r: SparseVec::unit(t) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PushParams {
    pub r_max: f64,
    pub theta: f64,
    pub rounds: usize,
}

/// Parameters of the hybrid estimator for target degree `dt`.
pub fn hybrid_params(dt: usize, n: usize, cfg: &EstimatorConfig) -> PushParams {
    let r_max = (dt as f64 * cfg.delta / n as f64).sqrt().min(0.5);
    let rounds = cfg.rounds_for(cfg.c * cfg.delta / 2.0).max(1);
    let theta = cfg.c * cfg.c * cfg.delta * cfg.p_f / (4.0 * rounds as f64);
    PushParams { r_max, theta, rounds }
}

/// Work queue of vertices whose residual crossed the threshold (FIFO).
struct Frontier {
    queue: VecDeque<Vertex>,
    queued: HashSet<Vertex>,
}

impl Frontier {
    fn new() -> Frontier {
        Frontier { queue: VecDeque::new(), queued: HashSet::new() }
    }

    fn offer(&mut self, v: Vertex) {
        if self.queued.insert(v) {
            self.queue.push_back(v);
        }
    }

    fn pop(&mut self) -> Option<Vertex> {
        let v = self.queue.pop_front()?;
        self.queued.remove(&v);
        Some(v)
    }
}

/// One backward push at `v`. Returns the neighbours whose residual changed.
fn push_at<O: Oracle>(o: &mut O, st: &mut PushState, v: Vertex, alpha: f64, touched: &mut Vec<Vertex>) -> Result<()> {
    let rv = st.r.get(v);
    st.p.add(v, alpha * rv);
    st.r.set(v, 0.0);
    let d = o.deg(v)?;
    touched.clear();
    if d == 0 {
        // a walk at an isolated vertex stays there
        st.r.set(v, (1.0 - alpha) * rv);
        touched.push(v);
        return Ok(());
    }
    for i in 1..=d {
        let u = o.neigh(v, i)?;
        let du = o.deg(u)?;
        st.r.add(u, (1.0 - alpha) * rv / du as f64);
        touched.push(u);
    }
    Ok(())
}

fn push_loop<O: Oracle, F: FnMut(&PushState)>(
    o: &mut O,
    st: &mut PushState,
    r_max: f64,
    alpha: f64,
    mut after_push: F,
) -> Result<()> {
    let thr = r_max.max(RESIDUAL_FLOOR);
    let mut frontier = Frontier::new();
    for (v, x) in st.r.iter() {
        if x > thr {
            frontier.offer(v);
        }
    }
    let mut touched = Vec::new();
    while let Some(v) = frontier.pop() {
        if st.r.get(v) <= thr {
            continue;
        }
        push_at(o, st, v, alpha, &mut touched)?;
        after_push(st);
        for &u in &touched {
            if st.r.get(u) > thr {
                frontier.offer(u);
            }
        }
    }
    Ok(())
}

/// Alg. 1: push from `t` until every residual is at most `r_max`.
pub fn backwards_push<O: Oracle>(o: &mut O, t: Vertex, r_max: f64, cfg: &EstimatorConfig) -> Result<PushState> {
    backwards_push_traced(o, t, r_max, cfg, |_| {})
}

/// [`backwards_push`] calling `after_push` with the state after every push.
pub fn backwards_push_traced<O: Oracle, F: FnMut(&PushState)>(
    o: &mut O,
    t: Vertex,
    r_max: f64,
    cfg: &EstimatorConfig,
    after_push: F,
) -> Result<PushState> {
    o.deg(t)?;
    let mut st = PushState::unit(t);
    push_loop(o, &mut st, r_max, cfg.alpha, after_push)?;
    Ok(st)
}

/// BackwardsPush run as a single-target estimator with r_max = cδ.
pub fn bp_single_target<O: Oracle>(o: &mut O, t: Vertex, cfg: &EstimatorConfig) -> Result<SparseEstimate> {
    Ok(backwards_push(o, t, cfg.c * cfg.delta, cfg)?.p)
}

/// `rounds` synchronous pushes at every vertex with nonzero residual.
pub fn power_method_target<O: Oracle>(o: &mut O, t: Vertex, rounds: usize, cfg: &EstimatorConfig) -> Result<PushState> {
    power_rounds(o, PushState::unit(t), rounds, cfg.alpha, Direction::Target)
}

/// The same synchronous rounds on the source recurrence: p ≈ π(s,·).
pub fn power_method_source<O: Oracle>(o: &mut O, s: Vertex, rounds: usize, cfg: &EstimatorConfig) -> Result<PushState> {
    power_rounds(o, PushState::unit(s), rounds, cfg.alpha, Direction::Source)
}

#[derive(Clone, Copy)]
enum Direction {
    Target,
    Source,
}

fn power_rounds<O: Oracle>(
    o: &mut O,
    mut st: PushState,
    rounds: usize,
    alpha: f64,
    dir: Direction,
) -> Result<PushState> {
    for _ in 0..rounds {
        let mut next = SparseVec::new();
        for (v, rv) in st.r.iter() {
            if rv == 0.0 {
                continue;
            }
            st.p.add(v, alpha * rv);
            let d = o.deg(v)?;
            if d == 0 {
                next.add(v, (1.0 - alpha) * rv);
                continue;
            }
            for i in 1..=d {
                let u = o.neigh(v, i)?;
                let share = match dir {
                    Direction::Target => (1.0 - alpha) * rv / o.deg(u)? as f64,
                    Direction::Source => (1.0 - alpha) * rv / d as f64,
                };
                next.add(u, share);
            }
        }
        st.r = next;
    }
    Ok(st)
}

/// Alg. 2 with the sorted-prefix implementation. Starts from `init`
/// (reserves carried over, residuals pushed) and returns p̂ = init.p + Σ_i p̂_i.
pub fn rand_push<O: Oracle>(
    o: &mut O,
    init: &PushState,
    theta: f64,
    rounds: usize,
    cfg: &EstimatorConfig,
) -> Result<SparseEstimate> {
    o.model().require(&[QueryKind::NeighSorted])?;
    let alpha = cfg.alpha;
    let mut p = init.p.clone();
    let mut r = init.r.clone();
    for _ in 0..rounds {
        let mut next = SparseVec::new();
        for (v, rv) in r.iter() {
            if rv <= 0.0 {
                continue;
            }
            p.add(v, alpha * rv);
            let d = o.deg(v)?;
            if d == 0 {
                next.add(v, (1.0 - alpha) * rv);
                continue;
            }
            let tau = o.rng().gen::<f64>() * theta;
            for i in 1..=d {
                let u = o.neigh_sorted(v, i)?;
                let delta = (1.0 - alpha) * rv / o.deg(u)? as f64;
                if delta < tau {
                    break;
                }
                next.add(u, delta.max(theta));
            }
        }
        r = next;
    }
    Ok(p)
}

/// Alg. 4: BackwardsPush to r_max = min(1/2, (d(t)δ/n)^{1/2}), then RandPush
/// with θ = c²δp_f/(4L), L = ⌈log_{1−α}(cδ/2)⌉.
pub fn hybrid_single_target<O: Oracle>(o: &mut O, t: Vertex, cfg: &EstimatorConfig) -> Result<SparseEstimate> {
    o.model().require(&[QueryKind::NeighSorted])?;
    let dt = o.deg(t)?;
    let params = hybrid_params(dt, o.n(), cfg);
    let st = backwards_push(o, t, params.r_max, cfg)?;
    rand_push(o, &st, params.theta, params.rounds, cfg)
}

/// How BackwardsPushAvg enumerates the low-degree neighbours of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborScan {
    /// NEIGH over all of N(t); also reports X.
    Full,
    /// NEIGH-SORTED until the first neighbour of degree > 1/r_max.
    SortedPrefix,
    /// SortedPrefix when the model has NEIGH-SORTED, else Full.
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PushAvgOutput {
    pub state: PushState,
    /// High-degree neighbours of t that were skipped (only known after a full scan).
    pub skipped: Option<Vec<Vertex>>,
}

/// Appendix Alg. 5. Initialises p(t) = α, seeds r(y) = (1−α)/d(y) for the
/// neighbours y with d(y) ≤ 1/r_max, then pushes with threshold r_max.
pub fn backwards_push_avg<O: Oracle>(
    o: &mut O,
    t: Vertex,
    r_max: f64,
    cfg: &EstimatorConfig,
    scan: NeighborScan,
) -> Result<PushAvgOutput> {
    backwards_push_avg_traced(o, t, r_max, cfg, scan, |_| {})
}

pub fn backwards_push_avg_traced<O: Oracle, F: FnMut(&PushState)>(
    o: &mut O,
    t: Vertex,
    r_max: f64,
    cfg: &EstimatorConfig,
    scan: NeighborScan,
    after_push: F,
) -> Result<PushAvgOutput> {
    let alpha = cfg.alpha;
    let scan = match scan {
        NeighborScan::Auto if o.model().sorted => NeighborScan::SortedPrefix,
        NeighborScan::Auto => NeighborScan::Full,
        s => s,
    };
    let dt = o.deg(t)?;
    let mut st = PushState::default();
    if dt == 0 {
        st.p.set(t, 1.0);
        return Ok(PushAvgOutput { state: st, skipped: Some(Vec::new()) });
    }
    st.p.set(t, alpha);
    let low = 1.0 / r_max;
    let mut skipped = Vec::new();
    match scan {
        NeighborScan::SortedPrefix => {
            for i in 1..=dt {
                let y = o.neigh_sorted(t, i)?;
                let dy = o.deg(y)?;
                if dy as f64 > low {
                    break;
                }
                st.r.set(y, (1.0 - alpha) / dy as f64);
            }
        }
        _ => {
            let mut seeds = Vec::new();
            for i in 1..=dt {
                let y = o.neigh(t, i)?;
                let dy = o.deg(y)?;
                if dy as f64 > low {
                    skipped.push(y);
                } else {
                    seeds.push((dy, y));
                }
            }
            // seed in NEIGH-SORTED order so both scans push identically
            seeds.sort_unstable();
            for (dy, y) in seeds {
                st.r.set(y, (1.0 - alpha) / dy as f64);
            }
        }
    }
    push_loop(o, &mut st, r_max, alpha, after_push)?;
    Ok(PushAvgOutput { state: st, skipped: (scan == NeighborScan::Full).then_some(skipped) })
}

/// BackwardsPushAvg run as a single-target estimator with r_max = cδ/2.
pub fn bp_avg_single_target<O: Oracle>(o: &mut O, t: Vertex, cfg: &EstimatorConfig) -> Result<SparseEstimate> {
    let out = backwards_push_avg(o, t, cfg.c * cfg.delta / 2.0, cfg, NeighborScan::Auto)?;
    Ok(out.state.p)
}
