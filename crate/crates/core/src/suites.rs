//! Verification suites shared by the acceptance tests and `ppr verify`.
//! Every check compares against the exact oracle and reports the worst
//! observed value next to the tolerance it was held to.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::access::{AccessModel, Session};
use crate::bidir::{
    bippr_avg_pair, jump_bidirectional_st, single_node_with, Correction, JumpVariant, SingleNodeParams,
};
use crate::config::EstimatorConfig;
use crate::corpus::{self, NamedGraph};
use crate::error::{Error, Result};
use crate::exact::{exact_pagerank, exact_single_source, exact_single_target, truncated_dp_oracle, DEFAULT_EPS};
use crate::experiment::{fit_scaling, run_sweep, Algo, Axis, Exec, Problem, Sweep};
use crate::graph::{Graph, Vertex};
use crate::instances::{gen_family, overlap_k_brute, overlap_k_closed, verify_separation, FamilyId};
use crate::mc::{bmc_single_node, bmc_single_target, mc_single_source};
use crate::par;
use crate::push::{
    backwards_push_avg_traced, backwards_push_traced, bp_avg_single_target, bp_single_target, hybrid_params,
    hybrid_single_target, power_method_source, power_method_target, rand_push, NeighborScan, PushState,
};
use crate::sparse::SparseVec;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Check {
        Check { name: name.into(), passed, detail }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

/// pi[w][u] = π(u, w).
fn all_pairs(g: &Graph, cfg: &EstimatorConfig) -> Result<Vec<Vec<f64>>> {
    (0..g.n()).map(|w| Ok(exact_single_target(g, cfg, w, DEFAULT_EPS)?.values)).collect()
}

/// Exact solve vs truncated walk-length DP, every target of every graph.
pub fn oracle_equivalence(graphs: &[NamedGraph], cfg: &EstimatorConfig, tol: f64) -> Result<Check> {
    // truncation error is at most (1−α)^(L+1)
    let len = cfg.rounds_for(tol * 1e-3);
    let per_graph = par::map(graphs, |ng| -> Result<f64> {
        let g = &ng.graph;
        let mut worst = 0.0f64;
        for t in 0..g.n() {
            let a = exact_single_target(g, cfg, t, DEFAULT_EPS)?;
            let b = truncated_dp_oracle(g, cfg, t, len)?;
            for u in 0..g.n() {
                worst = worst.max((a.get(u) - b.get(u)).abs());
            }
        }
        Ok(worst)
    });
    let worst = collect_max(per_graph)?;
    Ok(Check::new(
        "oracle-equivalence",
        worst <= tol,
        format!("max |exact - dp| = {worst:.2e} (tol {tol:.0e}) over {} graphs", graphs.len()),
    ))
}

/// max |d(u)π(u,v) − d(v)π(v,u)| over all pairs.
#[allow(clippy::needless_range_loop)]
pub fn reversibility(graphs: &[NamedGraph], cfg: &EstimatorConfig, tol: f64) -> Result<Check> {
    let per_graph = par::map(graphs, |ng| -> Result<f64> {
        let g = &ng.graph;
        let pi = all_pairs(g, cfg)?;
        let mut worst = 0.0f64;
        for u in 0..g.n() {
            for v in 0..g.n() {
                let lhs = g.degree(u) as f64 * pi[v][u];
                let rhs = g.degree(v) as f64 * pi[u][v];
                worst = worst.max((lhs - rhs).abs());
            }
        }
        Ok(worst)
    });
    let worst = collect_max(per_graph)?;
    Ok(Check::new(
        "reversibility",
        worst <= tol,
        format!("max gap = {worst:.2e} (tol {tol:.0e}) over {} graphs", graphs.len()),
    ))
}

fn collect_max(parts: Vec<Result<f64>>) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in parts {
        worst = worst.max(p?);
    }
    Ok(worst)
}

/// |π(u,t) − p(u) − Σ_v w(v)π(u,v)| with w the (possibly corrected) residual.
#[allow(clippy::needless_range_loop)]
fn invariant_gap(pi: &[Vec<f64>], t: Vertex, st: &PushState, extra: &[(Vertex, f64)]) -> f64 {
    let n = pi.len();
    let mut worst = 0.0f64;
    for u in 0..n {
        let mut rhs = st.p.get(u);
        for (v, r) in st.r.iter() {
            rhs += r * pi[v][u];
        }
        for &(v, r) in extra {
            rhs += r * pi[v][u];
        }
        worst = worst.max((pi[t][u] - rhs).abs());
    }
    worst
}

#[derive(Default)]
struct PushTally {
    invariant: f64,
    /// Largest violation of 0 ≤ π(u,t) − p(u) ≤ bound at termination.
    bound: f64,
    pushes: usize,
    runs: usize,
    with_x: usize,
}

impl PushTally {
    fn merge(&mut self, o: PushTally) {
        self.invariant = self.invariant.max(o.invariant);
        self.bound = self.bound.max(o.bound);
        self.pushes += o.pushes;
        self.runs += o.runs;
        self.with_x += o.with_x;
    }
}

fn final_gap(pi: &[Vec<f64>], t: Vertex, p: &SparseVec, bound: f64) -> f64 {
    (0..pi.len())
        .map(|u| {
            let gap = pi[t][u] - p.get(u);
            (-gap).max(gap - bound).max(0.0)
        })
        .fold(0.0, f64::max)
}

/// BackwardsPush: the invariant after every push, and the r_max additive
/// bound at termination, for every target and every `r_max`.
pub fn push_invariant(graphs: &[NamedGraph], cfg: &EstimatorConfig, r_maxes: &[f64], tol: f64) -> Result<Check> {
    let parts = par::map(graphs, |ng| -> Result<PushTally> {
        let g = &ng.graph;
        let pi = all_pairs(g, cfg)?;
        let mut tally = PushTally::default();
        for t in 0..g.n() {
            for &r_max in r_maxes {
                let mut o = Session::new(g, AccessModel::BASE, 0);
                let mut inv = 0.0f64;
                let mut pushes = 0;
                let st = backwards_push_traced(&mut o, t, r_max, cfg, |st| {
                    inv = inv.max(invariant_gap(&pi, t, st, &[]));
                    pushes += 1;
                })?;
                tally.merge(PushTally {
                    invariant: inv,
                    bound: final_gap(&pi, t, &st.p, r_max),
                    pushes,
                    runs: 1,
                    with_x: 0,
                });
            }
        }
        Ok(tally)
    });
    let mut tally = PushTally::default();
    for p in parts {
        tally.merge(p?);
    }
    Ok(Check::new(
        "push-invariant",
        tally.invariant <= tol && tally.bound <= tol,
        format!(
            "max invariant gap = {:.2e}, max bound excess = {:.2e} (tol {tol:.0e}) over {} runs, {} pushes",
            tally.invariant, tally.bound, tally.runs, tally.pushes
        ),
    ))
}

/// BackwardsPushAvg: the invariant with the (1−α)/d(x) terms of the skipped
/// high-degree neighbours X, and the 2 r_max bound at termination.
pub fn push_avg_invariant(graphs: &[NamedGraph], cfg: &EstimatorConfig, r_maxes: &[f64], tol: f64) -> Result<Check> {
    let parts = par::map(graphs, |ng| -> Result<PushTally> {
        let g = &ng.graph;
        let pi = all_pairs(g, cfg)?;
        let mut tally = PushTally::default();
        for t in 0..g.n() {
            for &r_max in r_maxes {
                let x: Vec<(Vertex, f64)> = g
                    .neighbors(t)
                    .iter()
                    .filter(|&&y| g.degree(y) as f64 > 1.0 / r_max)
                    .map(|&y| (y, (1.0 - cfg.alpha) / g.degree(y) as f64))
                    .collect();
                let mut o = Session::new(g, AccessModel::BASE, 0);
                let mut inv = 0.0f64;
                let mut pushes = 0;
                let out = backwards_push_avg_traced(&mut o, t, r_max, cfg, NeighborScan::Full, |st| {
                    inv = inv.max(invariant_gap(&pi, t, st, &x));
                    pushes += 1;
                })?;
                inv = inv.max(invariant_gap(&pi, t, &out.state, &x));
                tally.merge(PushTally {
                    invariant: inv,
                    bound: final_gap(&pi, t, &out.state.p, 2.0 * r_max),
                    pushes,
                    runs: 1,
                    with_x: usize::from(!x.is_empty()),
                });
            }
        }
        Ok(tally)
    });
    let mut tally = PushTally::default();
    for p in parts {
        tally.merge(p?);
    }
    Ok(Check::new(
        "push-avg-invariant",
        tally.invariant <= tol && tally.bound <= tol && tally.with_x > 0,
        format!(
            "max invariant gap = {:.2e}, max bound excess = {:.2e} (tol {tol:.0e}) over {} runs ({} with X nonempty), {} pushes",
            tally.invariant, tally.bound, tally.runs, tally.with_x, tally.pushes
        ),
    ))
}

/// max_u r_L(u) ≤ (1−α)^L after L synchronous rounds from every target.
/// Compared with a relative slack of 1e−12 for float rounding.
pub fn power_residual_law(graphs: &[NamedGraph], cfg: &EstimatorConfig, max_rounds: usize) -> Result<Check> {
    let parts = par::map(graphs, |ng| -> Result<(f64, usize)> {
        let g = &ng.graph;
        let mut worst = 0.0f64;
        let mut cases = 0;
        for t in 0..g.n() {
            for l in 0..=max_rounds {
                let mut o = Session::new(g, AccessModel::BASE, 0);
                let st = power_method_target(&mut o, t, l, cfg)?;
                let bound = (1.0 - cfg.alpha).powi(l as i32);
                worst = worst.max(st.r.max_value() / bound);
                cases += 1;
            }
        }
        Ok((worst, cases))
    });
    let (mut worst, mut cases) = (0.0f64, 0);
    for p in parts {
        let (w, c) = p?;
        worst = worst.max(w);
        cases += c;
    }
    Ok(Check::new(
        "power-residual-law",
        worst <= 1.0 + 1e-12,
        format!("max r_L / (1-a)^L = {worst:.15} over {cases} (graph, t, L) cases, L <= {max_rounds}"),
    ))
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
    (mean, var)
}

/// |mean − expected| ≤ 4·SE, with a float-noise floor for zero variance.
fn within_4se(mean: f64, var: f64, runs: usize, expected: f64) -> (bool, f64) {
    let se = (var / runs as f64).sqrt();
    let diff = (mean - expected).abs();
    let z = if se > 0.0 {
        diff / se
    } else if diff <= 1e-12 {
        0.0
    } else {
        f64::INFINITY
    };
    (z <= 4.0, z)
}

/// RandPush from e_t: the mean of p̂(u) is p_L(u) of the deterministic
/// rounds and Var[p̂(u)] ≤ slack·L·θ·p(u).
pub fn rand_push_stats(
    ng: &NamedGraph,
    t: Vertex,
    theta: f64,
    rounds: usize,
    runs: usize,
    slack: f64,
    cfg: &EstimatorConfig,
) -> Result<Check> {
    let g = &ng.graph;
    let mut o = Session::new(g, AccessModel::BASE, 0);
    let exact = power_method_target(&mut o, t, rounds, cfg)?.p.to_dense(g.n());
    let idx: Vec<u64> = (0..runs as u64).collect();
    let samples = par::map(&idx, |&i| -> Result<Vec<f64>> {
        let mut o = Session::new(g, AccessModel::new(false, true, false), cfg.seed.wrapping_add(i));
        Ok(rand_push(&mut o, &PushState::unit(t), theta, rounds, cfg)?.to_dense(g.n()))
    });
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    let (mut ok, mut worst_z, mut worst_ratio) = (true, 0.0f64, 0.0f64);
    for u in 0..g.n() {
        let col: Vec<f64> = samples.iter().map(|s| s[u]).collect();
        let (mean, var) = mean_var(&col);
        let (pass, z) = within_4se(mean, var, runs, exact[u]);
        worst_z = worst_z.max(z);
        let bound = rounds as f64 * theta * exact[u];
        let ratio = if bound > 0.0 {
            var / bound
        } else if var == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        worst_ratio = worst_ratio.max(ratio);
        ok &= pass && ratio <= slack;
    }
    Ok(Check::new(
        format!("rand-push-stats/{}", ng.name),
        ok,
        format!(
            "max |mean - p|/SE = {worst_z:.2} (<= 4), max Var/(L theta p) = {worst_ratio:.3} (<= {slack}), {runs} runs, theta={theta}, L={rounds}"
        ),
    ))
}

/// SingleNode with pinned parameters: unbiased for π(t), and variance
/// within `slack` times (|X_L|/(n w_L) + 1/(w_H τ))(1−α)π(t).
pub fn single_node_stats(
    ng: &NamedGraph,
    t: Vertex,
    params: SingleNodeParams,
    runs: usize,
    slack: f64,
    cfg: &EstimatorConfig,
) -> Result<Check> {
    let g = &ng.graph;
    let n = g.n() as f64;
    let pi_t = exact_pagerank(g, cfg, t, DEFAULT_EPS)?;
    let idx: Vec<u64> = (0..runs as u64).collect();
    let est = par::map(&idx, |&i| -> Result<f64> {
        let mut o = Session::new(g, AccessModel::ALL, cfg.seed.wrapping_add(i));
        single_node_with(&mut o, t, cfg, Some(params))
    });
    let est = est.into_iter().collect::<Result<Vec<_>>>()?;
    let (mean, var) = mean_var(&est);
    let (unbiased, z) = within_4se(mean, var, runs, pi_t);
    let xl = g.neighbors(t).iter().filter(|&&x| g.degree(x) <= params.tau).count() as f64;
    let low = if xl > 0.0 { xl / (n * params.w_low as f64) } else { 0.0 };
    let bound = (low + 1.0 / (params.w_high as f64 * params.tau as f64)) * (1.0 - cfg.alpha) * pi_t;
    let ratio = var / bound;
    Ok(Check::new(
        format!("single-node-stats/{}", ng.name),
        unbiased && ratio <= slack,
        format!(
            "pi(t) = {pi_t:.6}, mean = {mean:.6}, |mean - pi|/SE = {z:.2} (<= 4), Var/bound = {ratio:.3} (<= {slack}), |X_L| = {xl}, {runs} runs"
        ),
    ))
}

/// The algorithms the accuracy suite checks by default.
pub const ACCURACY_ALGOS: [Algo; 7] =
    [Algo::Mc, Algo::Bmc, Algo::Hybrid, Algo::BpAvg, Algo::BipprAvg, Algo::JumpSt, Algo::SingleNode];

/// Estimated vs exact values for one run: the whole vector for single-source
/// and single-target estimators, one value otherwise.
fn run_pairs(g: &Graph, algo: Algo, cfg: &EstimatorConfig, seed: u64) -> Result<Vec<(f64, f64)>> {
    let mut pick = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = g.n();
    let a = pick.gen_range(0..n);
    let b = pick.gen_range(0..n);
    let mut o = Session::new(g, AccessModel::ALL, seed);
    let dense = |v: SparseVec| v.to_dense(n);
    let est: Vec<f64> = match algo.problem() {
        Problem::SingleNode => {
            let e = match algo {
                Algo::BmcNode => bmc_single_node(&mut o, a, cfg)?,
                _ => crate::bidir::single_node(&mut o, a, cfg)?,
            };
            return Ok(vec![(e, exact_pagerank(g, cfg, a, DEFAULT_EPS)?)]);
        }
        Problem::SinglePair => {
            let e = bippr_avg_pair(&mut o, b, a, cfg, Correction::Lazy)?;
            return Ok(vec![(e, exact_single_target(g, cfg, a, DEFAULT_EPS)?.get(b))]);
        }
        Problem::SingleSource => {
            let rounds = cfg.rounds_for(cfg.c * cfg.delta).max(1);
            let est = match algo {
                Algo::Mc => mc_single_source(&mut o, a, cfg)?,
                _ => power_method_source(&mut o, a, rounds, cfg)?.p,
            };
            let exact = exact_single_source(g, cfg, a, DEFAULT_EPS)?.values;
            return Ok(dense(est).into_iter().zip(exact).collect());
        }
        Problem::SingleTarget => dense(match algo {
            Algo::Bmc => bmc_single_target(&mut o, a, cfg)?,
            Algo::Bp => bp_single_target(&mut o, a, cfg)?,
            Algo::Power => {
                let rounds = cfg.rounds_for(cfg.c * cfg.delta).max(1);
                power_method_target(&mut o, a, rounds, cfg)?.p
            }
            Algo::RandPush => {
                let p = hybrid_params(g.degree(a), n, cfg);
                rand_push(&mut o, &PushState::unit(a), p.theta, p.rounds, cfg)?
            }
            Algo::Hybrid => hybrid_single_target(&mut o, a, cfg)?,
            Algo::BpAvg => bp_avg_single_target(&mut o, a, cfg)?,
            Algo::JumpSt => jump_bidirectional_st(&mut o, a, cfg, JumpVariant::Worst)?,
            Algo::JumpStAvg => jump_bidirectional_st(&mut o, a, cfg, JumpVariant::Avg)?,
            _ => unreachable!("single-target algorithms are listed above"),
        }),
    };
    let exact = exact_single_target(g, cfg, a, DEFAULT_EPS)?.values;
    let mut pairs: Vec<(f64, f64)> = est.into_iter().zip(exact).collect();
    if matches!(algo, Algo::JumpSt | Algo::JumpStAvg) {
        // the JUMP estimators only promise accuracy where π(u,t) > δ
        pairs.retain(|&(_, x)| x > cfg.delta);
    }
    Ok(pairs)
}

/// Fraction of (run, value) pairs with |π̂ − π| ≥ c·max{π, δ}, over
/// `runs_per_case` seeded runs on every (graph, δ). Query vertices are drawn
/// per run. Passes when the rate is at most p_f + `margin`.
pub fn accuracy(
    algo: Algo,
    graphs: &[NamedGraph],
    deltas: &[f64],
    runs_per_case: usize,
    margin: f64,
    cfg: &EstimatorConfig,
) -> Result<Check> {
    let mut jobs = Vec::new();
    for (gi, ng) in graphs.iter().enumerate() {
        for (di, &delta) in deltas.iter().enumerate() {
            for r in 0..runs_per_case {
                let k = ((gi * deltas.len() + di) * runs_per_case + r) as u64;
                jobs.push((ng, delta, cfg.seed.wrapping_add(k)));
            }
        }
    }
    let out = par::map(&jobs, |&(ng, delta, seed)| -> Result<(usize, usize)> {
        let cfg = EstimatorConfig { delta, ..*cfg };
        let pairs = run_pairs(&ng.graph, algo, &cfg, seed)?;
        let bad = pairs.iter().filter(|&&(e, x)| (e - x).abs() >= cfg.c * x.max(delta)).count();
        Ok((bad, pairs.len()))
    });
    let (mut bad, mut total) = (0usize, 0usize);
    for r in out {
        let (b, t) = r?;
        bad += b;
        total += t;
    }
    let rate = if total == 0 { 0.0 } else { bad as f64 / total as f64 };
    let limit = cfg.p_f + margin;
    Ok(Check::new(
        format!("accuracy/{algo}"),
        rate <= limit && total > 0,
        format!("violation_rate = {rate:.4} (<= {limit:.2}), {bad}/{total} values over {} runs", jobs.len()),
    ))
}

/// verify_separation on one family instance.
pub fn separation(
    id: FamilyId,
    n: usize,
    m: usize,
    delta: f64,
    samples: usize,
    cfg: &EstimatorConfig,
) -> Result<Check> {
    let fam = gen_family(id, n, m, delta, cfg)?;
    let rep = verify_separation(&fam, cfg, samples)?;
    Ok(Check::new(
        format!("separation/{id}/n{n}/m{m}"),
        rep.passed,
        format!(
            "{:?}: pi_base = {:.3e}, min pi_swapped = {:.3e}, threshold = {:.3e}, c_eff = {:.4}, {} samples",
            rep.kind, rep.pi_base, rep.pi_swapped_min, rep.threshold, rep.c_eff, rep.samples
        ),
    ))
}

/// Closed-form K against the brute-force count for every family and access
/// model on a small grid, plus K = xy (sp-worst) and K = 1 (st-wc-a).
pub fn overlap_consistency(cfg: &EstimatorConfig) -> Result<Check> {
    let models = [
        AccessModel::BASE,
        AccessModel::new(true, false, false),
        AccessModel::new(false, true, false),
        AccessModel::new(false, false, true),
        AccessModel::ALL,
    ];
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for id in FamilyId::ALL {
        for &(n, m, delta) in &[(8, 16, 0.3), (12, 40, 0.1), (10, 100, 0.02)] {
            let fam = gen_family(id, n, m, delta, cfg)?;
            for model in models.iter().copied().chain([fam.model]) {
                let Some(brute) = overlap_k_brute(&fam, model) else {
                    continue;
                };
                cases += 1;
                if overlap_k_closed(&fam, model) != brute {
                    mismatches.push(format!("{id}/{model}/n{n}"));
                }
            }
        }
    }
    let sp = gen_family(FamilyId::SpWorst, 10, 20, 0.2, cfg)?;
    let xy = (sp.param("x").unwrap_or(0) * sp.param("y").unwrap_or(0)) as u64;
    let st = gen_family(FamilyId::StWcA, 10, 30, 0.2, cfg)?;
    let (k_sp, k_st) = (sp.native_k(), st.native_k());
    Ok(Check::new(
        "overlap-k",
        mismatches.is_empty() && k_sp == xy && k_st == 1,
        format!(
            "{} closed/brute mismatches in {cases} cases {:?}; sp-worst K = {k_sp} (xy = {xy}); st-wc-a K = {k_st}",
            mismatches.len(),
            mismatches
        ),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Invariants,
    Separation,
    Accuracy,
    ScalingSmoke,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "invariants" => Ok(Suite::Invariants),
            "separation" => Ok(Suite::Separation),
            "accuracy" => Ok(Suite::Accuracy),
            "scaling-smoke" => Ok(Suite::ScalingSmoke),
            _ => Err(Error::InvalidParam(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub cfg: EstimatorConfig,
    /// Separation: one family instead of all of them.
    pub family: Option<FamilyId>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    /// Accuracy: one algorithm instead of [`ACCURACY_ALGOS`].
    pub algo: Option<Algo>,
    /// Seeded runs for the statistical checks (RandPush, SingleNode).
    pub runs: usize,
    /// Sampled quadruples per separation check.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            cfg: EstimatorConfig::default(),
            family: None,
            n: None,
            m: None,
            algo: None,
            runs: 5000,
            samples: 20,
        }
    }
}

/// Small instances for the statistical checks: K3, K5, and seeded random
/// graphs on 16 and 32 vertices.
pub fn stat_instances() -> [NamedGraph; 4] {
    let named = |name: &str, graph| NamedGraph { name: name.into(), graph };
    [
        named("k3", corpus::clique(3)),
        named("k5", corpus::clique(5)),
        named("gnp16", corpus::gnp(16, 0.3, 16)),
        named("mixed32", mixed32()),
    ]
}

/// A 32-vertex graph where t = 0 has both low- and high-degree neighbours:
/// a 12-leaf star around t joined to a dense random block.
fn mixed32() -> Graph {
    let block = corpus::gnp(19, 0.5, 32);
    let mut g = corpus::union(&corpus::star(12), &block);
    let mut edges = g.edge_order();
    for k in 0..6 {
        edges.push((0, 13 + k));
    }
    g = Graph::from_edges(32, &edges).expect("simple");
    g
}

/// Pinned SingleNode parameters used by the variance checks.
pub fn pinned_single_node(g: &Graph, t: Vertex) -> SingleNodeParams {
    let n = g.n();
    let tau = if (g.degree(t) as f64) <= (n as f64).sqrt() { n } else { (n as f64).sqrt().ceil() as usize };
    SingleNodeParams { tau, w_low: 8, w_high: 40 }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let cfg = &opts.cfg;
    cfg.validate()?;
    match suite {
        Suite::Invariants => {
            let all = corpus::standard();
            let small: Vec<NamedGraph> = all.iter().filter(|g| g.graph.n() <= 20).cloned().collect();
            let [k3, k5, gnp16, mixed] = stat_instances();
            Ok(vec![
                oracle_equivalence(&all, cfg, 1e-10)?,
                reversibility(&all, cfg, 1e-9)?,
                push_invariant(&small, cfg, &[0.3, 0.1, 0.02], 1e-9)?,
                push_avg_invariant(&small, cfg, &[0.3, 0.1, 0.05], 1e-9)?,
                power_residual_law(&small[..5], cfg, 40)?,
                rand_push_stats(&k3, 0, 0.05, 20, opts.runs, 1.5, cfg)?,
                rand_push_stats(&gnp16, 0, 0.05, 20, opts.runs, 1.5, cfg)?,
                single_node_stats(&k5, 0, pinned_single_node(&k5.graph, 0), opts.runs, 1.5, cfg)?,
                single_node_stats(&mixed, 0, pinned_single_node(&mixed.graph, 0), opts.runs, 1.5, cfg)?,
            ])
        }
        Suite::Separation => match opts.family {
            Some(id) => {
                Ok(vec![separation(id, opts.n.unwrap_or(60), opts.m.unwrap_or(120), cfg.delta, opts.samples, cfg)?])
            }
            None => {
                let mut out = Vec::new();
                for id in FamilyId::ALL {
                    for &(n, m, delta) in &[(30, 60, 0.05), (16, 64, 0.2), (24, 24, 1e-3)] {
                        out.push(separation(id, n, m, delta, opts.samples.min(5), cfg)?);
                    }
                }
                out.push(overlap_consistency(cfg)?);
                Ok(out)
            }
        },
        Suite::Accuracy => {
            let graphs = corpus::random_family(10, 16, 64, 4.0, cfg.seed);
            let algos: Vec<Algo> = match opts.algo {
                Some(a) => vec![a],
                None => ACCURACY_ALGOS.to_vec(),
            };
            algos.into_iter().map(|a| accuracy(a, &graphs, &[0.2, 0.05], 10, 0.05, cfg)).collect()
        }
        Suite::ScalingSmoke => {
            let sweeps = [
                (FamilyId::SnWorst, Algo::Mc, Axis::InvDelta, vec![2.0, 4.0, 8.0, 16.0], 1.0),
                (FamilyId::SnWorst, Algo::BmcNode, Axis::M, vec![1024.0, 2048.0, 4096.0, 8192.0], 0.5),
            ];
            let mut out = Vec::new();
            for (family, algo, axis, values, target) in sweeps {
                let sw = Sweep {
                    family,
                    algo,
                    model: AccessModel::ALL,
                    axis,
                    values,
                    n: 256,
                    m: 1024,
                    m_ratio: 4.0,
                    trials: 5,
                    cfg: *cfg,
                };
                let fit = run_sweep(&sw, Exec::Parallel)?.fit;
                out.push(slope_check(&format!("scaling-smoke/{algo}/{axis}"), &fit, target, 0.15));
            }
            let synthetic = fit_scaling(&[100.0, 400.0, 1600.0], &[10.0, 20.0, 40.0])?;
            out.push(slope_check("scaling-smoke/synthetic", &synthetic, 0.5, 1e-9));
            Ok(out)
        }
    }
}

pub fn slope_check(name: &str, fit: &crate::experiment::ScalingFit, target: f64, tol: f64) -> Check {
    Check::new(
        name,
        (fit.slope - target).abs() <= tol,
        format!(
            "slope = {:.3} (target {target} +- {tol}), r2 = {:.3}, {} points",
            fit.slope,
            fit.r2,
            fit.x_values.len()
        ),
    )
}
