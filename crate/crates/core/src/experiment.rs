//! Experiment plumbing: estimator dispatch, per-trial records, the CSV
//! schema, trial runners and log-log scaling fits.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::access::{AccessModel, Oracle, QueryCounts, Session};
use crate::bidir::{bippr_avg_pair, jump_bidirectional_st, single_node, Correction, JumpVariant};
use crate::config::EstimatorConfig;
use crate::error::{Error, Result};
use crate::exact::{exact_pagerank, exact_single_target, DEFAULT_EPS};
use crate::graph::{Graph, Vertex};
use crate::instances::{gen_family, FamilyId};
use crate::mc::{bmc_single_node, bmc_single_target, mc_single_source};
use crate::par;
use crate::push::{
    bp_avg_single_target, bp_single_target, hybrid_params, hybrid_single_target, power_method_source,
    power_method_target, rand_push, PushState,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Mc,
    Bmc,
    BmcNode,
    Bp,
    Power,
    PowerSource,
    RandPush,
    Hybrid,
    BpAvg,
    BipprAvg,
    JumpSt,
    JumpStAvg,
    SingleNode,
}

/// What an estimator is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    SingleSource,
    SingleTarget,
    SinglePair,
    SingleNode,
}

impl Algo {
    pub const ALL: [Algo; 13] = [
        Algo::Mc,
        Algo::Bmc,
        Algo::BmcNode,
        Algo::Bp,
        Algo::Power,
        Algo::PowerSource,
        Algo::RandPush,
        Algo::Hybrid,
        Algo::BpAvg,
        Algo::BipprAvg,
        Algo::JumpSt,
        Algo::JumpStAvg,
        Algo::SingleNode,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algo::Mc => "mc",
            Algo::Bmc => "bmc",
            Algo::BmcNode => "bmc-node",
            Algo::Bp => "bp",
            Algo::Power => "power",
            Algo::PowerSource => "power-source",
            Algo::RandPush => "randpush",
            Algo::Hybrid => "hybrid",
            Algo::BpAvg => "bp-avg",
            Algo::BipprAvg => "bippr-avg",
            Algo::JumpSt => "jump-st",
            Algo::JumpStAvg => "jump-st-avg",
            Algo::SingleNode => "single-node",
        }
    }

    pub fn problem(&self) -> Problem {
        match self {
            Algo::Mc | Algo::PowerSource => Problem::SingleSource,
            Algo::BmcNode | Algo::SingleNode => Problem::SingleNode,
            Algo::BipprAvg => Problem::SinglePair,
            _ => Problem::SingleTarget,
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algo> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown algorithm {s:?}")))
    }
}

/// The vertices an estimate is reported for. Single-source estimators read
/// their vector at `t`, single-target ones at `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub s: Option<Vertex>,
    pub t: Option<Vertex>,
}

impl Query {
    fn need(v: Option<Vertex>, what: &str, algo: Algo) -> Result<Vertex> {
        v.ok_or_else(|| Error::InvalidParam(format!("{algo} needs a {what} vertex")))
    }

    /// The vertex the estimator runs from.
    pub fn anchor(&self, algo: Algo) -> Result<Vertex> {
        match algo.problem() {
            Problem::SingleSource => Query::need(self.s, "source", algo),
            _ => Query::need(self.t, "target", algo),
        }
    }

    /// The vertex the scalar estimate is read at, if any.
    pub fn readout(&self, algo: Algo) -> Option<Vertex> {
        match algo.problem() {
            Problem::SingleSource => self.t,
            Problem::SingleTarget | Problem::SinglePair => self.s,
            Problem::SingleNode => None,
        }
    }
}

/// Runs one estimator on `o`. Returns the scalar estimate at the query's
/// readout vertex (the node value for single-node estimators), or `None`
/// when there is nothing to read.
pub fn run_algo<O: Oracle>(o: &mut O, algo: Algo, q: &Query, cfg: &EstimatorConfig) -> Result<Option<f64>> {
    let anchor = q.anchor(algo)?;
    let at = q.readout(algo);
    let read = |v: crate::sparse::SparseVec| at.map(|u| v.get(u));
    let rounds = cfg.rounds_for(cfg.c * cfg.delta).max(1);
    Ok(match algo {
        Algo::Mc => read(mc_single_source(o, anchor, cfg)?),
        Algo::Bmc => read(bmc_single_target(o, anchor, cfg)?),
        Algo::BmcNode => Some(bmc_single_node(o, anchor, cfg)?),
        Algo::Bp => read(bp_single_target(o, anchor, cfg)?),
        Algo::Power => read(power_method_target(o, anchor, rounds, cfg)?.p),
        Algo::PowerSource => read(power_method_source(o, anchor, rounds, cfg)?.p),
        Algo::RandPush => {
            let dt = o.deg(anchor)?;
            let p = hybrid_params(dt, o.n(), cfg);
            read(rand_push(o, &PushState::unit(anchor), p.theta, p.rounds, cfg)?)
        }
        Algo::Hybrid => read(hybrid_single_target(o, anchor, cfg)?),
        Algo::BpAvg => read(bp_avg_single_target(o, anchor, cfg)?),
        Algo::BipprAvg => {
            let s = Query::need(q.s, "source", algo)?;
            let m = o.model();
            let mode = if m.sorted && m.adj { Correction::Lazy } else { Correction::Eager };
            Some(bippr_avg_pair(o, s, anchor, cfg, mode)?)
        }
        Algo::JumpSt => read(jump_bidirectional_st(o, anchor, cfg, JumpVariant::Worst)?),
        Algo::JumpStAvg => read(jump_bidirectional_st(o, anchor, cfg, JumpVariant::Avg)?),
        Algo::SingleNode => Some(single_node(o, anchor, cfg)?),
    })
}

/// The exact value matching [`run_algo`]'s scalar, if there is one.
pub fn exact_value(g: &Graph, algo: Algo, q: &Query, cfg: &EstimatorConfig) -> Result<Option<f64>> {
    let anchor = q.anchor(algo)?;
    Ok(match (algo.problem(), q.readout(algo)) {
        (Problem::SingleNode, _) => Some(exact_pagerank(g, cfg, anchor, DEFAULT_EPS)?),
        (Problem::SingleSource, Some(t)) => Some(exact_single_target(g, cfg, t, DEFAULT_EPS)?.get(anchor)),
        (_, Some(s)) => Some(exact_single_target(g, cfg, anchor, DEFAULT_EPS)?.get(s)),
        (_, None) => None,
    })
}

/// One CSV row. Field names are the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    pub algo: String,
    pub model_flags: String,
    pub trial: usize,
    pub seed: u64,
    pub queries_deg: u64,
    pub queries_neigh: u64,
    pub queries_sorted: u64,
    pub queries_jump: u64,
    pub queries_adj: u64,
    pub queries_total: u64,
    pub estimate: Option<f64>,
    pub exact: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub wall_ns: u64,
}

pub const CSV_HEADER: &str = "family,n,m,delta,algo,model_flags,trial,seed,queries_deg,\
queries_neigh,queries_sorted,queries_jump,queries_adj,queries_total,estimate,exact,abs_err,\
rel_err,wall_ns";

impl ExperimentRecord {
    pub fn counts(&self) -> QueryCounts {
        QueryCounts {
            deg: self.queries_deg,
            neigh: self.queries_neigh,
            sorted: self.queries_sorted,
            jump: self.queries_jump,
            adj: self.queries_adj,
        }
    }

    /// Whether the estimate violates |π̂ − π| < c max{π, δ}.
    pub fn violates(&self, c: f64) -> Option<bool> {
        Some(self.abs_err? >= c * self.exact?.max(self.delta))
    }
}

pub fn write_csv<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse { line: 1, msg: format!("unexpected header {}", header.join(",")) });
    }
    rd.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// How trials are scheduled. Output is identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// rayon when the `parallel` feature is enabled, else sequential.
    Parallel,
}

/// A graph plus everything needed to run repeated trials on it.
#[derive(Debug, Clone)]
pub struct Scenario<'g> {
    pub family: String,
    pub graph: &'g Graph,
    pub algo: Algo,
    pub model: AccessModel,
    pub query: Query,
    pub cfg: EstimatorConfig,
    pub trials: usize,
    pub with_exact: bool,
    pub timing: bool,
}

/// Trial i runs on a fresh session seeded with `cfg.seed + i`; records come
/// back ordered by trial.
pub fn run_trials(sc: &Scenario<'_>, exec: Exec) -> Result<Vec<ExperimentRecord>> {
    sc.cfg.validate()?;
    let exact = if sc.with_exact { exact_value(sc.graph, sc.algo, &sc.query, &sc.cfg)? } else { None };
    let trials: Vec<usize> = (0..sc.trials).collect();
    let one = |&i: &usize| run_one(sc, i, exact);
    let out = match exec {
        Exec::Sequential => par::map_seq(&trials, one),
        Exec::Parallel => par::map(&trials, one),
    };
    out.into_iter().collect()
}

fn run_one(sc: &Scenario<'_>, trial: usize, exact: Option<f64>) -> Result<ExperimentRecord> {
    let seed = sc.cfg.seed.wrapping_add(trial as u64);
    let mut session = Session::new(sc.graph, sc.model, seed);
    let start = Instant::now();
    let estimate = run_algo(&mut session, sc.algo, &sc.query, &sc.cfg)?;
    let wall_ns = if sc.timing { start.elapsed().as_nanos() as u64 } else { 0 };
    let c = session.counts();
    let abs_err = estimate.zip(exact).map(|(e, x)| (e - x).abs());
    Ok(ExperimentRecord {
        family: sc.family.clone(),
        n: sc.graph.n(),
        m: sc.graph.m(),
        delta: sc.cfg.delta,
        algo: sc.algo.to_string(),
        model_flags: sc.model.to_string(),
        trial,
        seed,
        queries_deg: c.deg,
        queries_neigh: c.neigh,
        queries_sorted: c.sorted,
        queries_jump: c.jump,
        queries_adj: c.adj,
        queries_total: c.total(),
        estimate,
        exact,
        abs_err,
        rel_err: abs_err.zip(exact).map(|(a, x)| a / x.max(sc.cfg.delta)),
        wall_ns,
    })
}

/// Least squares on (ln x, ln y).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn fit_scaling(x_values: &[f64], y_values: &[f64]) -> Result<ScalingFit> {
    if x_values.len() != y_values.len() {
        return Err(Error::InvalidParam("x and y differ in length".into()));
    }
    if x_values.len() < 3 {
        return Err(Error::InvalidParam(format!("need at least 3 grid points, got {}", x_values.len())));
    }
    if x_values.iter().chain(y_values).any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(Error::InvalidParam("log-log fit needs positive values".into()));
    }
    let lx: Vec<f64> = x_values.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y_values.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = ly.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParam("grid points must differ".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Ok(ScalingFit { x_values: x_values.to_vec(), y_values: y_values.to_vec(), slope, intercept, r2 })
}

/// Which generator argument a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    N,
    M,
    InvDelta,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::N => "n",
            Axis::M => "m",
            Axis::InvDelta => "inv-delta",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axis> {
        match s {
            "n" => Ok(Axis::N),
            "m" => Ok(Axis::M),
            "inv-delta" => Ok(Axis::InvDelta),
            _ => Err(Error::InvalidParam(format!("unknown axis {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub family: FamilyId,
    pub algo: Algo,
    pub model: AccessModel,
    pub axis: Axis,
    pub values: Vec<f64>,
    /// Fixed n (ignored on the n axis).
    pub n: usize,
    /// Fixed m; on the n axis m = m_ratio·n instead.
    pub m: usize,
    pub m_ratio: f64,
    pub trials: usize,
    pub cfg: EstimatorConfig,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub records: Vec<ExperimentRecord>,
    pub fit: ScalingFit,
}

/// Generates the family at each grid value, runs the estimator from the
/// family's designated vertices, and fits mean total queries against the
/// grid value.
pub fn run_sweep(sw: &Sweep, exec: Exec) -> Result<SweepResult> {
    let mut records = Vec::new();
    let mut means = Vec::with_capacity(sw.values.len());
    for &v in &sw.values {
        let (n, m, delta) = match sw.axis {
            Axis::N => {
                let n = v.round() as usize;
                (n, (sw.m_ratio * v).round() as usize, sw.cfg.delta)
            }
            Axis::M => (sw.n, v.round() as usize, sw.cfg.delta),
            Axis::InvDelta => (sw.n, sw.m, 1.0 / v),
        };
        let cfg = EstimatorConfig { delta, ..sw.cfg };
        let fam = gen_family(sw.family, n, m, delta, &cfg)?;
        let t = fam.default_target();
        let s = fam.default_source().unwrap_or(t);
        let sc = Scenario {
            family: sw.family.to_string(),
            graph: &fam.graph,
            algo: sw.algo,
            model: sw.model,
            query: Query { s: Some(s), t: Some(t) },
            cfg,
            trials: sw.trials,
            with_exact: false,
            timing: false,
        };
        let recs = run_trials(&sc, exec)?;
        let total: u64 = recs.iter().map(|r| r.queries_total).sum();
        means.push(total as f64 / recs.len().max(1) as f64);
        records.extend(recs);
    }
    let fit = fit_scaling(&sw.values, &means)?;
    Ok(SweepResult { records, fit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_exact_powers() {
        let f = fit_scaling(&[100.0, 400.0, 1600.0], &[10.0, 20.0, 40.0]).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        assert!(fit_scaling(&[1.0, 2.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn csv_round_trip_and_header() {
        let g = Graph::parse("2 1\n0 1").unwrap();
        let sc = Scenario {
            family: "k2".into(),
            graph: &g,
            algo: Algo::Bp,
            model: AccessModel::BASE,
            query: Query { s: Some(0), t: Some(1) },
            cfg: EstimatorConfig::default(),
            trials: 3,
            with_exact: true,
            timing: false,
        };
        let recs = run_trials(&sc, Exec::Parallel).unwrap();
        assert_eq!(recs, run_trials(&sc, Exec::Sequential).unwrap());
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(read_csv(&buf[..]).unwrap(), recs);
        assert_eq!(recs[0].queries_jump, 0);
        let r = &recs[0];
        assert_eq!(r.queries_total, r.counts().total());
    }

    #[test]
    fn empty_fields_round_trip() {
        let g = Graph::parse("3 2\n0 1\n1 2").unwrap();
        let sc = Scenario {
            family: "path, quoted".into(),
            graph: &g,
            algo: Algo::Mc,
            model: AccessModel::BASE,
            query: Query { s: Some(0), t: None },
            cfg: EstimatorConfig::with_delta(0.5),
            trials: 2,
            with_exact: true,
            timing: false,
        };
        let recs = run_trials(&sc, Exec::Sequential).unwrap();
        assert_eq!(recs[0].estimate, None);
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        assert!(String::from_utf8(buf.clone()).unwrap().contains("\"path, quoted\""));
        assert_eq!(read_csv(&buf[..]).unwrap(), recs);
    }

    #[test]
    fn model_violation_surfaces() {
        let g = Graph::parse("2 1\n0 1").unwrap();
        let mut s = Session::new(&g, AccessModel::new(true, false, false), 0);
        let q = Query { s: None, t: Some(1) };
        let e = run_algo(&mut s, Algo::SingleNode, &q, &EstimatorConfig::default()).unwrap_err();
        assert!(matches!(e, Error::ModelViolation(_)));
    }
}
