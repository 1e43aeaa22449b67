//! `ppr`: run estimators, generate hard instances, fit scaling exponents
//! and run the verification suites.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ppr_core::exact::{exact_pagerank, exact_single_source, exact_single_target, DEFAULT_EPS};
use ppr_core::experiment::{
    run_sweep, run_trials, write_csv, Algo, Axis, Exec, ExperimentRecord, Query, Scenario, Sweep,
};
use ppr_core::instances::{gen_family, FamilyId, SwapFamily};
use ppr_core::suites::{run_suite, slope_check, Suite, SuiteOptions};
use ppr_core::{AccessModel, Error, EstimatorConfig, Graph, Vertex};

#[derive(Parser)]
#[command(name = "ppr", version, about = "Personalized PageRank estimators under query-access models")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Stopping probability of the walk.
    #[arg(long, global = true, default_value_t = 0.2)]
    alpha: f64,
    /// Relative-error constant, in (0, 1/2).
    #[arg(long, global = true, default_value_t = 0.1)]
    c: f64,
    /// Failure probability.
    #[arg(long = "pf", global = true, default_value_t = 0.1)]
    pf: f64,
    /// Approximation threshold.
    #[arg(long, global = true, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Extra query types: comma list of jump, sorted, adj (or base / all).
    #[arg(long, global = true, default_value = "jump,sorted,adj")]
    model: AccessModel,
    /// Write CSV records here instead of stdout.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

impl Global {
    fn cfg(&self) -> EstimatorConfig {
        EstimatorConfig { alpha: self.alpha, c: self.c, p_f: self.pf, delta: self.delta, seed: self.seed }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a hard-instance family and optionally sampled swapped graphs.
    Gen(GenArgs),
    /// Exact PPR values from the linear-system oracle.
    Exact(ExactArgs),
    /// Run an estimator for a number of seeded trials and emit CSV records.
    Estimate(EstimateArgs),
    /// Sweep a family over a size grid and fit the query-count exponent.
    Bench(BenchArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: FamilyId,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Base graph file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for swapped graphs and swaps.tsv.
    #[arg(long)]
    swap_out: Option<PathBuf>,
    /// Number of sampled swaps written to --swap-out.
    #[arg(long, default_value_t = 1)]
    swaps: usize,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    graph: PathBuf,
    /// π(u, target) for every u.
    #[arg(long, conflicts_with_all = ["source", "pagerank"])]
    target: Option<Vertex>,
    /// π(source, v) for every v.
    #[arg(long, conflicts_with = "pagerank")]
    source: Option<Vertex>,
    /// π(v) = (1/n) Σ_u π(u, v).
    #[arg(long)]
    pagerank: Option<Vertex>,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    algo: Algo,
    #[arg(long)]
    source: Option<Vertex>,
    #[arg(long)]
    target: Option<Vertex>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Join exact oracle values (exact, abs_err, rel_err columns).
    #[arg(long)]
    with_exact: bool,
    /// Record wall_ns (otherwise 0, keeping output byte-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    family: FamilyId,
    #[arg(long)]
    algo: Algo,
    /// n, m or inv-delta.
    #[arg(long)]
    axis: Axis,
    /// Grid values, comma separated (at least 3).
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
    /// Fixed n when the axis is not n.
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Fixed m when the axis is not m or n.
    #[arg(long, default_value_t = 4096)]
    m: usize,
    /// m = ratio·n on the n axis.
    #[arg(long, default_value_t = 4.0)]
    m_ratio: f64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Expected log-log slope; the run fails when the fit misses it.
    #[arg(long)]
    target_exponent: Option<f64>,
    #[arg(long, default_value_t = 0.15)]
    slope_tol: f64,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// invariants, separation, accuracy or scaling-smoke.
    #[arg(long)]
    suite: Suite,
    #[arg(long)]
    family: Option<FamilyId>,
    #[arg(long)]
    algo: Option<Algo>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Seeded runs for the statistical checks.
    #[arg(long, default_value_t = 5000)]
    runs: usize,
    /// Sampled quadruples per separation check.
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

enum Failure {
    Core(Error),
    /// A check ran and did not pass.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Core(Error::Io(e))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Csv(_) | Error::Parse { .. } => 2,
        Error::ModelViolation(_) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = cli.global.cfg();
    cfg.validate()?;
    match &cli.cmd {
        Cmd::Gen(a) => gen(a, &cfg),
        Cmd::Exact(a) => exact(a, &cfg),
        Cmd::Estimate(a) => estimate(a, &cli.global, &cfg),
        Cmd::Bench(a) => bench(a, &cli.global, &cfg),
        Cmd::Verify(a) => verify(a, &cfg),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Graph::parse(&fs::read_to_string(path)?)
}

fn write_graph(path: &Path, g: &Graph) -> Result<(), Error> {
    fs::write(path, g.to_text())?;
    Ok(())
}

fn check_vertex(g: &Graph, v: Option<Vertex>) -> Result<(), Error> {
    match v {
        Some(v) if v >= g.n() => Err(Error::InvalidVertex { v, n: g.n() }),
        _ => Ok(()),
    }
}

fn describe(fam: &SwapFamily) -> String {
    let params: Vec<String> = fam.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let s = fam.default_source().map_or("-".to_string(), |s| s.to_string());
    format!(
        "family={} n={} m={} vertices={} edges={} params={} s={} t={} |Q|={} K={} filler={}x{}",
        fam.id,
        fam.n,
        fam.m,
        fam.graph.n(),
        fam.graph.m(),
        params.join(","),
        s,
        fam.default_target(),
        fam.quads.len(),
        fam.native_k(),
        fam.filler.0,
        fam.filler.1
    )
}

fn gen(a: &GenArgs, cfg: &EstimatorConfig) -> Result<(), Failure> {
    let fam = gen_family(a.family, a.n, a.m, cfg.delta, cfg)?;
    eprintln!("{}", describe(&fam));
    match &a.out {
        Some(p) => write_graph(p, &fam.graph)?,
        None => io::stdout().write_all(fam.graph.to_text().as_bytes())?,
    }
    if let Some(dir) = &a.swap_out {
        fs::create_dir_all(dir)?;
        let mut manifest = String::from("index\tq1\tq2\tq3\tq4\n");
        for (i, q) in fam.sample_quads(a.swaps, cfg.seed).into_iter().enumerate() {
            write_graph(&dir.join(format!("swap_{i}.graph")), &fam.swapped(&q)?)?;
            let [q1, q2, q3, q4] = q.0;
            manifest.push_str(&format!("{i}\t{q1}\t{q2}\t{q3}\t{q4}\n"));
        }
        fs::write(dir.join("swaps.tsv"), manifest)?;
    }
    Ok(())
}

fn exact(a: &ExactArgs, cfg: &EstimatorConfig) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let mut out = String::new();
    if let Some(v) = a.pagerank {
        check_vertex(&g, Some(v))?;
        out.push_str(&format!("{}\n", exact_pagerank(&g, cfg, v, DEFAULT_EPS)?));
    } else {
        let values = match (a.target, a.source) {
            (Some(t), _) => exact_single_target(&g, cfg, t, DEFAULT_EPS)?.values,
            (None, Some(s)) => exact_single_source(&g, cfg, s, DEFAULT_EPS)?.values,
            (None, None) => {
                return Err(Error::InvalidParam("exact needs --target, --source or --pagerank".into()).into())
            }
        };
        out.push_str("vertex\tvalue\n");
        for (v, x) in values.iter().enumerate() {
            out.push_str(&format!("{v}\t{x}\n"));
        }
    }
    io::stdout().write_all(out.as_bytes())?;
    Ok(())
}

fn emit_csv(path: Option<&PathBuf>, records: &[ExperimentRecord]) -> Result<(), Error> {
    match path {
        Some(p) => write_csv(fs::File::create(p)?, records),
        None => write_csv(io::stdout().lock(), records),
    }
}

fn estimate(a: &EstimateArgs, global: &Global, cfg: &EstimatorConfig) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    check_vertex(&g, a.source)?;
    check_vertex(&g, a.target)?;
    let sc = Scenario {
        family: a.graph.file_stem().map_or(String::new(), |s| s.to_string_lossy().into_owned()),
        graph: &g,
        algo: a.algo,
        model: global.model,
        query: Query { s: a.source, t: a.target },
        cfg: *cfg,
        trials: a.trials,
        with_exact: a.with_exact,
        timing: a.timing,
    };
    let exec = if a.sequential { Exec::Sequential } else { Exec::Parallel };
    let records = run_trials(&sc, exec)?;
    emit_csv(global.csv.as_ref(), &records)?;
    Ok(())
}

fn bench(a: &BenchArgs, global: &Global, cfg: &EstimatorConfig) -> Result<(), Failure> {
    if a.trials < 5 {
        return Err(Error::InvalidParam(format!("bench needs --trials >= 5, got {}", a.trials)).into());
    }
    let sw = Sweep {
        family: a.family,
        algo: a.algo,
        model: global.model,
        axis: a.axis,
        values: a.values.clone(),
        n: a.n,
        m: a.m,
        m_ratio: a.m_ratio,
        trials: a.trials,
        cfg: *cfg,
    };
    if sw.values.len() < 3 {
        return Err(Error::InvalidParam("bench needs at least 3 grid points".into()).into());
    }
    let exec = if a.sequential { Exec::Sequential } else { Exec::Parallel };
    let res = run_sweep(&sw, exec)?;
    if let Some(p) = &global.csv {
        write_csv(fs::File::create(p)?, &res.records)?;
    }
    let fit = &res.fit;
    let mut out = format!("{}\tmean_queries\n", a.axis);
    for (x, y) in fit.x_values.iter().zip(&fit.y_values) {
        out.push_str(&format!("{x}\t{y}\n"));
    }
    out.push_str(&format!("slope={:.4} intercept={:.4} r2={:.4}\n", fit.slope, fit.intercept, fit.r2));
    let verdict = a
        .target_exponent
        .map(|target| slope_check(&format!("{}/{}/{}", a.family, a.algo, a.axis), fit, target, a.slope_tol));
    if let Some(c) = &verdict {
        out.push_str(&format!("{c}\n"));
    }
    io::stdout().write_all(out.as_bytes())?;
    match verdict {
        Some(c) if !c.passed => Err(Failure::Check),
        _ => Ok(()),
    }
}

fn verify(a: &VerifyArgs, cfg: &EstimatorConfig) -> Result<(), Failure> {
    let opts =
        SuiteOptions { cfg: *cfg, family: a.family, n: a.n, m: a.m, algo: a.algo, runs: a.runs, samples: a.samples };
    let checks = run_suite(a.suite, &opts)?;
    let mut out = String::from("check\tresult\tdetail\n");
    for c in &checks {
        let status = if c.passed { "pass" } else { "fail" };
        out.push_str(&format!("{}\t{status}\t{}\n", c.name, c.detail));
    }
    io::stdout().write_all(out.as_bytes())?;
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
