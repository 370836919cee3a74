//! Benchmark runner: one timed, seeded run per (graph, algorithm, seed),
//! CSV output, and per-(dataset, algorithm) summaries.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annealing::{anneal, AnnealParams};
use crate::error::SatError;
use crate::formats::{read_graph_file, GraphFormat};
use crate::genetic::{evolve, GeneticParams};
use crate::graph::Graph;
use crate::greedy::{greedy, refine_strict_minimal};
use crate::partition::Tripartition;
use crate::rng::Rng;
use crate::sat::{minimum_deletion_search, Dpll, External, SolverConfig, SolverMode};

/// Default per-run time limit: one hour.
pub const DEFAULT_TIMEOUT_SECS: f64 = 3600.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sat,
    Greedy,
    Anneal,
    Genetic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Sat,
        Algorithm::Greedy,
        Algorithm::Anneal,
        Algorithm::Genetic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sat => "sat",
            Algorithm::Greedy => "greedy",
            Algorithm::Anneal => "anneal",
            Algorithm::Genetic => "genetic",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sat" | "exact" => Ok(Algorithm::Sat),
            "greedy" => Ok(Algorithm::Greedy),
            "anneal" | "annealing" | "sa" => Ok(Algorithm::Anneal),
            "genetic" | "ga" => Ok(Algorithm::Genetic),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Everything besides the graph and seed that shapes a run.
#[derive(Clone, Debug, Default)]
pub struct AlgoParams {
    pub anneal: AnnealParams,
    pub genetic: GeneticParams,
    pub strict_minimal: bool,
    /// External solver for `sat`; the built-in DPLL solver when `None`.
    pub solver: Option<SolverConfig>,
}

impl AlgoParams {
    /// Canonical, CSV-friendly description of the parameters `algo` uses.
    pub fn canonical(&self, algo: Algorithm) -> String {
        let mut s = match algo {
            Algorithm::Sat => match &self.solver {
                Some(cfg) => {
                    format!("solver={};mode={:?}", cfg.exe.display(), cfg.mode).to_lowercase()
                }
                None => "solver=dpll".to_string(),
            },
            Algorithm::Greedy => "-".to_string(),
            Algorithm::Anneal => format!(
                "cooling={};i_max={};t_max={}",
                self.anneal.cooling, self.anneal.i_max, self.anneal.t_max
            ),
            Algorithm::Genetic => format!(
                "g_max={};i_max={};p_mut={}",
                self.genetic.generations, self.genetic.population, self.genetic.p_mut
            ),
        };
        if self.strict_minimal {
            s.push_str(";strict_minimal");
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RunStatus {
    Ok,
    Timeout,
    Error,
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunStatus::Ok => "OK",
            RunStatus::Timeout => "TIMEOUT",
            RunStatus::Error => "ERROR",
        })
    }
}

fn na<S: serde::Serializer>(v: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_str("NA"),
    }
}

fn from_na<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
    let s = String::deserialize(d)?;
    if s == "NA" {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(serde::de::Error::custom)
    }
}

/// One row of the results CSV. Column order is the field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub dataset: String,
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub params: String,
    #[serde(serialize_with = "na", deserialize_with = "from_na")]
    pub d_size: Option<usize>,
    #[serde(serialize_with = "na", deserialize_with = "from_na")]
    pub best_seen_d: Option<usize>,
    pub time_ms: f64,
    pub status: RunStatus,
    #[serde(skip)]
    pub message: Option<String>,
}

pub const CSV_HEADER: [&str; 11] = [
    "dataset",
    "graph_id",
    "n",
    "m",
    "algorithm",
    "seed",
    "params",
    "d_size",
    "best_seen_d",
    "time_ms",
    "status",
];

/// A record plus the solution it describes, when there is one.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub record: RunRecord,
    pub solution: Option<Tripartition>,
}

enum Outcome {
    Done {
        solution: Tripartition,
        best_seen: Option<usize>,
    },
    Timeout,
    Error(String),
}

fn deadline_passed(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

fn stop_at(deadline: Option<Instant>) -> ControlFlow<()> {
    if deadline_passed(deadline) {
        ControlFlow::Break(())
    } else {
        ControlFlow::Continue(())
    }
}

fn execute(
    g: &Graph,
    algo: Algorithm,
    params: &AlgoParams,
    seed: u64,
    deadline: Option<Instant>,
    timeout: Option<Duration>,
) -> Outcome {
    let mut rng = Rng::seeded(seed);
    let (solution, best_seen) = match algo {
        Algorithm::Sat => {
            let result = match &params.solver {
                Some(cfg) => minimum_deletion_search(g, &mut External(cfg.clone()), timeout),
                None => minimum_deletion_search(g, &mut Dpll::default(), timeout),
            };
            match result {
                Ok(r) => (r.solution, None),
                Err(SatError::Timeout { .. }) => return Outcome::Timeout,
                Err(e) => return Outcome::Error(e.to_string()),
            }
        }
        Algorithm::Greedy => (greedy(g, &mut rng), None),
        Algorithm::Anneal => {
            if let Err(e) = params.anneal.validate() {
                return Outcome::Error(e.to_string());
            }
            let run = anneal(g, &params.anneal, &mut rng, |_| stop_at(deadline));
            if run.interrupted {
                return Outcome::Timeout;
            }
            (run.solution, Some(run.best_seen_d))
        }
        Algorithm::Genetic => {
            if let Err(e) = params.genetic.validate() {
                return Outcome::Error(e.to_string());
            }
            let run = evolve(g, &params.genetic, &mut rng, |_| stop_at(deadline));
            if run.interrupted {
                return Outcome::Timeout;
            }
            (run.solution, Some(run.best_seen_d))
        }
    };
    if deadline_passed(deadline) {
        return Outcome::Timeout;
    }
    let solution = if params.strict_minimal {
        let refined = refine_strict_minimal(g, solution, &mut rng);
        if deadline_passed(deadline) {
            return Outcome::Timeout;
        }
        refined
    } else {
        solution
    };
    Outcome::Done {
        solution,
        best_seen,
    }
}

/// Runs one algorithm on one graph. Only the algorithm call (and the
/// optional strict-minimality pass) is timed. Heuristics stop
/// cooperatively at iteration or generation boundaries once `timeout`
/// has elapsed. Failures and panics end up in the record's status.
pub fn run_algorithm(
    g: &Graph,
    algo: Algorithm,
    params: &AlgoParams,
    seed: u64,
    timeout: Option<Duration>,
) -> RunOutput {
    let start = Instant::now();
    let deadline = timeout.map(|t| start + t);
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        execute(g, algo, params, seed, deadline, timeout)
    }))
    .unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Outcome::Error(msg)
    });
    let time_ms = start.elapsed().as_nanos() as f64 / 1e6;
    let mut record = RunRecord {
        dataset: String::new(),
        graph_id: String::new(),
        n: g.n(),
        m: g.m(),
        algorithm: algo,
        seed,
        params: params.canonical(algo),
        d_size: None,
        best_seen_d: None,
        time_ms,
        status: RunStatus::Ok,
        message: None,
    };
    let solution = match outcome {
        Outcome::Done {
            solution,
            best_seen,
        } => {
            record.d_size = Some(solution.d_size());
            record.best_seen_d = best_seen;
            Some(solution)
        }
        Outcome::Timeout => {
            record.status = RunStatus::Timeout;
            None
        }
        Outcome::Error(msg) => {
            record.status = RunStatus::Error;
            record.message = Some(msg);
            None
        }
    };
    RunOutput { record, solution }
}

/// Benchmark settings, loadable from TOML.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    /// Graph files, or directories whose files are all loaded.
    pub inputs: Vec<PathBuf>,
    /// Input format; inferred per file from its extension when unset.
    pub format: Option<GraphFormat>,
    /// Dataset name for every graph; defaults to each file's parent directory.
    pub dataset: Option<String>,
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub timeout_secs: f64,
    pub anneal: AnnealParams,
    pub genetic: GeneticParams,
    pub strict_minimal: bool,
    pub solver_path: Option<PathBuf>,
    pub solver_mode: SolverMode,
    /// Results CSV; stdout when unset.
    pub output: Option<PathBuf>,
    /// Summary CSV with full-precision statistics.
    pub summary_output: Option<PathBuf>,
    /// Parallel runs; 0 uses every core.
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            format: None,
            dataset: None,
            algorithms: vec![Algorithm::Greedy, Algorithm::Anneal, Algorithm::Genetic],
            seeds: vec![1],
            timeout_secs: DEFAULT_TIMEOUT_SECS,
            anneal: AnnealParams::default(),
            genetic: GeneticParams::default(),
            strict_minimal: false,
            solver_path: None,
            solver_mode: SolverMode::File,
            output: None,
            summary_output: None,
            jobs: 1,
        }
    }
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.algorithms.is_empty() {
            return Err("at least one algorithm is required".into());
        }
        if self.timeout_secs.is_nan() || self.timeout_secs <= 0.0 {
            return Err(format!(
                "timeout must be positive, got {}",
                self.timeout_secs
            ));
        }
        if self.seeds.is_empty() {
            return Err("at least one seed is required".into());
        }
        self.anneal.validate().map_err(|e| e.to_string())?;
        self.genetic.validate().map_err(|e| e.to_string())?;
        Ok(())
    }

    pub fn params(&self) -> AlgoParams {
        AlgoParams {
            anneal: self.anneal,
            genetic: self.genetic,
            strict_minimal: self.strict_minimal,
            solver: SolverConfig::resolve(self.solver_path.as_deref(), self.solver_mode),
        }
    }
}

/// A parsed input graph with its identifiers.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub dataset: String,
    pub graph_id: String,
    pub graph: Graph,
}

fn expand_inputs(inputs: &[PathBuf]) -> Vec<PathBuf> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            match std::fs::read_dir(p) {
                Ok(rd) => {
                    let mut inner: Vec<PathBuf> = rd
                        .filter_map(Result::ok)
                        .map(|e| e.path())
                        .filter(|p| p.is_file())
                        .collect();
                    inner.sort();
                    files.extend(inner);
                }
                Err(e) => log::warn!("skipping {}: {e}", p.display()),
            }
        } else {
            files.push(p.clone());
        }
    }
    files
}

fn dataset_of(path: &Path) -> String {
    path.parent()
        .and_then(Path::file_name)
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "default".into())
}

/// Loads every input, logging and skipping files that fail to parse.
pub fn load_graphs(cfg: &BenchConfig) -> Vec<LoadedGraph> {
    let mut out = Vec::new();
    for path in expand_inputs(&cfg.inputs) {
        match read_graph_file(&path, cfg.format) {
            Ok(parsed) => out.push(LoadedGraph {
                dataset: cfg.dataset.clone().unwrap_or_else(|| dataset_of(&path)),
                graph_id: path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                graph: parsed.graph,
            }),
            Err(e) => log::warn!("skipping {}: {e}", path.display()),
        }
    }
    out
}

/// Runs every (graph, algorithm, seed) cell. Rows come back in input
/// order whatever the completion order.
pub fn run_cells(graphs: &[LoadedGraph], cfg: &BenchConfig) -> Vec<RunRecord> {
    let params = cfg.params();
    let timeout = Duration::from_secs_f64(cfg.timeout_secs);
    let cells: Vec<(usize, Algorithm, u64)> = (0..graphs.len())
        .flat_map(|gi| {
            cfg.algorithms
                .iter()
                .flat_map(move |&a| cfg.seeds.iter().map(move |&s| (gi, a, s)))
        })
        .collect();
    let run = |&(gi, algo, seed): &(usize, Algorithm, u64)| {
        let lg = &graphs[gi];
        let mut rec = run_algorithm(&lg.graph, algo, &params, seed, Some(timeout)).record;
        rec.dataset = lg.dataset.clone();
        rec.graph_id = lg.graph_id.clone();
        if let Some(msg) = &rec.message {
            log::error!("{} / {} / seed {seed}: {msg}", lg.graph_id, algo);
        }
        rec
    };
    if cfg.jobs == 1 {
        return cells.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    pool.install(|| cells.par_iter().map(run).collect())
}

/// Writes records with the fixed header; `NA` marks missing sizes.
pub fn write_csv<W: Write>(records: &[RunRecord], w: W) -> Result<(), csv::Error> {
    let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wtr.write_record(CSV_HEADER)?;
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(r: R) -> Result<Vec<RunRecord>, csv::Error> {
    csv::Reader::from_reader(r).deserialize().collect()
}

/// Aggregate over the rows of one (dataset, algorithm) pair. Means and
/// sample standard deviations use OK rows only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub ok: usize,
    pub timeouts: usize,
    pub errors: usize,
    pub mean_d: Option<f64>,
    pub sd_d: Option<f64>,
    pub mean_time_ms: Option<f64>,
    pub sd_time_ms: Option<f64>,
}

/// Mean and sample standard deviation (0 for a single value).
pub fn mean_sd(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return Some((mean, 0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Some((mean, var.sqrt()))
}

pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, Algorithm), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.dataset.clone(), r.algorithm))
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .map(|((dataset, algorithm), rows)| {
            let ok: Vec<&RunRecord> = rows
                .iter()
                .copied()
                .filter(|r| r.status == RunStatus::Ok)
                .collect();
            let d: Vec<f64> = ok
                .iter()
                .filter_map(|r| r.d_size)
                .map(|d| d as f64)
                .collect();
            let t: Vec<f64> = ok.iter().map(|r| r.time_ms).collect();
            let count = |s| rows.iter().filter(|r| r.status == s).count();
            let (md, sd) = mean_sd(&d).unzip();
            let (mt, st) = mean_sd(&t).unzip();
            SummaryRow {
                dataset,
                algorithm,
                runs: rows.len(),
                ok: ok.len(),
                timeouts: count(RunStatus::Timeout),
                errors: count(RunStatus::Error),
                mean_d: md,
                sd_d: sd,
                mean_time_ms: mt,
                sd_time_ms: st,
            }
        })
        .collect()
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], w: W) -> Result<(), csv::Error> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in rows {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Human-readable table: mean ± sd of `|D|` and time, with a `*` and a
/// count when some runs did not finish in time.
pub fn format_summary(rows: &[SummaryRow]) -> String {
    let fmt_ms = |m: Option<f64>, s: Option<f64>, prec: usize| match (m, s) {
        (Some(m), Some(s)) => format!("{m:.prec$} ± {s:.prec$}"),
        _ => "NA".to_string(),
    };
    let mut out = format!(
        "{:<16} {:<8} {:>5} {:>20} {:>24} {:>10}\n",
        "dataset", "algo", "runs", "avg |D|", "avg time [ms]", "timeouts"
    );
    for r in rows {
        let mark = if r.timeouts > 0 { "*" } else { "" };
        out.push_str(&format!(
            "{:<16} {:<8} {:>5} {:>20} {:>24} {:>10}\n",
            r.dataset,
            r.algorithm.name(),
            r.runs,
            format!("{}{mark}", fmt_ms(r.mean_d, r.sd_d, 2)),
            fmt_ms(r.mean_time_ms, r.sd_time_ms, 3),
            r.timeouts,
        ));
    }
    if rows.iter().any(|r| r.timeouts > 0) {
        out.push_str("* some runs hit the time limit and are excluded from the averages\n");
    }
    if rows.iter().any(|r| r.errors > 0) {
        out.push_str("some runs failed; see the log\n");
    }
    out
}

#[derive(Debug)]
pub struct BenchReport {
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub graphs_loaded: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no input graph could be loaded")]
    NoGraphs,
    #[error("writing results: {0}")]
    Output(String),
}

/// Loads the inputs, runs all cells, writes the CSV (and summary CSV if
/// configured) and returns the records and summary.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    cfg.validate().map_err(BenchError::Config)?;
    let graphs = load_graphs(cfg);
    if graphs.is_empty() {
        return Err(BenchError::NoGraphs);
    }
    let records = run_cells(&graphs, cfg);
    let out_err = |e: &dyn fmt::Display| BenchError::Output(e.to_string());
    match &cfg.output {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| out_err(&e))?;
            write_csv(&records, f).map_err(|e| out_err(&e))?;
        }
        None => write_csv(&records, std::io::stdout().lock()).map_err(|e| out_err(&e))?,
    }
    let summary = summarize(&records);
    if let Some(path) = &cfg.summary_output {
        let f = std::fs::File::create(path).map_err(|e| out_err(&e))?;
        write_summary_csv(&summary, f).map_err(|e| out_err(&e))?;
    }
    Ok(BenchReport {
        graphs_loaded: graphs.len(),
        records,
        summary,
    })
}
