//! Command-line front end used by the `octrav` binary.
//!
//! Exit codes: 0 on success, 1 on runtime failure (unreadable input,
//! failed verification, timeout), 2 on usage errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::annealing::CoolingKind;
use crate::bipartite::{check_strictly_minimal, verify_tripartition};
use crate::formats::{self, GraphFormat, Parsed};
use crate::generate::gen_random_graph;
use crate::graph::Graph;
use crate::harness::{
    format_summary, run_algorithm, run_benchmark, AlgoParams, Algorithm, BenchConfig, RunStatus,
    DEFAULT_TIMEOUT_SECS,
};
use crate::partition::parse_labeled_lines;
use crate::sat::{emit_dimacs, encode_bipartite_deletion, SolverMode};

#[derive(Debug, Parser)]
#[command(
    name = "octrav",
    version,
    about = "Vertex deletion to bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one graph and print A, B and D by vertex label.
    Solve(SolveArgs),
    /// Run algorithms over many graphs and seeds; write CSV results.
    Bench(BenchArgs),
    /// Generate a uniform random graph with n vertices and m edges.
    Gen(GenArgs),
    /// Write the CNF for "at most k deletions suffice" in DIMACS.
    Encode(EncodeArgs),
    /// Check a solution file against a graph.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct TuningArgs {
    /// Annealing iterations.
    #[arg(long)]
    iters: Option<usize>,
    /// Annealing start temperature.
    #[arg(long)]
    tmax: Option<f64>,
    /// Cooling schedule: hill-climbing, linear, quadratic or exponential.
    #[arg(long)]
    cooling: Option<CoolingKind>,
    /// Genetic population size.
    #[arg(long)]
    pop: Option<usize>,
    /// Genetic generations.
    #[arg(long)]
    gens: Option<usize>,
    /// Genetic mutation probability.
    #[arg(long)]
    pmut: Option<f64>,
    /// Shrink D afterwards until it is strictly minimal.
    #[arg(long)]
    strict_minimal: bool,
    /// External SAT solver; defaults to $OCTRAV_SOLVER, then built-in DPLL.
    #[arg(long)]
    solver_path: Option<PathBuf>,
    /// How the external solver reports: file or stream.
    #[arg(long)]
    solver_mode: Option<SolverMode>,
}

impl TuningArgs {
    fn apply(&self, cfg: &mut BenchConfig) {
        if let Some(v) = self.iters {
            cfg.anneal.i_max = v;
        }
        if let Some(v) = self.tmax {
            cfg.anneal.t_max = v;
        }
        if let Some(v) = self.cooling {
            cfg.anneal.cooling = v;
        }
        if let Some(v) = self.pop {
            cfg.genetic.population = v;
        }
        if let Some(v) = self.gens {
            cfg.genetic.generations = v;
        }
        if let Some(v) = self.pmut {
            cfg.genetic.p_mut = v;
        }
        if self.strict_minimal {
            cfg.strict_minimal = true;
        }
        if let Some(p) = &self.solver_path {
            cfg.solver_path = Some(p.clone());
        }
        if let Some(m) = self.solver_mode {
            cfg.solver_mode = m;
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Graph file, or `-` for stdin.
    input: PathBuf,
    #[arg(long, default_value = "greedy")]
    algo: Algorithm,
    /// Input format; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<GraphFormat>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TIMEOUT_SECS)]
    timeout_secs: f64,
    /// Write the solution here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    tuning: TuningArgs,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Graph files or directories.
    inputs: Vec<PathBuf>,
    /// TOML file with benchmark settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',')]
    algo: Vec<Algorithm>,
    #[arg(long)]
    format: Option<GraphFormat>,
    /// Comma-separated seeds; each graph runs once per seed.
    #[arg(long, value_delimiter = ',')]
    seed: Vec<u64>,
    #[arg(long)]
    timeout_secs: Option<f64>,
    /// Dataset name for every input; defaults to the parent directory.
    #[arg(long)]
    dataset: Option<String>,
    /// Results CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary CSV with full-precision statistics.
    #[arg(long)]
    summary_out: Option<PathBuf>,
    /// Parallel runs; 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    tuning: TuningArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "edgelist")]
    format: GraphFormat,
    /// Number of graphs; seeds run from --seed upward and --out must be a directory.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EncodeArgs {
    /// Graph file, or `-` for stdin.
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    format: Option<GraphFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Graph file.
    graph: PathBuf,
    /// Solution file with `A:`, `B:` and `D:` lines, or `-` for stdin.
    solution: PathBuf,
    #[arg(long)]
    format: Option<GraphFormat>,
    /// Also require every deleted vertex to touch both A and B.
    #[arg(long)]
    certificate: bool,
    /// Also require D to be strictly minimal.
    #[arg(long)]
    strict_minimal: bool,
}

/// A failure reported to the user with exit code 1.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn is_stdin(p: &Path) -> bool {
    p.as_os_str() == "-"
}

fn read_text(p: &Path) -> Result<String, Failure> {
    if is_stdin(p) {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))
    }
}

fn load_graph(p: &Path, format: Option<GraphFormat>) -> Result<Graph, Failure> {
    let format = format.unwrap_or_else(|| GraphFormat::from_path(p));
    let text = read_text(p)?;
    let Parsed { graph, stats } =
        formats::parse(&text, format).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
    if stats.duplicate_edges > 0 {
        log::info!(
            "{}: ignored {} duplicate edges",
            p.display(),
            stats.duplicate_edges
        );
    }
    Ok(graph)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn solve(a: SolveArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input, a.format)?;
    let mut cfg = BenchConfig::default();
    a.tuning.apply(&mut cfg);
    cfg.anneal.validate()?;
    cfg.genetic.validate()?;
    if a.timeout_secs.is_nan() || a.timeout_secs <= 0.0 {
        return Err(Failure(format!(
            "timeout must be positive, got {}",
            a.timeout_secs
        )));
    }
    let params: AlgoParams = cfg.params();
    let out = run_algorithm(
        &g,
        a.algo,
        &params,
        a.seed,
        Some(Duration::from_secs_f64(a.timeout_secs)),
    );
    let rec = &out.record;
    match (rec.status, out.solution) {
        (RunStatus::Ok, Some(t)) => {
            eprintln!(
                "{}: |D| = {} of {} vertices, {:.3} ms",
                a.algo,
                t.d_size(),
                g.n(),
                rec.time_ms
            );
            write_out(a.out.as_deref(), &t.to_labeled_lines(&g))
        }
        (RunStatus::Timeout, _) => Err(Failure(format!(
            "{} stopped at the {} s time limit",
            a.algo, a.timeout_secs
        ))),
        _ => Err(Failure(
            rec.message.clone().unwrap_or_else(|| "run failed".into()),
        )),
    }
}

fn bench(a: BenchArgs) -> Result<(), Failure> {
    let mut cfg = match &a.config {
        Some(p) => BenchConfig::from_toml(&read_text(p)?)
            .map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        None => BenchConfig::default(),
    };
    if !a.inputs.is_empty() {
        cfg.inputs = a.inputs.clone();
    }
    if !a.algo.is_empty() {
        cfg.algorithms = a.algo.clone();
    }
    if !a.seed.is_empty() {
        cfg.seeds = a.seed.clone();
    }
    if a.format.is_some() {
        cfg.format = a.format;
    }
    if let Some(t) = a.timeout_secs {
        cfg.timeout_secs = t;
    }
    if a.dataset.is_some() {
        cfg.dataset = a.dataset.clone();
    }
    if a.out.is_some() {
        cfg.output = a.out.clone();
    }
    if a.summary_out.is_some() {
        cfg.summary_output = a.summary_out.clone();
    }
    if let Some(j) = a.jobs {
        cfg.jobs = j;
    }
    a.tuning.apply(&mut cfg);
    if cfg.inputs.is_empty() {
        return Err(Failure("no input graphs given".into()));
    }
    let report = run_benchmark(&cfg)?;
    let table = format_summary(&report.summary);
    if cfg.output.is_some() {
        print!("{table}");
    } else {
        eprint!("{table}");
    }
    Ok(())
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    if a.count == 0 {
        return Err(Failure("--count must be at least 1".into()));
    }
    if a.count == 1 {
        let g = gen_random_graph(a.n, a.m, a.seed)?;
        return write_out(a.out.as_deref(), &formats::write(&g, a.format));
    }
    let dir = a
        .out
        .ok_or_else(|| Failure("--count above 1 needs --out <directory>".into()))?;
    std::fs::create_dir_all(&dir)?;
    let ext = match a.format {
        GraphFormat::EdgeList => "txt",
        GraphFormat::Dimacs => "col",
        GraphFormat::Gml => "gml",
    };
    for i in 0..a.count as u64 {
        let seed = a.seed + i;
        let g = gen_random_graph(a.n, a.m, seed)?;
        let name = format!("g_n{}_m{}_s{seed}.{ext}", a.n, a.m);
        std::fs::write(dir.join(name), formats::write(&g, a.format))?;
    }
    Ok(())
}

fn encode(a: EncodeArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input, a.format)?;
    let (f, _) = encode_bipartite_deletion(&g, a.k)?;
    write_out(a.out.as_deref(), &emit_dimacs(&f))
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    if is_stdin(&a.graph) && is_stdin(&a.solution) {
        return Err(Failure(
            "graph and solution cannot both come from stdin".into(),
        ));
    }
    let g = load_graph(&a.graph, a.format)?;
    let t = parse_labeled_lines(&g, &read_text(&a.solution)?)?;
    let report = verify_tripartition(&g, &t);
    let mut failed = false;
    let label = |u| g.label(u).into_owned();
    let line = |name: &str, r: &Result<(), crate::bipartite::Violation>, required: bool| {
        match r {
            Ok(()) => println!("{name}: ok"),
            Err(v) => {
                let note = if required { "" } else { " (not required)" };
                println!("{name}: FAILED: {v}{note}");
            }
        }
        r.is_err() && required
    };
    failed |= line("complete", &report.complete, true);
    failed |= line("valid", &report.valid, true);
    failed |= line("certificate", &report.certificate, a.certificate);
    if a.strict_minimal {
        match check_strictly_minimal(&g, &t) {
            Ok(()) => println!("strictly minimal: ok"),
            Err(u) => {
                println!(
                    "strictly minimal: FAILED: {} can be restored without breaking bipartiteness",
                    label(u)
                );
                failed = true;
            }
        }
    }
    println!("|D| = {}", t.d_size());
    if failed {
        Err(Failure("verification failed".into()))
    } else {
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the subcommand. Returns
/// the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Gen(a) => gen(a),
        Command::Encode(a) => encode(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(cli_main(["octrav", "solve", "--algo", "anneal"]), 2);
        assert_eq!(cli_main(["octrav", "frobnicate"]), 2);
        assert_eq!(cli_main(["octrav", "solve", "x", "--algo", "nope"]), 2);
    }

    #[test]
    fn missing_file_exits_1() {
        assert_eq!(cli_main(["octrav", "solve", "/nonexistent/graph.txt"]), 1);
    }

    #[test]
    fn tuning_overrides() {
        let cli = Cli::try_parse_from([
            "octrav",
            "bench",
            "d",
            "--algo",
            "greedy,anneal",
            "--seed",
            "1,2,3",
            "--iters",
            "5",
            "--cooling",
            "linear",
        ])
        .unwrap();
        let Command::Bench(a) = cli.command else {
            panic!()
        };
        assert_eq!(a.algo, vec![Algorithm::Greedy, Algorithm::Anneal]);
        assert_eq!(a.seed, vec![1, 2, 3]);
        let mut cfg = BenchConfig::default();
        a.tuning.apply(&mut cfg);
        assert_eq!(cfg.anneal.i_max, 5);
        assert_eq!(cfg.anneal.cooling, CoolingKind::Linear);
    }
}
