//! Bridge to an external SAT solver binary.
//!
//! Two output conventions are supported:
//!
//! * [`SolverMode::File`]: the solver runs as `<exe> <in.cnf> <out>` and
//!   writes `SAT` or `UNSAT` on the first line of `<out>`, followed by the
//!   model literals terminated by `0` (MiniSat style).
//! * [`SolverMode::Stream`]: the solver runs as `<exe> <in.cnf>` and prints
//!   `s SATISFIABLE` / `s UNSATISFIABLE` plus `v ...` model lines on stdout
//!   (SAT competition style).
//!
//! The formula goes through a temporary directory that is removed afterwards.
//! A returned model is checked against the formula before it is trusted.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, ExitStatus, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use super::cnf::{CnfFormula, Lit, Model, SolveOutcome};

/// Environment variable naming the solver executable.
pub const SOLVER_ENV: &str = "OCTRAV_SOLVER";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMode {
    #[default]
    File,
    Stream,
}

impl std::str::FromStr for SolverMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "file" => Ok(SolverMode::File),
            "stream" => Ok(SolverMode::Stream),
            other => Err(format!("unknown solver mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub exe: PathBuf,
    pub mode: SolverMode,
    /// Extra arguments placed before the file names.
    pub args: Vec<String>,
}

impl SolverConfig {
    pub fn new(exe: impl Into<PathBuf>, mode: SolverMode) -> Self {
        Self {
            exe: exe.into(),
            mode,
            args: Vec::new(),
        }
    }

    /// An explicit path wins over `OCTRAV_SOLVER`; `None` if neither is set.
    pub fn resolve(explicit: Option<&Path>, mode: SolverMode) -> Option<Self> {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| {
                std::env::var_os(SOLVER_ENV)
                    .filter(|s| !s.is_empty())
                    .map(PathBuf::from)
            })
            .map(|exe| Self::new(exe, mode))
    }
}

/// Output of a finished child process.
struct Finished {
    status: ExitStatus,
    stdout: String,
    stderr: String,
}

fn capture<R: Read + Send + 'static>(pipe: Option<R>) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut s = String::new();
        if let Some(mut p) = pipe {
            let mut buf = Vec::new();
            let _ = p.read_to_end(&mut buf);
            s = String::from_utf8_lossy(&buf).into_owned();
        }
        s
    })
}

/// Waits for `child` until `deadline`; kills it on expiry and returns `None`.
fn wait_until(mut child: Child, deadline: Option<Instant>) -> std::io::Result<Option<Finished>> {
    let out = capture(child.stdout.take());
    let err = capture(child.stderr.take());
    let mut pause = Duration::from_millis(1);
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break Some(status);
        }
        if deadline.is_some_and(|d| Instant::now() >= d) {
            let _ = child.kill();
            let _ = child.wait();
            break None;
        }
        thread::sleep(pause);
        pause = (pause * 2).min(Duration::from_millis(20));
    };
    // After a kill, grandchildren may still hold the pipes open; leave the
    // reader threads detached instead of joining them.
    let Some(status) = status else {
        return Ok(None);
    };
    Ok(Some(Finished {
        status,
        stdout: out.join().unwrap_or_default(),
        stderr: err.join().unwrap_or_default(),
    }))
}

fn tail(s: &str) -> &str {
    let s = s.trim();
    let start = s.len().saturating_sub(400);
    let start = (start..=s.len())
        .find(|&i| s.is_char_boundary(i))
        .unwrap_or(0);
    &s[start..]
}

pub fn run_external_solver(
    f: &CnfFormula,
    cfg: &SolverConfig,
    timeout: Option<Duration>,
) -> SolveOutcome {
    let deadline = timeout.map(|t| Instant::now() + t);
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => return SolveOutcome::SolverError(format!("temp dir: {e}")),
    };
    let input = dir.path().join("in.cnf");
    let output = dir.path().join("out.txt");
    if let Err(e) = std::fs::write(&input, f.to_dimacs()) {
        return SolveOutcome::SolverError(format!("writing CNF: {e}"));
    }
    let mut cmd = Command::new(&cfg.exe);
    cmd.args(&cfg.args)
        .arg(&input)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    if cfg.mode == SolverMode::File {
        cmd.arg(&output);
    }
    let child = match cmd.spawn() {
        Ok(c) => c,
        Err(e) => {
            return SolveOutcome::SolverError(format!("cannot run {}: {e}", cfg.exe.display()))
        }
    };
    let done = match wait_until(child, deadline) {
        Ok(Some(done)) => done,
        Ok(None) => return SolveOutcome::Timeout,
        Err(e) => return SolveOutcome::SolverError(format!("waiting for solver: {e}")),
    };
    // MiniSat and most competition solvers exit with 10 (SAT) / 20 (UNSAT).
    if !matches!(done.status.code(), Some(0 | 10 | 20)) {
        return SolveOutcome::SolverError(format!(
            "solver exited with {}: {}",
            done.status,
            tail(&done.stderr)
        ));
    }
    let parsed = match cfg.mode {
        SolverMode::File => match std::fs::read_to_string(&output) {
            Ok(text) => parse_file_output(&text, f.num_vars),
            Err(e) => Err(format!(
                "reading result file: {e}; stderr: {}",
                tail(&done.stderr)
            )),
        },
        SolverMode::Stream => parse_stream_output(&done.stdout, f.num_vars),
    };
    match parsed {
        Ok(SolveOutcome::Sat(model)) if !f.is_satisfied_by(&model) => {
            SolveOutcome::SolverError("solver model does not satisfy the formula".into())
        }
        Ok(outcome) => outcome,
        Err(msg) => SolveOutcome::SolverError(msg),
    }
}

/// Builds a model from literals; unmentioned variables default to false.
fn model_from_literals(lits: &[Lit], num_vars: usize) -> Result<Model, String> {
    let mut m = vec![false; num_vars];
    for &l in lits {
        let v = l.unsigned_abs() as usize;
        if v == 0 || v > num_vars {
            return Err(format!("model literal {l} out of range"));
        }
        m[v - 1] = l > 0;
    }
    Ok(Model(m))
}

fn parse_literals<'a>(tokens: impl Iterator<Item = &'a str>) -> Result<Vec<Lit>, String> {
    let mut out = Vec::new();
    for t in tokens {
        let l: Lit = t.parse().map_err(|_| format!("bad model literal `{t}`"))?;
        if l == 0 {
            break;
        }
        out.push(l);
    }
    Ok(out)
}

pub fn parse_file_output(text: &str, num_vars: usize) -> Result<SolveOutcome, String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some("SAT") => {
            let lits = parse_literals(lines.flat_map(str::split_whitespace))?;
            Ok(SolveOutcome::Sat(model_from_literals(&lits, num_vars)?))
        }
        Some("UNSAT") => Ok(SolveOutcome::Unsat),
        Some(other) => Err(format!("unexpected result line `{other}`")),
        None => Err("empty result file".into()),
    }
}

pub fn parse_stream_output(text: &str, num_vars: usize) -> Result<SolveOutcome, String> {
    let mut status = None;
    let mut lits = Vec::new();
    for line in text.lines().map(str::trim) {
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("v ") {
            lits.extend(parse_literals(rest.split_whitespace())?);
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => Ok(SolveOutcome::Sat(model_from_literals(&lits, num_vars)?)),
        Some("UNSATISFIABLE") => Ok(SolveOutcome::Unsat),
        Some(other) => Err(format!("solver status `{other}`")),
        None => Err("no `s` status line in solver output".into()),
    }
}
