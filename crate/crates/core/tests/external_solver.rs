#![cfg(unix)]

use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use octrav::sat::{
    dpll_solve, encode_bipartite_deletion, minimum_deletion_search, run_external_solver,
    CnfFormula, External, SolveOutcome, SolverConfig, SolverMode,
};
use octrav::{Graph, SatError};

fn script(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, format!("#!/bin/sh\n{body}\n")).unwrap();
    std::fs::set_permissions(&p, std::fs::Permissions::from_mode(0o755)).unwrap();
    p
}

fn literals(f: &CnfFormula) -> String {
    match dpll_solve(f, u64::MAX) {
        SolveOutcome::Sat(m) => (1..=f.num_vars)
            .map(|v| {
                if m.value(v) {
                    v.to_string()
                } else {
                    format!("-{v}")
                }
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => panic!("{other:?}"),
    }
}

#[test]
fn file_mode_sat_and_unsat() {
    let dir = tempfile::tempdir().unwrap();
    let (f, _) = encode_bipartite_deletion(&Graph::complete(3), 1).unwrap();
    let lits = literals(&f);
    let sat = script(
        dir.path(),
        "sat",
        &format!("printf 'SAT\\n{lits} 0\\n' > \"$2\"\nexit 10"),
    );
    let got = run_external_solver(&f, &SolverConfig::new(&sat, SolverMode::File), None);
    match got {
        SolveOutcome::Sat(m) => assert!(f.is_satisfied_by(&m)),
        other => panic!("{other:?}"),
    }
    let unsat = script(dir.path(), "unsat", "echo UNSAT > \"$2\"\nexit 20");
    assert_eq!(
        run_external_solver(&f, &SolverConfig::new(&unsat, SolverMode::File), None),
        SolveOutcome::Unsat
    );
}

#[test]
fn solver_sees_the_dimacs_file() {
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("seen.cnf");
    let spy = script(
        dir.path(),
        "spy",
        &format!("cp \"$1\" '{}'\necho UNSAT > \"$2\"", copy.display()),
    );
    let (f, _) = encode_bipartite_deletion(&Graph::complete(5), 3).unwrap();
    run_external_solver(&f, &SolverConfig::new(&spy, SolverMode::File), None);
    let seen = std::fs::read_to_string(copy).unwrap();
    assert!(seen.starts_with("p cnf 27 50\n"));
    assert_eq!(CnfFormula::parse_dimacs(&seen).unwrap(), f);
}

#[test]
fn stream_mode() {
    let dir = tempfile::tempdir().unwrap();
    let (f, _) = encode_bipartite_deletion(&Graph::cycle(5), 1).unwrap();
    let lits = literals(&f);
    let s = script(
        dir.path(),
        "stream",
        &format!("echo 'c mock'\necho 's SATISFIABLE'\necho 'v {lits}'\necho 'v 0'\nexit 10"),
    );
    assert!(run_external_solver(&f, &SolverConfig::new(&s, SolverMode::Stream), None).is_sat());
}

#[test]
fn wrong_model_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (f, _) = encode_bipartite_deletion(&Graph::complete(3), 1).unwrap();
    // Everything false violates the "each vertex somewhere" clauses.
    let liar = script(dir.path(), "liar", "echo SAT > \"$2\"\necho 0 >> \"$2\"");
    assert!(matches!(
        run_external_solver(&f, &SolverConfig::new(&liar, SolverMode::File), None),
        SolveOutcome::SolverError(_)
    ));
}

#[test]
fn bad_exit_code_and_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let f = CnfFormula::from_clauses(1, vec![vec![1]]);
    let crash = script(dir.path(), "crash", "echo boom >&2\nexit 3");
    match run_external_solver(&f, &SolverConfig::new(&crash, SolverMode::File), None) {
        SolveOutcome::SolverError(msg) => assert!(msg.contains("boom"), "{msg}"),
        other => panic!("{other:?}"),
    }
    let garbage = script(dir.path(), "garbage", "echo hello > \"$2\"");
    assert!(matches!(
        run_external_solver(&f, &SolverConfig::new(&garbage, SolverMode::File), None),
        SolveOutcome::SolverError(_)
    ));
    let silent = script(dir.path(), "silent", "exit 0");
    assert!(matches!(
        run_external_solver(&f, &SolverConfig::new(&silent, SolverMode::File), None),
        SolveOutcome::SolverError(_)
    ));
}

#[test]
fn slow_solver_is_killed() {
    let dir = tempfile::tempdir().unwrap();
    let f = CnfFormula::from_clauses(1, vec![vec![1]]);
    let slow = script(dir.path(), "slow", "exec sleep 30");
    let start = Instant::now();
    let got = run_external_solver(
        &f,
        &SolverConfig::new(&slow, SolverMode::File),
        Some(Duration::from_millis(200)),
    );
    assert_eq!(got, SolveOutcome::Timeout);
    assert!(start.elapsed() < Duration::from_secs(5));

    // A grandchild keeping the pipes open must not stall the bridge either.
    let forked = script(dir.path(), "forked", "sleep 30 &\nsleep 30");
    let start = Instant::now();
    let got = run_external_solver(
        &f,
        &SolverConfig::new(&forked, SolverMode::Stream),
        Some(Duration::from_millis(200)),
    );
    assert_eq!(got, SolveOutcome::Timeout);
    assert!(start.elapsed() < Duration::from_secs(5));
}

#[test]
fn search_through_the_bridge_reports_timeout_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let unsat = script(dir.path(), "unsat", "echo UNSAT > \"$2\"");
    let err = minimum_deletion_search(
        &Graph::complete(4),
        &mut External(SolverConfig::new(&unsat, SolverMode::File)),
        None,
    )
    .unwrap_err();
    assert!(matches!(err, SatError::Solver(_)), "{err:?}");

    let slow = script(dir.path(), "slow", "exec sleep 30");
    let err = minimum_deletion_search(
        &Graph::complete(4),
        &mut External(SolverConfig::new(&slow, SolverMode::File)),
        Some(Duration::from_millis(150)),
    )
    .unwrap_err();
    assert_eq!(
        err,
        SatError::Timeout {
            lower: 1,
            upper: None
        }
    );
}
