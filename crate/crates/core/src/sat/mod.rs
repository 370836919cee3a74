//! Exact minimum deletion via SAT.

mod cnf;
mod dpll;
mod encode;
mod external;
mod search;

use std::time::{Duration, Instant};

pub use cnf::{emit_dimacs, CnfFormula, Lit, Model, SolveOutcome};
pub use dpll::{dpll_solve, dpll_solve_with, DpllLimits};
pub use encode::{
    decode_model, encode_bipartite_deletion, expected_clauses, expected_vars,
    model_from_tripartition, VarMap,
};
pub use external::{
    parse_file_output, parse_stream_output, run_external_solver, SolverConfig, SolverMode,
    SOLVER_ENV,
};
pub use search::{brute_force_oct, minimum_deletion_search, Probe, SearchResult};

/// Anything that can decide a CNF formula within an optional time budget.
pub trait SatBackend {
    fn solve(&mut self, f: &CnfFormula, timeout: Option<Duration>) -> SolveOutcome;
}

impl<F> SatBackend for F
where
    F: FnMut(&CnfFormula, Option<Duration>) -> SolveOutcome,
{
    fn solve(&mut self, f: &CnfFormula, timeout: Option<Duration>) -> SolveOutcome {
        self(f, timeout)
    }
}

/// The built-in DPLL solver as a backend.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dpll {
    pub max_decisions: Option<u64>,
}

impl SatBackend for Dpll {
    fn solve(&mut self, f: &CnfFormula, timeout: Option<Duration>) -> SolveOutcome {
        dpll_solve_with(
            f,
            DpllLimits {
                max_decisions: self.max_decisions,
                deadline: timeout.map(|t| Instant::now() + t),
            },
        )
    }
}

/// An external solver binary as a backend.
#[derive(Clone, Debug)]
pub struct External(pub SolverConfig);

impl SatBackend for External {
    fn solve(&mut self, f: &CnfFormula, timeout: Option<Duration>) -> SolveOutcome {
        run_external_solver(f, &self.0, timeout)
    }
}
