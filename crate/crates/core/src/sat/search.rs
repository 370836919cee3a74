use std::time::{Duration, Instant};

use crate::bipartite::two_color_all;
use crate::error::SatError;
use crate::graph::Graph;
use crate::partition::Tripartition;

use super::cnf::SolveOutcome;
use super::encode::{decode_model, encode_bipartite_deletion};
use super::SatBackend;

/// One solver call made during the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probe {
    pub k: usize,
    /// `Some(|D|)` of the decoded model, `None` if unsatisfiable.
    pub found: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub solution: Tripartition,
    pub k_min: usize,
    pub probes: Vec<Probe>,
}

/// Exact minimum deletion set.
///
/// Bipartite graphs are answered by two-coloring alone. Otherwise `k` runs
/// through 1, 2, 4, .. (capped at `n`) until the encoding is satisfiable,
/// then a binary search between the largest unsatisfiable `k` plus one and
/// the smallest decoded `|D|` probes `⌊(lo + hi) / 2⌋`. A decoded model may
/// delete fewer than `k` vertices; its actual size becomes the new upper
/// bound.
///
/// `timeout` bounds the whole search. Running out of time, or the solver
/// reporting a timeout, yields [`SatError::Timeout`] with the bounds known
/// so far.
pub fn minimum_deletion_search<S: SatBackend + ?Sized>(
    g: &Graph,
    solver: &mut S,
    timeout: Option<Duration>,
) -> Result<SearchResult, SatError> {
    if let Some(t) = two_color_all(g).into_tripartition() {
        return Ok(SearchResult {
            solution: t,
            k_min: 0,
            probes: Vec::new(),
        });
    }
    let deadline = timeout.map(|t| Instant::now() + t);
    let n = g.n();
    let mut lo = 1;
    let mut best: Option<Tripartition> = None;
    let mut probes = Vec::new();

    let mut probe =
        |k: usize, best: &mut Option<Tripartition>, lo: usize| -> Result<Option<usize>, SatError> {
            let remaining = match deadline {
                Some(d) => {
                    let now = Instant::now();
                    if now >= d {
                        return Err(timeout_error(lo, best));
                    }
                    Some(d - now)
                }
                None => None,
            };
            let (f, vm) = encode_bipartite_deletion(g, k)?;
            let found = match solver.solve(&f, remaining) {
                SolveOutcome::Sat(model) => {
                    let t = decode_model(&model, &vm, g)?;
                    let d = t.d_size();
                    if best.as_ref().is_none_or(|b| d < b.d_size()) {
                        *best = Some(t);
                    }
                    Some(d)
                }
                SolveOutcome::Unsat => None,
                SolveOutcome::Timeout => return Err(timeout_error(lo, best)),
                SolveOutcome::SolverError(msg) => return Err(SatError::Solver(msg)),
            };
            probes.push(Probe { k, found });
            Ok(found)
        };

    let mut k = 1;
    let mut hi = loop {
        match probe(k, &mut best, lo)? {
            Some(d) => break d,
            None if k >= n => {
                return Err(SatError::Solver(format!(
                    "deleting all {n} vertices reported unsatisfiable"
                )))
            }
            None => {
                lo = k + 1;
                k = (2 * k).min(n);
            }
        }
    };
    while lo < hi {
        let mid = (lo + hi) / 2;
        match probe(mid, &mut best, lo)? {
            Some(d) => hi = d,
            None => lo = mid + 1,
        }
    }
    Ok(SearchResult {
        solution: best.expect("a satisfiable probe was recorded"),
        k_min: hi,
        probes,
    })
}

fn timeout_error(lower: usize, best: &Option<Tripartition>) -> SatError {
    SatError::Timeout {
        lower,
        upper: best.as_ref().map(Tripartition::d_size),
    }
}

/// Smallest deletion set size by enumerating subsets in order of size.
/// Exponential; refuses graphs with more than 20 vertices.
pub fn brute_force_oct(g: &Graph) -> Result<usize, SatError> {
    let n = g.n();
    if n > 20 {
        return Err(SatError::TooLarge(n));
    }
    for size in 0..=n {
        if size == 0 {
            if two_color_all(g).is_bipartite() {
                return Ok(0);
            }
            continue;
        }
        // Gosper's hack: all n-bit masks with `size` bits, ascending.
        let mut mask: u32 = (1 << size) - 1;
        let limit: u32 = 1 << n;
        while mask < limit {
            if crate::bipartite::two_color(g, |v| mask >> v & 1 == 0).is_bipartite() {
                return Ok(size);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    unreachable!("deleting every vertex leaves an empty, bipartite graph")
}
