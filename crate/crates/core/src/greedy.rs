//! Greedy construction of a deletion set.
//!
//! [`greedy_fill`] is the workhorse of every heuristic in the crate: given a
//! valid partial solution it tries, in random order, to move each deleted
//! vertex into a class where it has no neighbor. Classes only grow and `D`
//! only shrinks. Afterwards every vertex left in `D` has a neighbor in both
//! `A` and `B`.
//!
//! That certificate is weaker than inclusion-minimality under re-coloring;
//! [`refine_strict_minimal`] closes the gap when asked to.

use crate::bipartite::{two_color, verify_tripartition};
use crate::error::InputError;
use crate::graph::Graph;
use crate::partition::{Side, Tripartition};
use crate::rng::RandomSource;

/// Work counters for one [`greedy_fill`] pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FillStats {
    /// Deleted vertices visited.
    pub visited: usize,
    /// Adjacency-list entries read.
    pub adjacency_touched: usize,
}

impl FillStats {
    pub fn work(&self) -> usize {
        self.visited + self.adjacency_touched
    }
}

/// In-place greedy fill. `t` must be complete and have no edge inside `A`
/// or inside `B` (checked with `debug_assert`).
///
/// Visits `D` once in shuffled order. For a vertex `u` the viable classes
/// are those holding none of its neighbors, evaluated against the classes as
/// they stand at that moment:
/// * both viable and both still empty: `u` goes to `A`;
/// * both viable otherwise: one `below(2)` draw, `0` meaning `A`;
/// * one viable: `u` goes there;
/// * none viable: `u` stays in `D`.
pub fn fill_in_place<R: RandomSource>(g: &Graph, t: &mut Tripartition, rng: &mut R) -> FillStats {
    debug_assert!(
        check_fill_input(g, t).is_ok(),
        "{:?}",
        check_fill_input(g, t)
    );
    let mut order = t.deleted();
    rng.shuffle(&mut order);
    let mut stats = FillStats {
        visited: order.len(),
        adjacency_touched: 0,
    };
    for u in order {
        let (mut in_a, mut in_b) = (false, false);
        for &v in g.neighbors(u) {
            stats.adjacency_touched += 1;
            match t.side(v) {
                Side::A => in_a = true,
                Side::B => in_b = true,
                _ => {}
            }
            if in_a && in_b {
                break;
            }
        }
        let target = match (in_a, in_b) {
            (true, true) => continue,
            (false, true) => Side::A,
            (true, false) => Side::B,
            (false, false) => {
                let both_empty = t.count(Side::A) == 0 && t.count(Side::B) == 0;
                if both_empty || rng.below(2) == 0 {
                    Side::A
                } else {
                    Side::B
                }
            }
        };
        t.set(u, target);
    }
    stats
}

pub fn greedy_fill<R: RandomSource>(g: &Graph, mut t: Tripartition, rng: &mut R) -> Tripartition {
    fill_in_place(g, &mut t, rng);
    t
}

/// [`greedy_fill`] with its precondition checked in every build profile.
pub fn greedy_fill_checked<R: RandomSource>(
    g: &Graph,
    t: Tripartition,
    rng: &mut R,
) -> Result<Tripartition, InputError> {
    check_fill_input(g, &t)?;
    Ok(greedy_fill(g, t, rng))
}

fn check_fill_input(g: &Graph, t: &Tripartition) -> Result<(), InputError> {
    let report = verify_tripartition(g, t);
    match (report.complete, report.valid) {
        (Ok(()), Ok(())) => Ok(()),
        (Err(v), _) | (_, Err(v)) => Err(InputError::InvalidInput(v.to_string())),
    }
}

/// Greedy from scratch: fill starting with every vertex deleted.
pub fn greedy<R: RandomSource>(g: &Graph, rng: &mut R) -> Tripartition {
    greedy_fill(g, Tripartition::all_deleted(g.n()), rng)
}

/// Shrinks `D` until no single deleted vertex can be restored.
///
/// Each pass visits `D` in shuffled order; whenever `G[V \ D + u]` is
/// bipartite, `u` leaves `D` and `A`/`B` are replaced by that coloring.
/// Stops after a pass with no change. O(|D|^2 (n + m)) worst case.
pub fn refine_strict_minimal<R: RandomSource>(
    g: &Graph,
    mut t: Tripartition,
    rng: &mut R,
) -> Tripartition {
    loop {
        let mut changed = false;
        let mut order = t.deleted();
        rng.shuffle(&mut order);
        for u in order {
            let coloring = two_color(g, |v| v == u || t.side(v) != Side::D);
            if let Some(next) = coloring.into_tripartition() {
                t = next;
                changed = true;
            }
        }
        if !changed {
            return t;
        }
    }
}
