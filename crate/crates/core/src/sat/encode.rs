//! CNF encoding of "at most `k` deletions make the graph bipartite".
//!
//! Per vertex `i` there are three variables: `in_a(i)`, `in_b(i)`,
//! `deleted(i)`. Clauses:
//!
//! 1. `in_a(i) ∨ in_b(i) ∨ deleted(i)` for every vertex;
//! 2. `¬in_a(i) ∨ ¬in_a(j)` and `¬in_b(i) ∨ ¬in_b(j)` for every edge;
//! 3. a sequential-counter (Sinz) at-most-`k` constraint over the
//!    `deleted` variables, with `k` register bits per vertex `1..n-1`.
//!
//! For `n ≥ 2` this gives exactly `(n-1)(k+3)+3` variables and
//! `2m + 2nk + 2n - 3k - 1` clauses.

use crate::bipartite::verify_tripartition;
use crate::error::SatError;
use crate::graph::{Graph, VertexId};
use crate::partition::{Side, Tripartition};

use super::cnf::{CnfFormula, Lit, Model};

/// Variable layout: vertex `i` owns `3i+1..=3i+3`; register `s(i, j)`
/// (`1 ≤ i ≤ n-1`, `1 ≤ j ≤ k`) is `3n + (i-1)k + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarMap {
    pub n: usize,
    pub k: usize,
}

impl VarMap {
    #[inline]
    pub fn in_a(&self, v: VertexId) -> Lit {
        (3 * v + 1) as Lit
    }

    #[inline]
    pub fn in_b(&self, v: VertexId) -> Lit {
        (3 * v + 2) as Lit
    }

    #[inline]
    pub fn deleted(&self, v: VertexId) -> Lit {
        (3 * v + 3) as Lit
    }

    /// Register `s(i, j)`, 1-based in both indices.
    #[inline]
    pub fn register(&self, i: usize, j: usize) -> Lit {
        debug_assert!((1..self.n).contains(&i) && (1..=self.k).contains(&j));
        (3 * self.n + (i - 1) * self.k + j) as Lit
    }

    pub fn num_vars(&self) -> usize {
        3 * self.n + self.n.saturating_sub(1) * self.k
    }
}

/// Closed-form variable count, `(n-1)(k+3)+3`.
pub fn expected_vars(n: usize, k: usize) -> usize {
    (n - 1) * (k + 3) + 3
}

/// Closed-form clause count, `2m + 2nk + 2n - 3k - 1` (valid for `n ≥ 2`).
pub fn expected_clauses(n: usize, m: usize, k: usize) -> usize {
    2 * m + 2 * n * k + 2 * n - 3 * k - 1
}

pub fn encode_bipartite_deletion(g: &Graph, k: usize) -> Result<(CnfFormula, VarMap), SatError> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(SatError::KOutOfRange { k, n });
    }
    let vm = VarMap { n, k };
    let mut f = CnfFormula::new(vm.num_vars());
    for v in g.vertices() {
        f.add_clause([vm.in_a(v), vm.in_b(v), vm.deleted(v)]);
    }
    for (u, v) in g.edges() {
        f.add_clause([-vm.in_a(u), -vm.in_a(v)]);
        f.add_clause([-vm.in_b(u), -vm.in_b(v)]);
    }
    at_most_k(&mut f, &vm);
    Ok((f, vm))
}

/// Sequential counter over `x_i = deleted(i-1)`, `i = 1..=n`. Register
/// `s(i, j)` is forced true when at least `j` of `x_1..x_i` are true.
fn at_most_k(f: &mut CnfFormula, vm: &VarMap) {
    let (n, k) = (vm.n, vm.k);
    if n < 2 {
        return;
    }
    let x = |i: usize| vm.deleted(i - 1);
    let s = |i: usize, j: usize| vm.register(i, j);

    f.add_clause([-x(1), s(1, 1)]);
    for j in 2..=k {
        f.add_clause([-s(1, j)]);
    }
    for i in 2..n {
        f.add_clause([-x(i), s(i, 1)]);
        f.add_clause([-s(i - 1, 1), s(i, 1)]);
        for j in 2..=k {
            f.add_clause([-x(i), -s(i - 1, j - 1), s(i, j)]);
            f.add_clause([-s(i - 1, j), s(i, j)]);
        }
        f.add_clause([-x(i), -s(i - 1, k)]);
    }
    f.add_clause([-x(n), -s(n - 1, k)]);
}

/// Reads a tripartition off a satisfying model with precedence
/// `D ≻ A ≻ B`: deleted wins, then `in_a`, everything else lands in `B`.
/// The result is re-verified; failure means the model does not satisfy
/// the encoding.
pub fn decode_model(model: &Model, vm: &VarMap, g: &Graph) -> Result<Tripartition, SatError> {
    if model.len() < vm.num_vars() {
        return Err(SatError::InvalidModel(format!(
            "model has {} variables, encoding needs {}",
            model.len(),
            vm.num_vars()
        )));
    }
    let lit = |l: Lit| model.lit(l);
    let sides = g
        .vertices()
        .map(|v| {
            if lit(vm.deleted(v)) {
                Side::D
            } else if lit(vm.in_a(v)) {
                Side::A
            } else {
                Side::B
            }
        })
        .collect();
    let t = Tripartition::from_sides(sides);
    let report = verify_tripartition(g, &t);
    if let Some(v) = [report.complete, report.valid]
        .into_iter()
        .find_map(|r| r.err())
    {
        return Err(SatError::InvalidModel(v.to_string()));
    }
    if t.d_size() > vm.k {
        return Err(SatError::InvalidModel(format!(
            "{} deletions exceed k = {}",
            t.d_size(),
            vm.k
        )));
    }
    Ok(t)
}

/// Model that sets the variables of `t` as the encoding intends, including
/// the register bits (prefix counts of deletions). Used to check that
/// every valid tripartition with `|D| ≤ k` satisfies the formula.
pub fn model_from_tripartition(t: &Tripartition, vm: &VarMap) -> Model {
    let mut m = vec![false; vm.num_vars()];
    let mut set = |l: Lit, v: bool| m[l as usize - 1] = v;
    let mut prefix = 0;
    for v in 0..vm.n {
        set(vm.in_a(v), t.side(v) == Side::A);
        set(vm.in_b(v), t.side(v) == Side::B);
        set(vm.deleted(v), t.side(v) == Side::D);
        if t.side(v) == Side::D {
            prefix += 1;
        }
        let i = v + 1;
        if i < vm.n {
            for j in 1..=vm.k {
                set(vm.register(i, j), prefix >= j);
            }
        }
    }
    Model(m)
}
