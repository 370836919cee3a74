//! Small complete DPLL solver: two-watched-literal unit propagation,
//! chronological backtracking, branching on the lowest unassigned variable
//! with `true` tried first. Meant for tests and tiny instances.

use std::time::Instant;

use super::cnf::{CnfFormula, Lit, Model, SolveOutcome};

/// Stopping rules for [`dpll_solve_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct DpllLimits {
    pub max_decisions: Option<u64>,
    pub deadline: Option<Instant>,
}

/// Solves `f`, giving up with `Timeout` after `max_decisions` branching decisions.
pub fn dpll_solve(f: &CnfFormula, max_decisions: u64) -> SolveOutcome {
    dpll_solve_with(
        f,
        DpllLimits {
            max_decisions: Some(max_decisions),
            deadline: None,
        },
    )
}

#[inline]
fn code(l: Lit) -> usize {
    2 * l.unsigned_abs() as usize + usize::from(l < 0)
}

struct Solver {
    clauses: Vec<Vec<Lit>>,
    /// watches[code(l)]: clauses currently watching literal `l`.
    watches: Vec<Vec<usize>>,
    /// 0 unassigned, 1 true, -1 false; index = variable.
    assign: Vec<i8>,
    trail: Vec<Lit>,
    qhead: usize,
}

impl Solver {
    #[inline]
    fn value(&self, l: Lit) -> i8 {
        let a = self.assign[l.unsigned_abs() as usize];
        if l > 0 {
            a
        } else {
            -a
        }
    }

    /// Assigns `l` true. Returns false on an immediate contradiction.
    fn enqueue(&mut self, l: Lit) -> bool {
        match self.value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.assign[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
                self.trail.push(l);
                true
            }
        }
    }

    /// Propagates the trail from `qhead`. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = -p;
            let mut ws = std::mem::take(&mut self.watches[code(falsified)]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let first = c[0];
                let first_val = {
                    let a = self.assign[first.unsigned_abs() as usize];
                    if first > 0 {
                        a
                    } else {
                        -a
                    }
                };
                if first_val == 1 {
                    i += 1;
                    continue;
                }
                // Look for a replacement watch.
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let a = self.assign[l.unsigned_abs() as usize];
                    let val = if l > 0 { a } else { -a };
                    if val != -1 {
                        c.swap(1, k);
                        self.watches[code(c[1])].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                i += 1;
                if !self.enqueue(first) {
                    ok = false;
                    break;
                }
            }
            let slot = &mut self.watches[code(falsified)];
            ws.append(slot);
            *slot = ws;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for &l in &self.trail[len..] {
            self.assign[l.unsigned_abs() as usize] = 0;
        }
        self.trail.truncate(len);
        self.qhead = len;
    }
}

pub fn dpll_solve_with(f: &CnfFormula, limits: DpllLimits) -> SolveOutcome {
    let n = f.num_vars;
    let mut s = Solver {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * n + 2],
        assign: vec![0; n + 1],
        trail: Vec::new(),
        qhead: 0,
    };
    let mut units = Vec::new();
    for c in &f.clauses {
        let mut c = c.clone();
        c.sort_unstable();
        c.dedup();
        match c.len() {
            0 => return SolveOutcome::Unsat,
            1 => units.push(c[0]),
            _ => {
                let ci = s.clauses.len();
                s.watches[code(c[0])].push(ci);
                s.watches[code(c[1])].push(ci);
                s.clauses.push(c);
            }
        }
    }
    for l in units {
        if !s.enqueue(l) {
            return SolveOutcome::Unsat;
        }
    }

    // (variable, trail length before the decision, second branch taken)
    let mut decisions: Vec<(usize, usize, bool)> = Vec::new();
    let mut count: u64 = 0;
    let mut next_var = 1;
    loop {
        if !s.propagate() {
            loop {
                let Some((var, mark, flipped)) = decisions.pop() else {
                    return SolveOutcome::Unsat;
                };
                s.undo_to(mark);
                next_var = next_var.min(var);
                if !flipped {
                    decisions.push((var, mark, true));
                    s.enqueue(-(var as Lit));
                    break;
                }
            }
            continue;
        }
        while next_var <= n && s.assign[next_var] != 0 {
            next_var += 1;
        }
        if next_var > n {
            return SolveOutcome::Sat(Model(s.assign[1..].iter().map(|&a| a == 1).collect()));
        }
        count += 1;
        if limits.max_decisions.is_some_and(|m| count > m) {
            return SolveOutcome::Timeout;
        }
        if count.is_multiple_of(1024) && limits.deadline.is_some_and(|d| Instant::now() >= d) {
            return SolveOutcome::Timeout;
        }
        decisions.push((next_var, s.trail.len(), false));
        s.enqueue(next_var as Lit);
    }
}
