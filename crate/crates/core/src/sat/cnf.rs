use std::fmt::Write as _;

/// A signed DIMACS literal: `v` is variable `v`, `-v` its negation.
pub type Lit = i32;

/// Clause list over variables `1..=num_vars`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn from_clauses(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Self {
        Self { num_vars, clauses }
    }

    pub fn add_clause(&mut self, clause: impl Into<Vec<Lit>>) {
        self.clauses.push(clause.into());
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Literals in range, no empty clause, no clause with both `x` and `-x`.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(format!("clause {i} is empty"));
            }
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > self.num_vars {
                    return Err(format!("clause {i}: literal {l} out of range"));
                }
                if c.contains(&-l) {
                    return Err(format!("clause {i} is tautological on {}", l.abs()));
                }
            }
        }
        Ok(())
    }

    /// True iff `model` satisfies every clause.
    pub fn is_satisfied_by(&self, model: &Model) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| model.lit(l)))
    }

    /// DIMACS CNF text: header, then one ` 0`-terminated line per clause in
    /// insertion order.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::with_capacity(16 + self.clauses.len() * 12);
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Reads DIMACS CNF. Clauses may span lines; `c` lines are comments.
    pub fn parse_dimacs(text: &str) -> Result<Self, String> {
        let mut num_vars = None;
        let mut declared = 0usize;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let tok: Vec<_> = line.split_whitespace().collect();
                if tok.len() != 4 || tok[1] != "cnf" {
                    return Err(format!("line {}: bad header", i + 1));
                }
                num_vars = Some(
                    tok[2]
                        .parse()
                        .map_err(|_| format!("line {}: bad n", i + 1))?,
                );
                declared = tok[3]
                    .parse()
                    .map_err(|_| format!("line {}: bad m", i + 1))?;
                continue;
            }
            if num_vars.is_none() {
                return Err("missing `p cnf` header".into());
            }
            for tok in line.split_whitespace() {
                let l: Lit = tok
                    .parse()
                    .map_err(|_| format!("line {}: bad literal `{tok}`", i + 1))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(l);
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let num_vars = num_vars.ok_or("missing `p cnf` header")?;
        if clauses.len() != declared {
            return Err(format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            ));
        }
        Ok(Self { num_vars, clauses })
    }
}

pub fn emit_dimacs(f: &CnfFormula) -> String {
    f.to_dimacs()
}

/// A complete truth assignment; variable `v` is stored at index `v - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model(pub Vec<bool>);

impl Model {
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn lit(&self, l: Lit) -> bool {
        let v = self.value(l.unsigned_abs() as usize);
        if l > 0 {
            v
        } else {
            !v
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Result of one satisfiability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat(Model),
    Unsat,
    Timeout,
    SolverError(String),
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }
}
