//! Encodes "at most k deletions make K5 bipartite" as DIMACS CNF and decodes
//! a model found by DPLL.
//!
//! cargo run --example encode_dimacs [k]

use octrav::sat::{decode_model, dpll_solve, encode_bipartite_deletion, SolveOutcome};
use octrav::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(3);
    let g = Graph::complete(5);
    let (f, vars) = encode_bipartite_deletion(&g, k)?;
    println!(
        "K5, k = {k}: {} variables, {} clauses (vertex 0 uses {}, {}, {})",
        f.num_vars,
        f.num_clauses(),
        vars.in_a(0),
        vars.in_b(0),
        vars.deleted(0)
    );
    print!("{}", f.to_dimacs());
    match dpll_solve(&f, 1_000_000) {
        SolveOutcome::Sat(model) => {
            let t = decode_model(&model, &vars, &g)?;
            println!("c satisfiable:\n{}", t.to_labeled_lines(&g));
        }
        other => println!("c {other:?}"),
    }
    Ok(())
}
