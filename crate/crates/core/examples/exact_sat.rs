//! Exact minimum deletion with the built-in DPLL solver, or an external
//! solver when `OCTRAV_SOLVER` is set, cross-checked by brute force.
//!
//! cargo run --release --example exact_sat

use octrav::generate::gen_random_graph;
use octrav::sat::{
    brute_force_oct, minimum_deletion_search, Dpll, External, SolverConfig, SolverMode,
};
use octrav::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut graphs = vec![
        ("K5".to_string(), Graph::complete(5)),
        ("Petersen".to_string(), Graph::petersen()),
        ("C7".to_string(), Graph::cycle(7)),
    ];
    for seed in 0..3 {
        graphs.push((
            format!("G(12, 30) #{seed}"),
            gen_random_graph(12, 30, seed)?,
        ));
    }
    let external = SolverConfig::resolve(None, SolverMode::File);
    if let Some(cfg) = &external {
        println!("using external solver {}", cfg.exe.display());
    }
    for (name, g) in &graphs {
        let result = match &external {
            Some(cfg) => minimum_deletion_search(g, &mut External(cfg.clone()), None)?,
            None => minimum_deletion_search(g, &mut Dpll::default(), None)?,
        };
        let probes: Vec<String> = result
            .probes
            .iter()
            .map(|p| match p.found {
                Some(d) => format!("k={} sat(|D|={d})", p.k),
                None => format!("k={} unsat", p.k),
            })
            .collect();
        println!(
            "{name:<14} k_min = {}  brute force = {}  probes: {}",
            result.k_min,
            brute_force_oct(g)?,
            if probes.is_empty() {
                "none".into()
            } else {
                probes.join(", ")
            }
        );
    }
    Ok(())
}
