//! Greedy deletion on a few named graphs, with and without the strict
//! minimality pass.
//!
//! cargo run --example greedy

use octrav::bipartite::{is_strictly_minimal, verify_tripartition};
use octrav::greedy::{greedy, refine_strict_minimal};
use octrav::{Graph, Rng};

fn main() {
    let graphs = [
        ("K3", Graph::complete(3)),
        ("C5", Graph::cycle(5)),
        ("C6", Graph::cycle(6)),
        ("K5", Graph::complete(5)),
        ("K3,3", Graph::complete_bipartite(3, 3)),
        ("Petersen", Graph::petersen()),
    ];
    for (name, g) in &graphs {
        let mut rng = Rng::seeded(1);
        let t = greedy(g, &mut rng);
        let report = verify_tripartition(g, &t);
        let minimal = is_strictly_minimal(g, &t);
        let refined = refine_strict_minimal(g, t.clone(), &mut rng);
        println!(
            "{name:<9} |D| = {}  verified = {}  strictly minimal = {minimal}  after refining |D| = {}",
            t.d_size(),
            report.all_ok(),
            refined.d_size()
        );
    }

    let g = Graph::petersen();
    println!(
        "\nPetersen, seed 1:\n{}",
        greedy(&g, &mut Rng::seeded(1)).to_labeled_lines(&g)
    );
}
