//! Genetic search on one random graph, printing the population's best and
//! worst `|D|` every 100 generations.
//!
//! cargo run --release --example genetic

use std::ops::ControlFlow;

use octrav::generate::gen_random_graph;
use octrav::genetic::{evolve, GeneticParams};
use octrav::Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_random_graph(100, 400, 11)?;
    let p = GeneticParams::default();
    println!(
        "graph: n = {}, m = {}; population {}, {} generations, p_mut = {}",
        g.n(),
        g.m(),
        p.population,
        p.generations,
        p.p_mut
    );
    let run = evolve(&g, &p, &mut Rng::seeded(5), |gen| {
        if gen.index % 100 == 0 {
            let best = gen.population.iter().map(|i| i.d_size).min().unwrap();
            let worst = gen.population.iter().map(|i| i.d_size).max().unwrap();
            println!("generation {:>4}: best {best}, worst {worst}", gen.index);
        }
        ControlFlow::Continue(())
    });
    println!(
        "result |D| = {} (best ever seen {})",
        run.solution.d_size(),
        run.best_seen_d
    );
    Ok(())
}
