//! Simulated annealing with each cooling schedule on one random graph, and a
//! trace of the first accepted moves.
//!
//! cargo run --release --example annealing

use std::ops::ControlFlow;

use octrav::annealing::{anneal, AnnealParams, CoolingKind};
use octrav::generate::gen_random_graph;
use octrav::greedy::greedy;
use octrav::Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_random_graph(100, 400, 11)?;
    println!("graph: n = {}, m = {}", g.n(), g.m());
    println!(
        "greedy start: |D| = {}",
        greedy(&g, &mut Rng::seeded(3)).d_size()
    );

    for cooling in [
        CoolingKind::HillClimbing,
        CoolingKind::Linear,
        CoolingKind::Quadratic,
        CoolingKind::Exponential,
    ] {
        let p = AnnealParams {
            cooling,
            ..AnnealParams::default()
        };
        let run = anneal(&g, &p, &mut Rng::seeded(3), |_| ControlFlow::Continue(()));
        println!(
            "{:<14} final |D| = {:>3}  best seen = {:>3}",
            cooling.name(),
            run.solution.d_size(),
            run.best_seen_d
        );
    }

    println!("\nfirst accepted moves (quadratic):");
    let mut shown = 0;
    anneal(&g, &AnnealParams::default(), &mut Rng::seeded(3), |step| {
        if step.accepted && step.gain != 0 {
            println!(
                "  i = {:>5}  t = {:>6.2}  gain = {:>2}  |D| = {}",
                step.iteration,
                step.temperature,
                step.gain,
                step.current.d_size()
            );
            shown += 1;
        }
        if shown == 10 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(())
}
