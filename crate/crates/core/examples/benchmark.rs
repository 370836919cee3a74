//! A small benchmark: generated graphs, all four algorithms, two seeds,
//! results as CSV on stdout and a summary table on stderr.
//!
//! cargo run --release --example benchmark

use octrav::formats::{write, GraphFormat};
use octrav::generate::gen_random_graph;
use octrav::harness::{format_summary, run_benchmark, Algorithm, BenchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let data = dir.path().join("random");
    std::fs::create_dir(&data)?;
    for (i, (n, m)) in [(12, 24), (16, 40), (20, 60)].into_iter().enumerate() {
        let g = gen_random_graph(n, m, i as u64)?;
        std::fs::write(
            data.join(format!("g{i}.txt")),
            write(&g, GraphFormat::EdgeList),
        )?;
    }
    let mut cfg = BenchConfig {
        inputs: vec![data],
        algorithms: Algorithm::ALL.to_vec(),
        seeds: vec![1, 2],
        timeout_secs: 10.0,
        jobs: 0,
        ..BenchConfig::default()
    };
    cfg.anneal.i_max = 2000;
    cfg.genetic.generations = 100;
    let report = run_benchmark(&cfg)?;
    eprint!("{}", format_summary(&report.summary));
    Ok(())
}
