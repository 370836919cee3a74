//! Acceptance suite: one PASS / FAIL / SKIP line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines always show up in
//! `cargo test` output. Exits nonzero if any criterion fails.

use std::collections::VecDeque;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use octrav::annealing::{accept, anneal, simulated_annealing, AnnealParams, CoolingKind};
use octrav::bipartite::verify_tripartition;
use octrav::generate::{gen_random_graph, max_edges};
use octrav::genetic::{genetic, GeneticParams};
use octrav::greedy::greedy;
use octrav::harness::{run_algorithm, AlgoParams, Algorithm, RunStatus};
use octrav::sat::{
    dpll_solve, encode_bipartite_deletion, minimum_deletion_search, run_external_solver,
    CnfFormula, Dpll, SatBackend, SolveOutcome, SolverConfig, SolverMode,
};
use octrav::{Graph, RandomSource, Rng, Side, Tripartition};

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

// ---------------------------------------------------------------------------
// Independent oracles.

/// BFS 2-coloring of the vertices where `keep` is true.
fn oracle_bipartite(g: &Graph, keep: &[bool]) -> bool {
    let mut color = vec![u8::MAX; g.n()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if !keep[s] || color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !keep[v] {
                    continue;
                }
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Smallest deletion set by trying every subset, smallest first.
fn oracle_min_deletion(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n;
    for mask in 0u32..1 << n {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let keep: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
        if oracle_bipartite(g, &keep) {
            best = size;
        }
    }
    best
}

/// Complete, no edge inside A or B, every deleted vertex touches A and B.
fn oracle_valid(g: &Graph, t: &Tripartition) -> Result<(), String> {
    if t.n() != g.n() {
        return Err("size mismatch".into());
    }
    for u in g.vertices() {
        let s = t.side(u);
        if s == Side::Unassigned {
            return Err(format!("{u} unassigned"));
        }
        for &v in g.neighbors(u) {
            if s != Side::D && t.side(v) == s {
                return Err(format!("edge {u}-{v} inside {s}"));
            }
        }
        if s == Side::D {
            let sides: Vec<Side> = g.neighbors(u).iter().map(|&v| t.side(v)).collect();
            if !sides.contains(&Side::A) || !sides.contains(&Side::B) {
                return Err(format!("deleted {u} lacks a neighbor in A or B"));
            }
        }
    }
    Ok(())
}

/// Restoring any single deleted vertex breaks bipartiteness.
fn oracle_strictly_minimal(g: &Graph, t: &Tripartition) -> bool {
    let keep: Vec<bool> = g.vertices().map(|u| t.side(u) != Side::D).collect();
    t.deleted().into_iter().all(|d| {
        let mut k = keep.clone();
        k[d] = true;
        !oracle_bipartite(g, &k)
    })
}

fn expected_counts(n: usize, m: usize, k: usize) -> (usize, usize) {
    ((n - 1) * (k + 3) + 3, 2 * m + 2 * n * k + 2 * n - 3 * k - 1)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

// ---------------------------------------------------------------------------
// Graph families.

/// Random graph with n in lo..=hi and m ≈ ratio·n for ratio in [1, 10],
/// capped at the number of vertex pairs.
fn random_graph(rng: &mut Rng, lo: usize, hi: usize, seed: u64) -> Graph {
    let n = lo + rng.below(hi - lo + 1);
    let ratio = 1.0 + 9.0 * rng.uniform();
    let m = ((ratio * n as f64).round() as usize).min(max_edges(n));
    gen_random_graph(n, m, seed).unwrap()
}

fn criterion1_graphs() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("K3".to_string(), Graph::complete(3)),
        ("C5".to_string(), Graph::cycle(5)),
        ("K4".to_string(), Graph::complete(4)),
        ("K5".to_string(), Graph::complete(5)),
        ("C6".to_string(), Graph::cycle(6)),
        ("K3,3".to_string(), Graph::complete_bipartite(3, 3)),
        ("Petersen".to_string(), Graph::petersen()),
    ];
    let mut rng = Rng::seeded(1);
    for i in 0..200u64 {
        out.push((
            format!("random #{i}"),
            random_graph(&mut rng, 4, 12, 10_000 + i),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Criteria.

/// Records every formula the search hands to DPLL.
struct Recording<'a> {
    seen: &'a mut Vec<(CnfFormula, bool)>,
}

impl SatBackend for Recording<'_> {
    fn solve(&mut self, f: &CnfFormula, timeout: Option<Duration>) -> SolveOutcome {
        let out = Dpll::default().solve(f, timeout);
        self.seen.push((f.clone(), out.is_sat()));
        out
    }
}

fn c1_oracle_optimality(
    graphs: &[(String, Graph)],
    encodings: &mut Vec<(CnfFormula, bool)>,
) -> Verdict {
    let start = Instant::now();
    for (name, g) in graphs {
        let want = oracle_min_deletion(g);
        let got = match minimum_deletion_search(g, &mut Recording { seen: encodings }, None) {
            Ok(r) => r,
            Err(e) => return Verdict::Fail(format!("{name}: {e}")),
        };
        if got.k_min != want || got.solution.d_size() != want {
            return Verdict::Fail(format!(
                "{name}: k_min {} but oracle says {want}",
                got.k_min
            ));
        }
        if let Err(e) = oracle_valid(g, &got.solution) {
            return Verdict::Fail(format!("{name}: invalid exact solution: {e}"));
        }
    }
    Verdict::Pass(format!(
        "{} graphs match brute force ({:.1} s)",
        graphs.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn c2_encoding_counts() -> Verdict {
    let mut rng = Rng::seeded(2);
    for i in 0..100u64 {
        let n = 2 + rng.below(59);
        let m = rng.below(max_edges(n).min(8 * n) + 1);
        let k = 1 + rng.below(n);
        let g = gen_random_graph(n, m, 20_000 + i).unwrap();
        let (f, _) = encode_bipartite_deletion(&g, k).unwrap();
        let (vars, clauses) = expected_counts(n, m, k);
        if (f.num_vars, f.num_clauses()) != (vars, clauses) {
            return Verdict::Fail(format!(
                "n={n} m={m} k={k}: got {} vars / {} clauses, want {vars} / {clauses}",
                f.num_vars,
                f.num_clauses()
            ));
        }
    }
    Verdict::Pass("100 (graph, k) pairs match both formulas".into())
}

fn c3_validity() -> Verdict {
    let mut rng = Rng::seeded(3);
    let ap = AnnealParams {
        i_max: 500,
        ..AnnealParams::default()
    };
    let gp = GeneticParams {
        generations: 25,
        ..GeneticParams::default()
    };
    let start = Instant::now();
    for i in 0..1000u64 {
        let g = random_graph(&mut rng, 1, 200, 30_000 + i);
        let outputs = [
            ("greedy", greedy(&g, &mut Rng::seeded(i))),
            ("anneal", simulated_annealing(&g, &ap, &mut Rng::seeded(i))),
            ("genetic", genetic(&g, &gp, &mut Rng::seeded(i))),
        ];
        for (algo, t) in &outputs {
            let report = verify_tripartition(&g, t);
            if !report.all_ok() {
                return Verdict::Fail(format!("graph {i} {algo}: {:?}", report.first_violation()));
            }
            if let Err(e) = oracle_valid(&g, t) {
                return Verdict::Fail(format!("graph {i} {algo}: {e}"));
            }
        }
    }
    Verdict::Pass(format!(
        "3000 outputs verified on 1000 graphs, anneal i_max=500, genetic 20x25 ({:.1} s)",
        start.elapsed().as_secs_f64()
    ))
}

fn c4_dominance(graphs: &[(String, Graph)]) -> Verdict {
    let ap = AnnealParams::default();
    let gp = GeneticParams::default();
    for (i, (name, g)) in graphs.iter().enumerate() {
        let exact = oracle_min_deletion(g);
        let sat = match minimum_deletion_search(g, &mut Dpll::default(), None) {
            Ok(r) => r.k_min,
            Err(e) => return Verdict::Fail(format!("{name}: {e}")),
        };
        let seed = i as u64;
        let heuristics = [
            ("greedy", greedy(g, &mut Rng::seeded(seed)).d_size()),
            (
                "anneal",
                simulated_annealing(g, &ap, &mut Rng::seeded(seed)).d_size(),
            ),
            ("genetic", genetic(g, &gp, &mut Rng::seeded(seed)).d_size()),
        ];
        for (algo, d) in heuristics {
            if sat > d || exact > d {
                return Verdict::Fail(format!("{name}: sat {sat} > {algo} {d}"));
            }
        }
    }
    Verdict::Pass(format!(
        "|D_sat| <= every heuristic on {} graphs",
        graphs.len()
    ))
}

fn c5_quality_ordering() -> Verdict {
    let ap = AnnealParams {
        i_max: 2000,
        ..AnnealParams::default()
    };
    let gp = GeneticParams {
        generations: 10,
        population: 200,
        ..GeneticParams::default()
    };
    let (mut gr, mut an, mut ge) = (Vec::new(), Vec::new(), Vec::new());
    for s in 0..100u64 {
        let g = gen_random_graph(50, 150, s).unwrap();
        gr.push(greedy(&g, &mut Rng::seeded(s)).d_size() as f64);
        an.push(simulated_annealing(&g, &ap, &mut Rng::seeded(s)).d_size() as f64);
        ge.push(genetic(&g, &gp, &mut Rng::seeded(s)).d_size() as f64);
    }
    let (mg, ma, mge) = (mean(&gr), mean(&an), mean(&ge));
    let detail = format!(
        "mean |D| greedy {mg:.2}, anneal {ma:.2} (i_max=2000), genetic {mge:.2} (g_max=10, i_max=200)"
    );
    let ok = mge <= ma && ma <= mg && mg - mge >= 0.5;
    if ok {
        Verdict::Pass(detail)
    } else {
        let mut why = Vec::new();
        if mge > ma {
            why.push("genetic > anneal");
        }
        if ma > mg {
            why.push("anneal > greedy");
        }
        if mg - mge < 0.5 {
            why.push("greedy - genetic < 0.5");
        }
        Verdict::Fail(format!("{detail}; {}", why.join(", ")))
    }
}

fn c6_runtime_ordering() -> Verdict {
    let g = gen_random_graph(200, 1000, 6).unwrap();
    let time = |f: &dyn Fn() -> Tripartition| {
        (0..3)
            .map(|_| {
                let start = Instant::now();
                std::hint::black_box(f());
                start.elapsed()
            })
            .min()
            .unwrap()
    };
    let tg = time(&|| greedy(&g, &mut Rng::seeded(1)));
    let ta = time(&|| simulated_annealing(&g, &AnnealParams::default(), &mut Rng::seeded(1)));
    let tge = time(&|| genetic(&g, &GeneticParams::default(), &mut Rng::seeded(1)));
    let ms = |d: Duration| d.as_secs_f64() * 1e3;
    let detail = format!(
        "greedy {:.3} ms, anneal {:.1} ms, genetic {:.1} ms (best of 3)",
        ms(tg),
        ms(ta),
        ms(tge)
    );
    if tg < ta && ta < tge && ms(tg) < 50.0 {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn c7_hill_climbing() -> Verdict {
    let p = AnnealParams {
        cooling: CoolingKind::HillClimbing,
        i_max: 2000,
        ..AnnealParams::default()
    };
    let mut rng = Rng::seeded(7);
    let mut steps = 0usize;
    for i in 0..50u64 {
        let g = random_graph(&mut rng, 20, 120, 70_000 + i);
        let start = greedy(&g, &mut Rng::seeded(i)).d_size();
        let mut last = start;
        let mut broken = None;
        let run = anneal(&g, &p, &mut Rng::seeded(i), |step| {
            steps += 1;
            let d = step.current.d_size();
            if d > last {
                broken = Some((step.iteration, last, d));
                return ControlFlow::Break(());
            }
            last = d;
            ControlFlow::Continue(())
        });
        if let Some((it, before, after)) = broken {
            return Verdict::Fail(format!(
                "graph {i}: |D| rose {before} -> {after} at iteration {it}"
            ));
        }
        if run.solution.d_size() > start {
            return Verdict::Fail(format!("graph {i}: final |D| above the greedy start"));
        }
    }
    Verdict::Pass(format!(
        "|D| never increased over {steps} observed iterations on 50 graphs"
    ))
}

fn c8_acceptance_statistics() -> Verdict {
    let trials = 10_000;
    let mut rng = Rng::seeded(8);
    let hits = (0..trials)
        .filter(|_| accept(-1, 50.0, rng.uniform()))
        .count();
    let p = (-1.0f64 / 50.0).exp();
    let freq = hits as f64 / trials as f64;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let detail = format!(
        "frequency {freq:.4} vs e^(-1/50) = {p:.4}, 3 sigma = {:.4}",
        3.0 * sigma
    );
    if (freq - p).abs() <= 3.0 * sigma {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn c9_strict_minimality() -> Verdict {
    let params = AlgoParams {
        anneal: AnnealParams {
            i_max: 500,
            ..AnnealParams::default()
        },
        genetic: GeneticParams {
            generations: 25,
            ..GeneticParams::default()
        },
        strict_minimal: true,
        solver: None,
    };
    let mut rng = Rng::seeded(9);
    let mut shrunk = 0usize;
    for i in 0..200u64 {
        let g = random_graph(&mut rng, 5, 80, 90_000 + i);
        for algo in [Algorithm::Greedy, Algorithm::Anneal, Algorithm::Genetic] {
            let out = run_algorithm(&g, algo, &params, i, None);
            let Some(t) = out.solution else {
                return Verdict::Fail(format!("graph {i} {algo}: {:?}", out.record.status));
            };
            let report = verify_tripartition(&g, &t);
            let keep: Vec<bool> = g.vertices().map(|u| t.side(u) != Side::D).collect();
            if report.complete.is_err() || report.valid.is_err() || !oracle_bipartite(&g, &keep) {
                return Verdict::Fail(format!("graph {i} {algo}: invalid"));
            }
            if !oracle_strictly_minimal(&g, &t) {
                return Verdict::Fail(format!(
                    "graph {i} {algo}: a deleted vertex can be restored"
                ));
            }
            if algo == Algorithm::Greedy && t.d_size() < greedy(&g, &mut Rng::seeded(i)).d_size() {
                shrunk += 1;
            }
        }
    }
    Verdict::Pass(format!(
        "600 refined outputs strictly minimal on 200 graphs (refinement shrank {shrunk} greedy results)"
    ))
}

fn c10_determinism() -> Verdict {
    let params = AlgoParams {
        anneal: AnnealParams {
            i_max: 1000,
            ..AnnealParams::default()
        },
        genetic: GeneticParams {
            generations: 50,
            ..GeneticParams::default()
        },
        ..AlgoParams::default()
    };
    let mut rng = Rng::seeded(10);
    let mut runs = 0;
    for i in 0..20u64 {
        let g = random_graph(&mut rng, 5, if i < 10 { 14 } else { 150 }, 100_000 + i);
        for algo in Algorithm::ALL {
            if algo == Algorithm::Sat && g.n() > 14 {
                continue;
            }
            for strict in [false, true] {
                let p = AlgoParams {
                    strict_minimal: strict,
                    ..params.clone()
                };
                let first = run_algorithm(&g, algo, &p, 7 + i, None);
                if first.record.status != RunStatus::Ok {
                    return Verdict::Fail(format!("graph {i} {algo}: {:?}", first.record.status));
                }
                for _ in 0..2 {
                    let again = run_algorithm(&g, algo, &p, 7 + i, None);
                    if again.solution != first.solution {
                        return Verdict::Fail(format!("graph {i} {algo}: runs differ"));
                    }
                }
                runs += 1;
            }
        }
    }
    Verdict::Pass(format!(
        "{runs} configurations repeated 3x with identical A, B and D"
    ))
}

fn c11_external_bridge(encodings: &[(CnfFormula, bool)]) -> Verdict {
    let Some(cfg) = SolverConfig::resolve(None, SolverMode::File) else {
        return Verdict::Skip("OCTRAV_SOLVER not set".into());
    };
    let mode = match std::env::var("OCTRAV_SOLVER_MODE").ok().as_deref() {
        Some("stream") => SolverMode::Stream,
        _ => SolverMode::File,
    };
    let cfg = SolverConfig { mode, ..cfg };
    for (i, (f, dpll_sat)) in encodings.iter().enumerate() {
        let ext = run_external_solver(f, &cfg, Some(Duration::from_secs(60)));
        let ext_sat = match ext {
            SolveOutcome::Sat(_) => true,
            SolveOutcome::Unsat => false,
            other => return Verdict::Fail(format!("encoding {i}: {other:?}")),
        };
        if ext_sat != *dpll_sat || dpll_solve(f, u64::MAX).is_sat() != ext_sat {
            return Verdict::Fail(format!(
                "encoding {i}: solver says {ext_sat}, dpll {dpll_sat}"
            ));
        }
    }
    Verdict::Pass(format!(
        "{} agree with dpll_solve on all {} encodings",
        cfg.exe.display(),
        encodings.len()
    ))
}

type Criterion<'a> = Box<dyn FnOnce(&mut Vec<(CnfFormula, bool)>) -> Verdict + 'a>;

fn main() {
    let graphs = criterion1_graphs();
    let mut encodings = Vec::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        (
            "1 oracle optimality",
            Box::new(|enc| c1_oracle_optimality(&graphs, enc)),
        ),
        ("2 encoding counts", Box::new(|_| c2_encoding_counts())),
        ("3 validity", Box::new(|_| c3_validity())),
        ("4 dominance", Box::new(|_| c4_dominance(&graphs))),
        ("5 quality ordering", Box::new(|_| c5_quality_ordering())),
        ("6 runtime ordering", Box::new(|_| c6_runtime_ordering())),
        (
            "7 hill-climbing monotonicity",
            Box::new(|_| c7_hill_climbing()),
        ),
        (
            "8 acceptance-rule statistics",
            Box::new(|_| c8_acceptance_statistics()),
        ),
        ("9 strict minimality", Box::new(|_| c9_strict_minimality())),
        ("10 determinism", Box::new(|_| c10_determinism())),
        (
            "11 external bridge",
            Box::new(|enc| c11_external_bridge(enc)),
        ),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let line = match run(&mut encodings) {
            Verdict::Pass(d) => format!("PASS  criterion {name}: {d}"),
            Verdict::Fail(d) => {
                failed += 1;
                format!("FAIL  criterion {name}: {d}")
            }
            Verdict::Skip(d) => format!("SKIP  criterion {name}: {d}"),
        };
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria met");
}
