use octrav::bipartite::{two_color_all, verify_tripartition, TwoColoring};
use octrav::generate::{gen_random_graph, max_edges};
use octrav::{Graph, RandomSource, Rng, Side, Tripartition};

/// Bipartite iff some 2-coloring of all vertices has no monochromatic edge.
fn brute_bipartite(g: &Graph) -> bool {
    let n = g.n();
    (0u32..1 << n).any(|mask| g.edges().all(|(u, v)| (mask >> u & 1) != (mask >> v & 1)))
}

fn random_small(rng: &mut Rng, seed: u64) -> Graph {
    let n = 1 + rng.below(12);
    let m = rng.below(max_edges(n).min(2 * n) + 1);
    gen_random_graph(n, m, seed).unwrap()
}

#[test]
fn two_coloring_matches_exhaustive_search() {
    let mut rng = Rng::seeded(77);
    let mut bipartite = 0;
    for seed in 0..200 {
        let g = random_small(&mut rng, seed);
        let expected = brute_bipartite(&g);
        let got = two_color_all(&g);
        assert_eq!(got.is_bipartite(), expected, "seed {seed}: {g:?}");
        bipartite += usize::from(expected);
        match got {
            TwoColoring::Coloring(_) => {
                let t = got.into_tripartition().unwrap();
                assert!(verify_tripartition(&g, &t).all_ok());
            }
            TwoColoring::OddCycle(w) => {
                assert!(w.len() % 2 == 1 && w.len() >= 3, "seed {seed}: {w:?}");
                for i in 0..w.len() {
                    assert!(g.has_edge(w[i], w[(i + 1) % w.len()]), "seed {seed}: {w:?}");
                }
                let distinct: std::collections::HashSet<_> = w.iter().collect();
                assert_eq!(distinct.len(), w.len(), "witness repeats a vertex");
            }
        }
    }
    assert!(
        bipartite > 20 && bipartite < 180,
        "sample too lopsided: {bipartite}"
    );
}

#[test]
fn validity_agrees_with_two_coloring_of_the_rest() {
    // A random split into A, B, D is valid iff no edge lies inside A or B;
    // compare with an independent edge scan.
    let mut rng = Rng::seeded(5);
    for seed in 0..300 {
        let g = random_small(&mut rng, 1000 + seed);
        let sides: Vec<Side> = (0..g.n())
            .map(|_| [Side::A, Side::B, Side::D][rng.below(3)])
            .collect();
        let t = Tripartition::from_sides(sides.clone());
        let independent = g
            .edges()
            .all(|(u, v)| sides[u] == Side::D || sides[u] != sides[v]);
        assert_eq!(verify_tripartition(&g, &t).valid.is_ok(), independent);
        if independent {
            let rest = octrav::bipartite::two_color(&g, |u| sides[u] != Side::D);
            assert!(rest.is_bipartite());
        }
    }
}

#[test]
fn named_graphs() {
    for (g, bip) in [
        (Graph::complete(3), false),
        (Graph::cycle(5), false),
        (Graph::cycle(6), true),
        (Graph::complete_bipartite(3, 3), true),
        (Graph::petersen(), false),
        (Graph::path(7), true),
        (Graph::empty(0), true),
    ] {
        assert_eq!(two_color_all(&g).is_bipartite(), bip);
        assert_eq!(brute_bipartite(&g), bip);
    }
}
