//! Population search: fitness-weighted parent selection, breeding by union
//! of the parents' deleted sets, and the annealing move as mutation.
//!
//! Deleting a superset of a valid `D` keeps the rest bipartite, so the
//! union of two parents' `D` sets, restricted to parent one's classes, is
//! always a valid seed for [`crate::greedy::greedy_fill`].

use std::ops::ControlFlow;

use crate::annealing::neighbor_in_place;
use crate::error::InputError;
use crate::graph::{Graph, VertexId};
use crate::greedy::{fill_in_place, greedy};
use crate::partition::{Side, Tripartition};
use crate::rng::RandomSource;

/// Redraws of the second parent before falling back to a uniform pick.
const MAX_PARENT_REDRAWS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct GeneticParams {
    /// Number of generations (`g_max`).
    pub generations: usize,
    /// Individuals per generation (`i_max`), at least 2.
    pub population: usize,
    /// Mutation probability in `[0, 1]`.
    pub p_mut: f64,
}

impl Default for GeneticParams {
    fn default() -> Self {
        Self {
            generations: 1000,
            population: 20,
            p_mut: 1.0,
        }
    }
}

impl GeneticParams {
    pub fn validate(&self) -> Result<(), InputError> {
        if self.population < 2 {
            return Err(InputError::InvalidInput(format!(
                "population must be at least 2, got {}",
                self.population
            )));
        }
        if !(0.0..=1.0).contains(&self.p_mut) {
            return Err(InputError::InvalidInput(format!(
                "mutation probability must lie in [0, 1], got {}",
                self.p_mut
            )));
        }
        Ok(())
    }
}

/// A solution with its cached fitness `|D|` (smaller is fitter).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Individual {
    pub solution: Tripartition,
    pub d_size: usize,
}

impl Individual {
    pub fn new(solution: Tripartition) -> Self {
        let d_size = solution.d_size();
        Self { solution, d_size }
    }
}

/// Selection probabilities, linear in `|D|`: the fittest member weighs 10,
/// the least fit weighs 1, i.e. `w = 1 + 9 (d_max - d) / (d_max - d_min)`.
/// Uniform when all members are equally fit.
pub fn selection_distribution(pop: &[Individual]) -> Vec<f64> {
    assert!(!pop.is_empty(), "population must be nonempty");
    let dmin = pop.iter().map(|i| i.d_size).min().unwrap();
    let dmax = pop.iter().map(|i| i.d_size).max().unwrap();
    if dmin == dmax {
        return vec![1.0 / pop.len() as f64; pop.len()];
    }
    let span = (dmax - dmin) as f64;
    let weights: Vec<f64> = pop
        .iter()
        .map(|i| 1.0 + 9.0 * (dmax - i.d_size) as f64 / span)
        .collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

/// Inverse-CDF draw of one index from `probs`.
pub fn sample_index<R: RandomSource>(probs: &[f64], rng: &mut R) -> usize {
    let r = rng.uniform();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if r < acc {
            return i;
        }
    }
    // Rounding left `acc` just below 1; take the last positive entry.
    probs
        .iter()
        .rposition(|&p| p > 0.0)
        .unwrap_or(probs.len() - 1)
}

/// Two distinct indices. The second is redrawn from `probs` until it differs
/// from the first; after [`MAX_PARENT_REDRAWS`] failures it is drawn
/// uniformly among the others.
pub fn choose_parents<R: RandomSource>(probs: &[f64], rng: &mut R) -> (usize, usize) {
    assert!(probs.len() >= 2, "need two individuals to breed");
    let first = sample_index(probs, rng);
    for _ in 0..MAX_PARENT_REDRAWS {
        let second = sample_index(probs, rng);
        if second != first {
            return (first, second);
        }
    }
    let j = rng.below(probs.len() - 1);
    (first, if j >= first { j + 1 } else { j })
}

/// Child of `parent` and a second parent whose deleted set is `other_d`.
///
/// The child starts from parent one's classes minus `D1 ∪ D2`. With
/// probability `p_mut` (one draw, `r < p_mut`) the annealing neighbor move
/// is applied, otherwise a plain greedy fill.
pub fn breed<R: RandomSource>(
    g: &Graph,
    parent: &Individual,
    other_d: &[VertexId],
    p_mut: f64,
    rng: &mut R,
) -> Individual {
    let mut child = parent.solution.clone();
    for &u in other_d {
        child.set(u, Side::D);
    }
    if rng.uniform() < p_mut {
        if neighbor_in_place(g, &mut child, rng).is_err() {
            // Both parents already bipartite: nothing to mutate.
            fill_in_place(g, &mut child, rng);
        }
    } else {
        fill_in_place(g, &mut child, rng);
    }
    Individual::new(child)
}

#[derive(Debug)]
pub struct Generation<'a> {
    pub index: usize,
    pub population: &'a [Individual],
}

#[derive(Clone, Debug)]
pub struct GeneticRun {
    /// Minimum-`|D|` member of the final generation (lowest index on ties).
    pub solution: Tripartition,
    pub population: Vec<Individual>,
    /// Smallest `|D|` of any individual ever created, for diagnostics.
    pub best_seen_d: usize,
    pub generations: usize,
    pub interrupted: bool,
}

fn fittest(pop: &[Individual]) -> &Individual {
    pop.iter()
        .enumerate()
        .min_by_key(|(i, ind)| (ind.d_size, *i))
        .map(|(_, ind)| ind)
        .expect("population is nonempty")
}

/// Runs the genetic search, calling `observe` after the initial population
/// (index 0) and after every generation; `Break` stops the run.
pub fn evolve<R, F>(g: &Graph, p: &GeneticParams, rng: &mut R, mut observe: F) -> GeneticRun
where
    R: RandomSource,
    F: FnMut(&Generation<'_>) -> ControlFlow<()>,
{
    assert!(p.population >= 2, "population must be at least 2");
    let mut pop: Vec<Individual> = (0..p.population)
        .map(|_| Individual::new(greedy(g, rng)))
        .collect();
    let mut best_seen_d = fittest(&pop).d_size;
    let mut generations = 0;
    let mut interrupted = observe(&Generation {
        index: 0,
        population: &pop,
    })
    .is_break();
    if !interrupted {
        for gen in 1..=p.generations {
            let probs = selection_distribution(&pop);
            let next: Vec<Individual> = (0..p.population)
                .map(|_| {
                    let (i, j) = choose_parents(&probs, rng);
                    let other_d = pop[j].solution.deleted();
                    breed(g, &pop[i], &other_d, p.p_mut, rng)
                })
                .collect();
            pop = next;
            best_seen_d = best_seen_d.min(fittest(&pop).d_size);
            generations = gen;
            let step = Generation {
                index: gen,
                population: &pop,
            };
            if observe(&step).is_break() {
                interrupted = true;
                break;
            }
        }
    }
    GeneticRun {
        solution: fittest(&pop).solution.clone(),
        population: pop,
        best_seen_d,
        generations,
        interrupted,
    }
}

pub fn genetic<R: RandomSource>(g: &Graph, p: &GeneticParams, rng: &mut R) -> Tripartition {
    evolve(g, p, rng, |_| ControlFlow::Continue(())).solution
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::verify_tripartition;
    use crate::generate::gen_random_graph;
    use crate::greedy::tests::Scripted;
    use crate::rng::Rng;

    fn with_sizes(sizes: &[usize]) -> Vec<Individual> {
        sizes
            .iter()
            .map(|&d| Individual {
                solution: Tripartition::all_deleted(0),
                d_size: d,
            })
            .collect()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn distribution_examples() {
        let p = selection_distribution(&with_sizes(&[2, 4, 6]));
        assert!(close(&p, &[10.0 / 16.5, 5.5 / 16.5, 1.0 / 16.5]));
        let p = selection_distribution(&with_sizes(&[5, 5, 5, 5]));
        assert!(close(&p, &[0.25; 4]));
        let p = selection_distribution(&with_sizes(&[3, 8]));
        assert!(close(&p, &[10.0 / 11.0, 1.0 / 11.0]));
    }

    #[test]
    fn best_is_ten_times_worst() {
        let p = selection_distribution(&with_sizes(&[7, 3, 9, 4, 9, 3]));
        assert!((p[1] / p[2] - 10.0).abs() < 1e-12);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_matches_distribution() {
        let probs = [0.5, 0.3, 0.2];
        let mut rng = Rng::seeded(3);
        let mut counts = [0usize; 3];
        let trials = 30_000;
        for _ in 0..trials {
            counts[sample_index(&probs, &mut rng)] += 1;
        }
        for (c, p) in counts.iter().zip(probs) {
            let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
            assert!((*c as f64 - trials as f64 * p).abs() < 4.0 * sigma);
        }
    }

    #[test]
    fn parents_are_distinct_even_when_skewed() {
        let mut rng = Rng::seeded(1);
        for _ in 0..1000 {
            let (a, b) = choose_parents(&[0.999_999, 0.000_001], &mut rng);
            assert_ne!(a, b);
        }
        // Degenerate distribution forces the uniform fallback.
        let mut s = Scripted {
            uniforms: vec![0.1; 101].into(),
            picks: vec![0].into(),
            ..Default::default()
        };
        assert_eq!(choose_parents(&[1.0, 0.0, 0.0], &mut s), (0, 1));
    }

    #[test]
    fn breed_same_parent_without_mutation_never_grows() {
        for seed in 0..50 {
            let g = gen_random_graph(30, 90, seed).unwrap();
            let mut rng = Rng::seeded(seed);
            let p = Individual::new(greedy(&g, &mut rng));
            let child = breed(&g, &p, &p.solution.deleted(), 0.0, &mut rng);
            assert!(child.d_size <= p.d_size);
            assert!(verify_tripartition(&g, &child.solution).all_ok());
        }
    }

    #[test]
    fn breed_on_triangle() {
        let g = Graph::complete(3);
        let a = Individual::new(Tripartition::from_sets(3, &[0], &[1], &[2]));
        let b = Individual::new(Tripartition::from_sets(3, &[2], &[1], &[0]));
        for seed in 0..30 {
            for p_mut in [0.0, 0.5, 1.0] {
                let c = breed(&g, &a, &b.solution.deleted(), p_mut, &mut Rng::seeded(seed));
                assert_eq!(c.d_size, 1);
            }
        }
    }

    #[test]
    fn breed_disjoint_parents_on_c4() {
        let g = Graph::cycle(4);
        let a = Individual::new(Tripartition::from_sets(4, &[1, 3], &[2], &[0]));
        for seed in 0..20 {
            let c = breed(&g, &a, &[2], 0.0, &mut Rng::seeded(seed));
            assert_eq!(c.d_size, 0);
        }
    }

    #[test]
    fn breed_bipartite_parents_with_mutation() {
        let g = Graph::path(4);
        let a = Individual::new(Tripartition::from_sets(4, &[0, 2], &[1, 3], &[]));
        let c = breed(&g, &a, &[], 1.0, &mut Rng::seeded(0));
        assert_eq!(c.d_size, 0);
    }

    #[test]
    fn triangle_and_trees() {
        let p = GeneticParams {
            generations: 20,
            population: 4,
            p_mut: 1.0,
        };
        for seed in 0..10 {
            let t = genetic(&Graph::complete(3), &p, &mut Rng::seeded(seed));
            assert_eq!(t.d_size(), 1);
            let tree = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
            assert_eq!(genetic(&tree, &p, &mut Rng::seeded(seed)).d_size(), 0);
        }
    }

    #[test]
    fn all_individuals_valid_and_deterministic() {
        let g = gen_random_graph(40, 160, 2).unwrap();
        let p = GeneticParams {
            generations: 30,
            population: 8,
            p_mut: 0.7,
        };
        let run = |seed| {
            evolve(&g, &p, &mut Rng::seeded(seed), |gen| {
                for ind in gen.population {
                    assert!(verify_tripartition(&g, &ind.solution).all_ok());
                    assert_eq!(ind.d_size, ind.solution.d_size());
                }
                ControlFlow::Continue(())
            })
        };
        let a = run(5);
        let b = run(5);
        assert_eq!(a.population, b.population);
        assert_eq!(a.solution, b.solution);
        assert!(a.best_seen_d <= a.solution.d_size());
        assert_eq!(a.generations, 30);
    }

    #[test]
    fn identical_population_without_mutation_is_monotone() {
        for seed in 0..30 {
            let g = gen_random_graph(50, 200, seed).unwrap();
            let mut rng = Rng::seeded(seed);
            let start = Individual::new(greedy(&g, &mut rng));
            let pop = vec![start.clone(); 6];
            let probs = selection_distribution(&pop);
            for _ in 0..pop.len() {
                let (i, j) = choose_parents(&probs, &mut rng);
                let child = breed(&g, &pop[i], &pop[j].solution.deleted(), 0.0, &mut rng);
                assert!(child.d_size <= start.d_size);
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(GeneticParams::default().validate().is_ok());
        let bad = GeneticParams {
            population: 1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = GeneticParams {
            p_mut: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
