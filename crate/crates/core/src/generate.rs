//! Uniform random graphs with a fixed number of edges, G(n, m).

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{Graph, GraphBuilder};

/// Number of unordered vertex pairs on `n` vertices.
pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Maps a pair rank in `0..max_edges(n)` to the pair `(u, v)`, `u < v`,
/// ranking row by row: (0,1), (0,2), .., (0,n-1), (1,2), ..
#[cfg(test)]
fn unrank_pair(n: usize, mut r: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if r < row {
            return (u, u + 1 + r);
        }
        r -= row;
        u += 1;
    }
}

/// Samples `m` distinct edges uniformly without replacement. The same
/// `(n, m, seed)` always yields the same graph.
pub fn gen_random_graph(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    let max = max_edges(n);
    if m > max {
        return Err(GraphError::TooManyEdges { m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = index::sample(&mut rng, max.max(1), m).into_vec();
    ranks.sort_unstable();
    // Row-wise unranking of sorted ranks walks the rows once.
    let mut b = GraphBuilder::new(n);
    let (mut u, mut row_start) = (0usize, 0usize);
    for r in ranks {
        while r >= row_start + (n - 1 - u) {
            row_start += n - 1 - u;
            u += 1;
        }
        b.add_edge(u, u + 1 + (r - row_start))
            .expect("ranks map to distinct valid pairs");
    }
    Ok(b.build())
}
