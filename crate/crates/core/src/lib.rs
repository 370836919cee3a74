//! Vertex deletion to bipartite graphs.
//!
//! Given a graph `G = (V, E)`, find a set `D` of vertices such that
//! `G[V \ D]` is bipartite, keeping `D` small. The crate offers:
//!
//! * an exact search ([`sat::minimum_deletion_search`]) that encodes
//!   "deleting at most `k` vertices suffices" as CNF with a sequential-counter
//!   cardinality constraint and drives a SAT solver over `k`;
//! * three heuristics built on one greedy routine: [`greedy::greedy`],
//!   [`annealing::simulated_annealing`] and [`genetic::genetic`];
//! * graph readers for edge lists, DIMACS and GML, a G(n, m) generator,
//!   and a benchmark harness with CSV output ([`harness`]).
//!
//! Solutions are [`Tripartition`]s: two independent sets `A`, `B` and the
//! deleted set `D`.
//!
//! ```
//! use octrav::{greedy::greedy, Graph, Rng, bipartite::verify_tripartition};
//!
//! let g = Graph::petersen();
//! let t = greedy(&g, &mut Rng::seeded(7));
//! assert!(verify_tripartition(&g, &t).all_ok());
//! assert!(t.d_size() >= 3);
//! ```

pub mod annealing;
pub mod bipartite;
pub mod cli;
pub mod error;
pub mod formats;
pub mod generate;
pub mod genetic;
pub mod graph;
pub mod greedy;
pub mod harness;
pub mod partition;
pub mod rng;
pub mod sat;

pub use error::{GraphError, InputError, ParseError, SatError};
pub use graph::{Graph, GraphBuilder, VertexId};
pub use partition::{Side, Tripartition};
pub use rng::{RandomSource, Rng};
