//! Breadth-first two-coloring, odd-cycle witnesses, and checks on
//! tripartitions produced by the solvers.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::{Graph, VertexId};
use crate::partition::{Side, Tripartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Zero,
    One,
}

impl Color {
    #[inline]
    fn flip(self) -> Self {
        match self {
            Color::Zero => Color::One,
            Color::One => Color::Zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColoring {
    /// Proper coloring of the active vertices; inactive ones are `None`.
    Coloring(Vec<Option<Color>>),
    /// An odd cycle inside the active subgraph. Consecutive entries are
    /// adjacent, and so are the last and the first.
    OddCycle(Vec<VertexId>),
}

impl TwoColoring {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, TwoColoring::Coloring(_))
    }

    /// Converts a coloring into `A` (color zero), `B` (color one) and `D`
    /// (inactive vertices).
    pub fn into_tripartition(self) -> Option<Tripartition> {
        match self {
            TwoColoring::Coloring(colors) => Some(Tripartition::from_sides(
                colors
                    .into_iter()
                    .map(|c| match c {
                        Some(Color::Zero) => Side::A,
                        Some(Color::One) => Side::B,
                        None => Side::D,
                    })
                    .collect(),
            )),
            TwoColoring::OddCycle(_) => None,
        }
    }
}

/// Two-colors the subgraph induced by `active`, one BFS per component,
/// starting components at the smallest uncolored id. O(n + m).
pub fn two_color<F>(g: &Graph, active: F) -> TwoColoring
where
    F: Fn(VertexId) -> bool,
{
    let n = g.n();
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if color[root].is_some() || !active(root) {
            continue;
        }
        color[root] = Some(Color::Zero);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for &v in g.neighbors(u) {
                if !active(v) {
                    continue;
                }
                match color[v] {
                    None => {
                        color[v] = Some(cu.flip());
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => {
                        return TwoColoring::OddCycle(tree_cycle(&parent, &depth, u, v));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    TwoColoring::Coloring(color)
}

/// Two-colors the whole graph.
pub fn two_color_all(g: &Graph) -> TwoColoring {
    two_color(g, |_| true)
}

/// Closes the BFS tree paths from `u` and `v` to their common ancestor with
/// the edge `{u, v}`. Equal colors mean equal depth parity, so the cycle is odd.
fn tree_cycle(parent: &[usize], depth: &[usize], u: VertexId, v: VertexId) -> Vec<VertexId> {
    let mut up = vec![u];
    let mut vp = vec![v];
    let (mut a, mut b) = (u, v);
    while depth[a] > depth[b] {
        a = parent[a];
        up.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        vp.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up.push(a);
        vp.push(b);
    }
    // `up` ends at the ancestor; `vp` ends there too.
    vp.pop();
    up.extend(vp.into_iter().rev());
    up
}

/// A single failed check, pointing at the first offending vertex or edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Unassigned(VertexId),
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    MonochromaticEdge {
        u: VertexId,
        v: VertexId,
        side: Side,
    },
    MissingNeighbor {
        vertex: VertexId,
        class: Side,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unassigned(u) => write!(f, "vertex {u} is unassigned"),
            Violation::LengthMismatch { expected, found } => {
                write!(f, "partition covers {found} vertices, graph has {expected}")
            }
            Violation::MonochromaticEdge { u, v, side } => {
                write!(f, "edge {u}-{v} lies inside {side}")
            }
            Violation::MissingNeighbor { vertex, class } => {
                write!(f, "deleted vertex {vertex} has no neighbor in {class}")
            }
        }
    }
}

/// Outcome of [`verify_tripartition`]; each check is independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub complete: Result<(), Violation>,
    pub valid: Result<(), Violation>,
    /// Every deleted vertex has a neighbor in `A` and one in `B`.
    pub certificate: Result<(), Violation>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.complete.is_ok() && self.valid.is_ok() && self.certificate.is_ok()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        [&self.complete, &self.valid, &self.certificate]
            .into_iter()
            .find_map(|r| r.as_ref().err())
    }
}

pub fn verify_tripartition(g: &Graph, t: &Tripartition) -> VerificationReport {
    if t.n() != g.n() {
        let err = Err(Violation::LengthMismatch {
            expected: g.n(),
            found: t.n(),
        });
        return VerificationReport {
            complete: err.clone(),
            valid: err.clone(),
            certificate: err,
        };
    }
    let complete = match g.vertices().find(|&u| t.side(u) == Side::Unassigned) {
        Some(u) => Err(Violation::Unassigned(u)),
        None => Ok(()),
    };
    let valid = match g.edges().find(|&(u, v)| {
        let s = t.side(u);
        s == t.side(v) && matches!(s, Side::A | Side::B)
    }) {
        Some((u, v)) => Err(Violation::MonochromaticEdge {
            u,
            v,
            side: t.side(u),
        }),
        None => Ok(()),
    };
    let mut certificate = Ok(());
    for u in g.vertices().filter(|&u| t.side(u) == Side::D) {
        let has = |class| g.neighbors(u).iter().any(|&v| t.side(v) == class);
        if let Some(class) = [Side::A, Side::B].into_iter().find(|&c| !has(c)) {
            certificate = Err(Violation::MissingNeighbor { vertex: u, class });
            break;
        }
    }
    VerificationReport {
        complete,
        valid,
        certificate,
    }
}

/// `Ok` when re-adding any single deleted vertex breaks bipartiteness,
/// otherwise the first deleted vertex (ascending id) that could be kept.
/// O(|D| (n + m)).
pub fn check_strictly_minimal(g: &Graph, t: &Tripartition) -> Result<(), VertexId> {
    for u in t.deleted() {
        if two_color(g, |v| v == u || t.side(v) != Side::D).is_bipartite() {
            return Err(u);
        }
    }
    Ok(())
}

pub fn is_strictly_minimal(g: &Graph, t: &Tripartition) -> bool {
    check_strictly_minimal(g, t).is_ok()
}
