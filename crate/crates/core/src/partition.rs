use std::fmt;

use crate::graph::{Graph, VertexId};

/// Which set of a [`Tripartition`] a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
    D,
    Unassigned,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Side::A => "A",
            Side::B => "B",
            Side::D => "D",
            Side::Unassigned => "-",
        };
        f.write_str(s)
    }
}

/// Disjoint vertex sets `A`, `B` (the two bipartition classes) and `D` (the
/// deleted vertices), stored as one membership entry per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tripartition {
    sides: Vec<Side>,
    counts: [usize; 4],
}

impl Tripartition {
    /// Every vertex in `D`: the starting point of the greedy algorithm.
    pub fn all_deleted(n: usize) -> Self {
        Self {
            sides: vec![Side::D; n],
            counts: [0, 0, n, 0],
        }
    }

    pub fn unassigned(n: usize) -> Self {
        Self {
            sides: vec![Side::Unassigned; n],
            counts: [0, 0, 0, n],
        }
    }

    pub fn from_sides(sides: Vec<Side>) -> Self {
        let mut counts = [0; 4];
        for &s in &sides {
            counts[s as usize] += 1;
        }
        Self { sides, counts }
    }

    /// Builds a partition from explicit member lists. Vertices not listed
    /// stay unassigned; a vertex listed twice keeps its last side.
    pub fn from_sets(n: usize, a: &[VertexId], b: &[VertexId], d: &[VertexId]) -> Self {
        let mut t = Self::unassigned(n);
        for (set, side) in [(a, Side::A), (b, Side::B), (d, Side::D)] {
            for &u in set {
                t.set(u, side);
            }
        }
        t
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.sides.len()
    }

    #[inline]
    pub fn side(&self, u: VertexId) -> Side {
        self.sides[u]
    }

    #[inline]
    pub fn set(&mut self, u: VertexId, side: Side) {
        let old = std::mem::replace(&mut self.sides[u], side);
        self.counts[old as usize] -= 1;
        self.counts[side as usize] += 1;
    }

    #[inline]
    pub fn count(&self, side: Side) -> usize {
        self.counts[side as usize]
    }

    /// `|D|`, the objective every algorithm minimizes.
    #[inline]
    pub fn d_size(&self) -> usize {
        self.count(Side::D)
    }

    pub fn is_complete(&self) -> bool {
        self.count(Side::Unassigned) == 0
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// Members of `side` in ascending id order.
    pub fn members(&self, side: Side) -> Vec<VertexId> {
        self.sides
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == side)
            .map(|(u, _)| u)
            .collect()
    }

    pub fn deleted(&self) -> Vec<VertexId> {
        self.members(Side::D)
    }

    /// Swaps the roles of `A` and `B`.
    pub fn swap_classes(&mut self) {
        for s in &mut self.sides {
            *s = match *s {
                Side::A => Side::B,
                Side::B => Side::A,
                other => other,
            };
        }
        self.counts.swap(Side::A as usize, Side::B as usize);
    }

    /// Renders `A: ..`, `B: ..`, `D: ..` lines using the graph's labels.
    pub fn to_labeled_lines(&self, g: &Graph) -> String {
        let mut out = String::new();
        for side in [Side::A, Side::B, Side::D] {
            let labels: Vec<_> = self
                .members(side)
                .into_iter()
                .map(|u| g.label(u).into_owned())
                .collect();
            out.push_str(&format!("{side}: {}\n", labels.join(" ")).replace(": \n", ":\n"));
        }
        out
    }
}

/// Reads the `A: ..`, `B: ..`, `D: ..` line format written by
/// [`Tripartition::to_labeled_lines`]. Vertices not mentioned stay
/// unassigned. Unknown labels, vertices listed twice and other line
/// prefixes are errors.
pub fn parse_labeled_lines(g: &Graph, text: &str) -> Result<Tripartition, String> {
    let index = g.label_index();
    let mut t = Tripartition::unassigned(g.n());
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected `A:`, `B:` or `D:`", no + 1))?;
        let side = match head.trim() {
            "A" => Side::A,
            "B" => Side::B,
            "D" => Side::D,
            other => return Err(format!("line {}: unknown set `{other}`", no + 1)),
        };
        for label in rest.split_whitespace() {
            let u = *index
                .get(label)
                .ok_or_else(|| format!("line {}: unknown vertex `{label}`", no + 1))?;
            if t.side(u) != Side::Unassigned {
                return Err(format!("vertex `{label}` listed more than once"));
            }
            t.set(u, side);
        }
    }
    Ok(t)
}

impl fmt::Debug for Tripartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tripartition")
            .field("a", &self.members(Side::A))
            .field("b", &self.members(Side::B))
            .field("d", &self.members(Side::D))
            .finish()
    }
}
