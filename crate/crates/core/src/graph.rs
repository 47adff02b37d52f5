//! Simple undirected graphs on dense vertex indices, plus the handful of
//! constructions (families, induced subgraphs, disjoint unions, apex joins)
//! that the rest of the toolkit builds on.
//!
//! Adjacency is stored as fixed-width bit rows, so edge tests and the
//! neighbor-count signatures used by partition refinement are word operations.

use std::fmt;

use thiserror::Error;

/// Default upper bound on vertex counts accepted by constructors.
///
/// Everything in this toolkit is designed for desk-scale graphs; the cap keeps
/// bit rows and n×n distance tables trivially affordable and turns accidental
/// huge inputs into errors instead of memory blowups.
pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex count {n} exceeds size cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("edge ({u}, {v}) out of range for {n} vertices")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("loop edge ({v}, {v}) rejected")]
    LoopEdge { v: usize },
    #[error("cycle requires at least 3 vertices, got {n}")]
    CycleTooShort { n: usize },
    #[error("induced subgraph requires a nonempty vertex set")]
    EmptyVertexSet,
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("disjoint union requires at least one part")]
    NoParts,
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Invariants: the adjacency relation is symmetric and irreflexive, and
/// `1 <= n <= cap`. All constructors enforce them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n,
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl Graph {
    fn blank(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    /// Build a graph from an edge list. Duplicate pairs collapse; each pair is
    /// symmetrized. Rejects loops and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_edges_capped(n, edges, DEFAULT_SIZE_CAP)
    }

    /// Same as [`Graph::from_edges`] with an explicit size cap.
    pub fn from_edges_capped(
        n: usize,
        edges: &[(usize, usize)],
        cap: usize,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > cap {
            return Err(GraphError::TooLarge { n, cap });
        }
        let mut g = Self::blank(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { v });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// True iff `uv` is an edge.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// The bit row of `v`: word `i` holds adjacency bits for vertices `64i..64i+63`.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Number of neighbors of `v` inside the set described by `mask`
    /// (same word layout as a bit row).
    #[inline]
    pub(crate) fn degree_into(&self, v: usize, mask: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(mask)
            .map(|(r, m)| (r & m).count_ones() as usize)
            .sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Maximum degree.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Open neighborhood of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Closed neighborhood of `v`, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.neighbors(v).collect();
        let pos = out.partition_point(|&u| u < v);
        out.insert(pos, v);
        out
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// All edges as pairs (u, v) with u < v, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Checks the representation invariants (symmetry, no loops). Intended for
    /// tests; constructors cannot produce a graph that fails this.
    pub fn validate(&self) -> Result<(), GraphError> {
        for v in 0..self.n {
            if self.has_edge(v, v) {
                return Err(GraphError::LoopEdge { v });
            }
            for u in 0..v {
                if self.has_edge(u, v) != self.has_edge(v, u) {
                    return Err(GraphError::EdgeOutOfRange { u, v, n: self.n });
                }
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.n
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut queue = vec![start];
        seen[start] = true;
        let mut out = vec![start];
        while let Some(v) = queue.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    out.push(u);
                    queue.push(u);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components as sorted vertex sets, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let comp = self.component_of(s);
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `sel` (deduplicated, sorted ascending), together
    /// with the map from new indices to old ones.
    pub fn induced_subgraph(&self, sel: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut map: Vec<usize> = sel.to_vec();
        map.sort_unstable();
        map.dedup();
        if map.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        if let Some(&v) = map.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        let mut g = Self::blank(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok((g, map))
    }

    /// Adds one apex vertex (index `n`) adjacent to every existing vertex.
    /// This is the join G + K1.
    pub fn join_with_apex(&self) -> Graph {
        let mut g = Self::blank(self.n + 1);
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for v in 0..self.n {
            g.set_edge(v, self.n);
        }
        g
    }

    /// Relabels the graph: vertex `v` of `self` becomes `perm[v]`.
    /// `perm` must be a bijection on `0..n`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Self::blank(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }
}

/// Standard graph families used as fixtures throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Empty,
}

/// The standard member of `family` on `n` vertices, in canonical vertex
/// order: paths and cycles are consecutive, the star center is vertex 0.
pub fn named_family(family: Family, n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let edges: Vec<(usize, usize)> = match family {
        Family::Path => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        Family::Cycle => {
            if n < 3 {
                return Err(GraphError::CycleTooShort { n });
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Family::Star => (1..n).map(|v| (0, v)).collect(),
        Family::Empty => Vec::new(),
    };
    Graph::from_edges(n, &edges)
}

/// Block-diagonal union of the parts. Returns the graph together with the
/// offset table: part `i` occupies indices `offsets[i]..offsets[i+1]`.
pub fn disjoint_union(parts: &[Graph]) -> Result<(Graph, Vec<usize>), GraphError> {
    if parts.is_empty() {
        return Err(GraphError::NoParts);
    }
    let mut offsets = Vec::with_capacity(parts.len() + 1);
    let mut total = 0usize;
    for p in parts {
        offsets.push(total);
        total += p.order();
    }
    offsets.push(total);
    if total > DEFAULT_SIZE_CAP {
        return Err(GraphError::TooLarge {
            n: total,
            cap: DEFAULT_SIZE_CAP,
        });
    }
    let mut g = Graph::blank(total);
    for (i, p) in parts.iter().enumerate() {
        for (u, v) in p.edges() {
            g.set_edge(offsets[i] + u, offsets[i] + v);
        }
    }
    Ok((g, offsets))
}

/// Distance value: a hop count, or unreachable. Cross-component distances are
/// this explicit sentinel, never a large stand-in integer, so distance-formula
/// checks cannot silently pass on disconnected inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Finite(u32),
    Infinite,
}

impl Dist {
    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    /// min{self, bound} with the sentinel treated as larger than everything.
    pub fn min_with(self, bound: u32) -> Dist {
        match self {
            Dist::Finite(d) if d <= bound => Dist::Finite(d),
            _ => Dist::Finite(bound),
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => write!(f, "inf"),
        }
    }
}

const UNREACHED: u32 = u32::MAX;

/// All-pairs shortest-path hop counts (BFS per source).
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>, // UNREACHED encodes Dist::Infinite; never exposed raw
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Dist {
        match self.d[u * self.n + v] {
            UNREACHED => Dist::Infinite,
            d => Dist::Finite(d),
        }
    }

    /// Eccentricity of `v`: the largest distance from `v`.
    pub fn eccentricity(&self, v: usize) -> Dist {
        (0..self.n).map(|u| self.get(v, u)).max().unwrap()
    }

    /// The i-th distance neighborhood N_i(v), ascending.
    pub fn distance_neighborhood(&self, v: usize, i: u32) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| self.get(v, u) == Dist::Finite(i))
            .collect()
    }
}

/// Breadth-first hop counts between all vertex pairs.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut d = vec![UNREACHED; n * n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let dv = row[v];
            for u in g.neighbors(v) {
                if row[u] == UNREACHED {
                    row[u] = dv + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_builds_k3() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.size(), 3);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(g.has_edge(u, v), u != v);
            }
        }
        g.validate().unwrap();
    }

    #[test]
    fn from_edges_empty_and_path() {
        let e2 = Graph::from_edges(2, &[]).unwrap();
        assert_eq!(e2.size(), 0);
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.degree_sequence(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn from_edges_collapses_duplicates_and_symmetrizes() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::EdgeOutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::LoopEdge { v: 1 })
        );
        assert_eq!(Graph::from_edges(0, &[]), Err(GraphError::Empty));
        assert!(matches!(
            Graph::from_edges_capped(10, &[], 5),
            Err(GraphError::TooLarge { n: 10, cap: 5 })
        ));
    }

    #[test]
    fn named_families() {
        assert_eq!(named_family(Family::Complete, 4).unwrap().size(), 6);
        let star = named_family(Family::Star, 4).unwrap();
        assert_eq!(star.degree_sequence(), vec![3, 1, 1, 1]);
        assert_eq!(star.max_degree(), 3);
        let c5 = named_family(Family::Cycle, 5).unwrap();
        assert!(c5.degree_sequence().iter().all(|&d| d == 2));
        assert_eq!(
            named_family(Family::Cycle, 2),
            Err(GraphError::CycleTooShort { n: 2 })
        );
        assert_eq!(named_family(Family::Path, 1).unwrap().size(), 0);
    }

    #[test]
    fn distances_on_path_and_cycle() {
        let p4 = named_family(Family::Path, 4).unwrap();
        let d = all_pairs_distances(&p4);
        assert_eq!(d.get(0, 3), Dist::Finite(3));
        assert_eq!(d.get(0, 0), Dist::Finite(0));

        let c6 = named_family(Family::Cycle, 6).unwrap();
        let d = all_pairs_distances(&c6);
        assert_eq!(d.get(0, 3), Dist::Finite(3));
        assert_eq!(d.eccentricity(0), Dist::Finite(3));
        assert_eq!(d.distance_neighborhood(0, 1), vec![1, 5]);
    }

    #[test]
    fn distances_across_components_are_infinite() {
        let k2 = named_family(Family::Complete, 2).unwrap();
        let (g, _) = disjoint_union(&[k2.clone(), k2]).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d.get(0, 2), Dist::Infinite);
        assert_eq!(d.get(0, 1), Dist::Finite(1));
        assert_eq!(d.eccentricity(0), Dist::Infinite);
    }

    #[test]
    fn distance_one_iff_edge() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4), (1, 4)]).unwrap();
        let d = all_pairs_distances(&g);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(d.get(u, v) == Dist::Finite(1), g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn components_examples() {
        let k3 = named_family(Family::Complete, 3).unwrap();
        assert_eq!(k3.components(), vec![vec![0, 1, 2]]);

        let e3 = named_family(Family::Empty, 3).unwrap();
        assert_eq!(e3.components(), vec![vec![0], vec![1], vec![2]]);

        let p2 = named_family(Family::Path, 2).unwrap();
        let p3 = named_family(Family::Path, 3).unwrap();
        let (g, offsets) = disjoint_union(&[p2, p3]).unwrap();
        assert_eq!(offsets, vec![0, 2, 5]);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn union_component_counts_add_up() {
        let parts = [
            named_family(Family::Empty, 3).unwrap(),
            named_family(Family::Cycle, 4).unwrap(),
            named_family(Family::Path, 2).unwrap(),
        ];
        let expected: usize = parts.iter().map(|p| p.components().len()).sum();
        let (g, _) = disjoint_union(&parts).unwrap();
        assert_eq!(g.components().len(), expected);
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = named_family(Family::Complete, 4).unwrap();
        let (g, map) = k4.induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(g.size(), 3);
        assert_eq!(map, vec![0, 2, 3]);

        let p4 = named_family(Family::Path, 4).unwrap();
        let (g, _) = p4.induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(g.size(), 0);

        let c5 = named_family(Family::Cycle, 5).unwrap();
        let (g, _) = c5.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(g.degree_sequence(), vec![1, 2, 1]);

        assert_eq!(k4.induced_subgraph(&[]), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn disjoint_union_examples() {
        let k2 = named_family(Family::Complete, 2).unwrap();
        let (g, _) = disjoint_union(&[k2.clone(), k2]).unwrap();
        assert_eq!((g.order(), g.size()), (4, 2));
        assert_eq!(g.components().len(), 2);

        let p3 = named_family(Family::Path, 3).unwrap();
        let (g, _) = disjoint_union(std::slice::from_ref(&p3)).unwrap();
        assert_eq!(g, p3);

        let k1 = named_family(Family::Complete, 1).unwrap();
        let k3 = named_family(Family::Complete, 3).unwrap();
        let (g, _) = disjoint_union(&[k1, k3]).unwrap();
        assert_eq!(g.degree_sequence(), vec![0, 2, 2, 2]);

        assert_eq!(disjoint_union(&[]), Err(GraphError::NoParts));
    }

    #[test]
    fn apex_join_examples() {
        let k3 = named_family(Family::Complete, 3).unwrap();
        let k4 = k3.join_with_apex();
        assert_eq!((k4.order(), k4.size()), (4, 6));

        let e3 = named_family(Family::Empty, 3).unwrap();
        let star = e3.join_with_apex();
        assert_eq!(star.degree(3), 3);
        assert!(star.neighbors(3).eq(0..3));

        let p3 = named_family(Family::Path, 3).unwrap();
        let fan = p3.join_with_apex();
        assert_eq!(fan.degree(3), 3);
        // every non-apex degree grew by exactly one
        for v in 0..3 {
            assert_eq!(fan.degree(v), p3.degree(v) + 1);
        }
    }
}
