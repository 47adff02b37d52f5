//! Composition (lexicographic) and corona products, with coordinate
//! bookkeeping so theorem checks can address slices, copies, and projections
//! without index arithmetic at call sites.
//!
//! Index layouts are fixed:
//! - composition: vertex (a, v) of G1[G2] lives at index a·n + v;
//! - corona: the m vertices of G1 come first, then copy i of G2 occupies
//!   m + i·n .. m + (i+1)·n, its j-th vertex at m + i·n + j;
//! - iterated corona materializes each level, and because corona places the
//!   previous graph's vertices first, indices from earlier levels are stable.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, DEFAULT_SIZE_CAP};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProductError {
    #[error("product would have {required} vertices, exceeding cap {cap}")]
    SizeCap { required: usize, cap: usize },
    #[error("iterated corona requires level k >= 1")]
    BadLevel,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Composition,
    Corona,
    /// Iterated corona; `level` is k.
    CoronaIter {
        level: usize,
    },
}

/// Per-vertex coordinates inside a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Coord {
    /// Composition vertex (a, v).
    Pair { a: usize, v: usize },
    /// Corona root: vertex `root` of G1 (for iterated corona, of the previous
    /// level, whose indices are unchanged).
    Root { root: usize },
    /// Corona copy vertex v_j^root.
    Copy { root: usize, j: usize },
}

/// A constructed product with its coordinate table.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    pub graph: Graph,
    pub kind: ProductKind,
    /// Order of G1 (for iterated corona: of the original G1).
    pub m: usize,
    /// Order of G2.
    pub n: usize,
    pub coords: Vec<Coord>,
}

impl ProductGraph {
    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Composition slice G2(a): all (a, v), consecutive by construction.
    pub fn slice(&self, a: usize) -> Vec<usize> {
        match self.kind {
            ProductKind::Composition => (a * self.n..(a + 1) * self.n).collect(),
            _ => panic!("slice() addresses composition products"),
        }
    }

    /// Composition fiber G1(b): all (v, b).
    pub fn fiber(&self, b: usize) -> Vec<usize> {
        match self.kind {
            ProductKind::Composition => (0..self.m).map(|a| a * self.n + b).collect(),
            _ => panic!("fiber() addresses composition products"),
        }
    }

    /// Number of corona roots (for iterated corona, roots of the last level).
    pub fn root_count(&self) -> usize {
        match self.kind {
            ProductKind::Composition => panic!("root_count() addresses corona products"),
            _ => self.graph.order() / (self.n + 1),
        }
    }

    /// Corona roots: the vertices of G1 (or of the previous level).
    pub fn roots(&self) -> Vec<usize> {
        (0..self.root_count()).collect()
    }

    /// Corona copy V_i.
    pub fn copy(&self, i: usize) -> Vec<usize> {
        let roots = self.root_count();
        (roots + i * self.n..roots + (i + 1) * self.n).collect()
    }

    /// G1-coordinate of a product vertex (root index for corona copies).
    pub fn project_g1(&self, vertex: usize) -> usize {
        match self.coords[vertex] {
            Coord::Pair { a, .. } => a,
            Coord::Root { root } => root,
            Coord::Copy { root, .. } => root,
        }
    }

    /// G2-coordinate of a product vertex, when it has one.
    pub fn project_g2(&self, vertex: usize) -> Option<usize> {
        match self.coords[vertex] {
            Coord::Pair { v, .. } => Some(v),
            Coord::Root { .. } => None,
            Coord::Copy { j, .. } => Some(j),
        }
    }

    /// JSON sidecar describing the coordinate table.
    pub fn coord_sidecar(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "coords": self.coords,
        })
    }
}

/// The composition (lexicographic) product G1[G2]: vertex set V1 × V2, with
/// (a, v) adjacent to (b, w) iff ab ∈ E(G1), or a = b and vw ∈ E(G2).
pub fn composition(g1: &Graph, g2: &Graph) -> Result<ProductGraph, ProductError> {
    composition_capped(g1, g2, DEFAULT_SIZE_CAP)
}

pub fn composition_capped(
    g1: &Graph,
    g2: &Graph,
    cap: usize,
) -> Result<ProductGraph, ProductError> {
    let (m, n) = (g1.order(), g2.order());
    let total = m * n;
    if total > cap {
        return Err(ProductError::SizeCap {
            required: total,
            cap,
        });
    }
    let mut edges = Vec::new();
    for (a, b) in g1.edges() {
        for v in 0..n {
            for w in 0..n {
                edges.push((a * n + v, b * n + w));
            }
        }
    }
    for a in 0..m {
        for (v, w) in g2.edges() {
            edges.push((a * n + v, a * n + w));
        }
    }
    let graph = Graph::from_edges_capped(total, &edges, cap)?;
    let coords = (0..total)
        .map(|x| Coord::Pair { a: x / n, v: x % n })
        .collect();
    let out = ProductGraph {
        graph,
        kind: ProductKind::Composition,
        m,
        n,
        coords,
    };
    debug_assert!(out.graph.vertices().all(|x| out.graph.degree(x)
        == g1.degree(out.project_g1(x)) * n + g2.degree(out.project_g2(x).unwrap())));
    Ok(out)
}

/// The corona product G1 ⊙ G2: one copy of G1, one copy of G2 per vertex of
/// G1, every vertex of copy i joined to the i-th vertex of G1.
pub fn corona(g1: &Graph, g2: &Graph) -> Result<ProductGraph, ProductError> {
    corona_capped(g1, g2, DEFAULT_SIZE_CAP)
}

pub fn corona_capped(g1: &Graph, g2: &Graph, cap: usize) -> Result<ProductGraph, ProductError> {
    let (m, n) = (g1.order(), g2.order());
    let total = m * (n + 1);
    if total > cap {
        return Err(ProductError::SizeCap {
            required: total,
            cap,
        });
    }
    let copy_base = |i: usize| m + i * n;
    let mut edges: Vec<(usize, usize)> = g1.edges().collect();
    for i in 0..m {
        for (v, w) in g2.edges() {
            edges.push((copy_base(i) + v, copy_base(i) + w));
        }
        for j in 0..n {
            edges.push((i, copy_base(i) + j));
        }
    }
    let graph = Graph::from_edges_capped(total, &edges, cap)?;
    debug_assert_eq!(graph.size(), g1.size() + m * g2.size() + m * n);
    let mut coords: Vec<Coord> = (0..m).map(|root| Coord::Root { root }).collect();
    for i in 0..m {
        for j in 0..n {
            coords.push(Coord::Copy { root: i, j });
        }
    }
    Ok(ProductGraph {
        graph,
        kind: ProductKind::Corona,
        m,
        n,
        coords,
    })
}

/// The iterated corona G1 ⊙^k G2 = (G1 ⊙^{k-1} G2) ⊙ G2, each level
/// materialized. The final order is m(n+1)^k.
pub fn corona_iter(g1: &Graph, g2: &Graph, k: usize) -> Result<ProductGraph, ProductError> {
    corona_iter_capped(g1, g2, k, DEFAULT_SIZE_CAP)
}

pub fn corona_iter_capped(
    g1: &Graph,
    g2: &Graph,
    k: usize,
    cap: usize,
) -> Result<ProductGraph, ProductError> {
    if k == 0 {
        return Err(ProductError::BadLevel);
    }
    let (m, n) = (g1.order(), g2.order());
    let required = (n + 1).checked_pow(k as u32).and_then(|p| p.checked_mul(m));
    match required {
        Some(total) if total <= cap => {}
        Some(total) => {
            return Err(ProductError::SizeCap {
                required: total,
                cap,
            })
        }
        None => {
            return Err(ProductError::SizeCap {
                required: usize::MAX,
                cap,
            })
        }
    }
    let mut level = corona_capped(g1, g2, cap)?;
    for _ in 1..k {
        level = corona_capped(&level.graph, g2, cap)?;
    }
    Ok(ProductGraph {
        kind: ProductKind::CoronaIter { level: k },
        m,
        ..level
    })
}
