//! Desk-scale corpora: exhaustive small-graph enumerations up to isomorphism,
//! deterministic random samples, and a couple of pinned fixtures.

use std::collections::HashSet;

use crate::aut::canonical_form;
use crate::graph::Graph;
use crate::io::parse_graph6;

/// Orders for which the exhaustive labeled enumeration (2^C(n,2) graphs) is
/// reasonable to sweep.
pub const MAX_ENUMERATION_ORDER: usize = 6;

/// All labeled graphs on `n` vertices, in mask order.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (1..=MAX_ENUMERATION_ORDER).contains(&n),
        "labeled enumeration supports 1..={MAX_ENUMERATION_ORDER}"
    );
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// All graphs on exactly `n` vertices up to isomorphism, deduplicated by
/// canonical form and ordered by (edge count, canonical bytes).
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out: Vec<(usize, Vec<u8>, Graph)> = Vec::new();
    for g in all_labeled_graphs(n) {
        let key = canonical_form(&g);
        if seen.insert(key.clone()) {
            out.push((g.size(), key, g));
        }
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, g)| g).collect()
}

/// All graphs on `1..=n` vertices up to isomorphism, smaller orders first.
pub fn graphs_up_to_order(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(graphs_up_to_iso).collect()
}

/// Connected graphs on `1..=n` vertices up to isomorphism.
pub fn connected_graphs_up_to_order(n: usize) -> Vec<Graph> {
    graphs_up_to_order(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}

/// SplitMix64: a tiny deterministic generator so corpora are reproducible
/// byte-for-byte regardless of external crate versions.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// `count` random labeled graphs on `n` vertices with edge probability 1/2.
pub fn random_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = SplitMix64::new(seed);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0..count)
        .map(|_| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .copied()
                .filter(|_| rng.next_u64() & 1 == 1)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// A 6-vertex graph with trivial automorphism group (no smaller nontrivial
/// graph is asymmetric). Verified against brute force in tests.
pub fn asymmetric6() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (0, 5)]).unwrap()
}

/// A 7-vertex asymmetric graph: [`asymmetric6`] with a pendant hung off
/// vertex 1. Verified against brute force in tests.
pub fn asymmetric7() -> Graph {
    Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (0, 5), (1, 6)]).unwrap()
}

/// Parses a multi-line graph6 corpus; errors carry the 1-based line number.
pub fn parse_graph6_corpus(text: &[u8]) -> Result<Vec<Graph>, (usize, String)> {
    let mut out = Vec::new();
    for (idx, line) in text.split(|&b| b == b'\n').enumerate() {
        let line: &[u8] = match line {
            [rest @ .., b'\r'] => rest,
            l => l,
        };
        if line.is_empty() {
            continue;
        }
        match parse_graph6(line) {
            Ok(g) => out.push(g),
            Err(e) => return Err((idx + 1, e.to_string())),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn iso_class_counts_match_oeis() {
        // numbers of graphs on n nodes: 1, 2, 4, 11, 34
        assert_eq!(graphs_up_to_iso(1).len(), 1);
        assert_eq!(graphs_up_to_iso(2).len(), 2);
        assert_eq!(graphs_up_to_iso(3).len(), 4);
        assert_eq!(graphs_up_to_iso(4).len(), 11);
        assert_eq!(graphs_up_to_iso(5).len(), 34);
    }

    #[test]
    fn connected_class_counts() {
        // connected graphs on n nodes: 1, 1, 2, 6, 21
        let by_order: Vec<usize> = (1..=5)
            .map(|n| {
                graphs_up_to_iso(n)
                    .into_iter()
                    .filter(Graph::is_connected)
                    .count()
            })
            .collect();
        assert_eq!(by_order, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn fixtures_are_asymmetric_by_brute_force() {
        assert!(oracle::is_asymmetric_brute(&asymmetric6()));
        assert!(oracle::is_asymmetric_brute(&asymmetric7()));
        assert!(!oracle::is_isomorphic_brute(
            &asymmetric6().join_with_apex(),
            &asymmetric7()
        ));
    }

    #[test]
    fn random_graphs_are_seed_deterministic() {
        let a = random_graphs(6, 10, 42);
        let b = random_graphs(6, 10, 42);
        assert_eq!(a, b);
        let c = random_graphs(6, 10, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn corpus_parse_reports_line() {
        let graphs = parse_graph6_corpus(b"Bw\nA_\n\nA?\n").unwrap();
        assert_eq!(graphs.len(), 3);
        let err = parse_graph6_corpus(b"Bw\nB\n").unwrap_err();
        assert_eq!(err.0, 2);
    }
}
