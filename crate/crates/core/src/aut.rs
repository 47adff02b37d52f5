//! Automorphism-group computation by equitable partition refinement with
//! individualization backtracking, pointwise stabilizers via seeded
//! partitions, and canonical forms for isomorphism tests.
//!
//! The search walks an individualization-refinement tree. Leaves are discrete
//! ordered partitions, i.e. labelings; two leaves with equal relabeled
//! adjacency give an automorphism, and the lexicographically largest relabeled
//! adjacency over all leaves is the canonical form. Sibling branches are
//! pruned when a previously explored sibling lies in the same orbit of the
//! automorphisms found so far that fix the current search path pointwise;
//! pruned subtrees contribute the same leaf images as their explored sibling,
//! so neither the generated group nor the canonical form is affected.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::perm::{orbits, GeneratorSet, OrbitPartition, Permutation};

/// Sequence of disjoint nonempty vertex cells covering `0..n`; cell order is
/// significant. Refinement only ever splits cells in place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    /// The unit partition: one cell holding every vertex.
    pub fn unit(n: usize) -> Self {
        OrderedPartition {
            cells: vec![(0..n).collect()],
        }
    }

    /// Partition with each vertex of `fixed` as its own leading singleton
    /// cell (ascending), followed by the remaining vertices in one cell.
    /// This is individualization without branching: the automorphisms
    /// preserving the partition are exactly those fixing `fixed` pointwise.
    pub fn with_leading_singletons(n: usize, fixed: &[usize]) -> Self {
        let mut seed: Vec<usize> = fixed.to_vec();
        seed.sort_unstable();
        seed.dedup();
        let in_seed: HashSet<usize> = seed.iter().copied().collect();
        let mut cells: Vec<Vec<usize>> = seed.iter().map(|&v| vec![v]).collect();
        let rest: Vec<usize> = (0..n).filter(|v| !in_seed.contains(v)).collect();
        if !rest.is_empty() {
            cells.push(rest);
        }
        OrderedPartition { cells }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Checks the partition invariants against vertex count `n`: cells are
    /// disjoint, nonempty, and cover `0..n`.
    pub fn validate(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for cell in &self.cells {
            if cell.is_empty() {
                return false;
            }
            for &v in cell {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Refines to the coarsest equitable refinement: repeatedly split every
    /// cell by its members' neighbor-count signature against all current
    /// cells, fragments ordered by signature then least element, until no
    /// cell splits.
    fn refine(&mut self, g: &Graph) {
        let words = g.order().div_ceil(64);
        loop {
            let masks: Vec<Vec<u64>> = self
                .cells
                .iter()
                .map(|cell| {
                    let mut mask = vec![0u64; words];
                    for &v in cell {
                        mask[v / 64] |= 1 << (v % 64);
                    }
                    mask
                })
                .collect();
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(self.cells.len());
            let mut split = false;
            for cell in &self.cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        (
                            masks.iter().map(|m| g.degree_into(v, m) as u32).collect(),
                            v,
                        )
                    })
                    .collect();
                keyed.sort();
                let mut fragment: Vec<usize> = vec![keyed[0].1];
                for pair in keyed.windows(2) {
                    if pair[0].0 == pair[1].0 {
                        fragment.push(pair[1].1);
                    } else {
                        next.push(std::mem::replace(&mut fragment, vec![pair[1].1]));
                        split = true;
                    }
                }
                next.push(fragment);
            }
            self.cells = next;
            if !split {
                return;
            }
        }
    }

    /// Splits cell `idx` into the singleton `[v]` followed by the rest.
    fn individualize(&self, idx: usize, v: usize) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (i, cell) in self.cells.iter().enumerate() {
            if i == idx {
                cells.push(vec![v]);
                cells.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                cells.push(cell.clone());
            }
        }
        OrderedPartition { cells }
    }

    /// Index of the first cell among those of minimum size >= 2.
    fn branch_cell(&self) -> Option<usize> {
        let min = self
            .cells
            .iter()
            .map(|c| c.len())
            .filter(|&l| l >= 2)
            .min()?;
        self.cells.iter().position(|c| c.len() == min)
    }

    /// For a discrete partition: the labeling sending the vertex in cell `i`
    /// to position `i`.
    fn labeling(&self) -> Vec<usize> {
        let mut lab = vec![0; self.cells.len()];
        for (pos, cell) in self.cells.iter().enumerate() {
            lab[cell[0]] = pos;
        }
        lab
    }
}

/// Result of one automorphism search: generators of the pointwise stabilizer,
/// its orbit partition, and the number of search-tree nodes visited.
#[derive(Clone, Debug)]
pub struct AutResult {
    pub generators: GeneratorSet,
    pub orbit_partition: OrbitPartition,
    pub node_count: u64,
}

impl AutResult {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_trivial()
    }
}

struct Leaf {
    labeling: Vec<usize>,
    inverse: Vec<usize>,
    bytes: Vec<u8>,
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    node_count: u64,
    generators: Vec<Permutation>,
    seen_gens: HashSet<Vec<usize>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    path: Vec<usize>,
    seeds: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, seeds: Vec<usize>) -> Self {
        Search {
            g,
            n: g.order(),
            node_count: 0,
            generators: Vec::new(),
            seen_gens: HashSet::new(),
            first: None,
            best: None,
            path: Vec::new(),
            seeds,
        }
    }

    /// Upper-triangle adjacency bits of the relabeled graph, row-major over
    /// new labels, packed MSB-first.
    fn relabeled_bytes(&self, labeling: &[usize]) -> Vec<u8> {
        let mut inverse = vec![0; self.n];
        for (v, &pos) in labeling.iter().enumerate() {
            inverse[pos] = v;
        }
        let nbits = self.n * (self.n - 1) / 2;
        let mut bytes = vec![0u8; nbits.div_ceil(8)];
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.g.has_edge(inverse[i], inverse[j]) {
                    bytes[k / 8] |= 1 << (7 - k % 8);
                }
                k += 1;
            }
        }
        bytes
    }

    fn make_leaf(&self, labeling: Vec<usize>) -> Leaf {
        let bytes = self.relabeled_bytes(&labeling);
        let mut inverse = vec![0; self.n];
        for (v, &pos) in labeling.iter().enumerate() {
            inverse[pos] = v;
        }
        Leaf {
            labeling,
            inverse,
            bytes,
        }
    }

    /// Equal relabeled adjacency at two leaves yields the automorphism
    /// x -> ref_inverse(labeling(x)).
    fn record_automorphism(&mut self, reference: &Leaf, labeling: &[usize]) {
        let images: Vec<usize> = labeling.iter().map(|&pos| reference.inverse[pos]).collect();
        if images.iter().enumerate().all(|(v, &img)| v == img) {
            return;
        }
        if self.seen_gens.insert(images.clone()) {
            let p = Permutation::from_images(images).expect("leaf labelings are bijections");
            debug_assert!(preserves_adjacency(self.g, &p));
            // seeded vertices sit in the same leading singleton cells at
            // every leaf, so every recovered automorphism fixes them
            debug_assert!(self.seeds.iter().all(|&v| p.image(v) == v));
            self.generators.push(p);
        }
    }

    fn handle_leaf(&mut self, partition: &OrderedPartition) {
        let labeling = partition.labeling();
        let bytes = self.relabeled_bytes(&labeling);

        if let Some(first) = self.first.take() {
            if bytes == first.bytes {
                self.record_automorphism(&first, &labeling);
            }
            self.first = Some(first);
        }
        match &self.best {
            Some(best) if bytes < best.bytes => {}
            Some(best) if bytes == best.bytes => {
                let best_owned = self.best.take().unwrap();
                self.record_automorphism(&best_owned, &labeling);
                self.best = Some(best_owned);
            }
            _ => self.best = Some(self.make_leaf(labeling.clone())),
        }
        if self.first.is_none() {
            self.first = Some(self.make_leaf(labeling));
        }
    }

    /// Orbit pruning: `v` is skipped if it lies in the orbit of an already
    /// explored sibling under the found generators that fix the path.
    fn pruned(&self, explored: &[usize], v: usize) -> bool {
        if explored.is_empty() || self.generators.is_empty() {
            return false;
        }
        let stab: Vec<&Permutation> = self
            .generators
            .iter()
            .filter(|p| self.path.iter().all(|&x| p.image(x) == x))
            .collect();
        if stab.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for p in stab {
            for x in 0..self.n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, p.image(x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn run(&mut self, mut partition: OrderedPartition) {
        self.node_count += 1;
        partition.refine(self.g);
        debug_assert!(partition.validate(self.n));
        let Some(target) = partition.branch_cell() else {
            self.handle_leaf(&partition);
            return;
        };
        let candidates = partition.cells()[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for v in candidates {
            if self.pruned(&explored, v) {
                continue;
            }
            explored.push(v);
            let child = partition.individualize(target, v);
            self.path.push(v);
            self.run(child);
            self.path.pop();
        }
    }
}

fn preserves_adjacency(g: &Graph, p: &Permutation) -> bool {
    g.edges().all(|(u, v)| g.has_edge(p.image(u), p.image(v)))
        && g.size() == g.relabeled(p.images()).size()
}

/// Generators of the subgroup of automorphisms of `g` fixing every vertex of
/// `fixed` pointwise (the full automorphism group for an empty `fixed`),
/// together with its orbit partition.
pub fn automorphism_generators(g: &Graph, fixed: &[usize]) -> AutResult {
    let n = g.order();
    debug_assert!(
        fixed.iter().all(|&v| v < n),
        "fixed vertices must be in range"
    );
    let mut search = Search::new(g, fixed.to_vec());
    search.run(OrderedPartition::with_leading_singletons(n, fixed));
    let generators =
        GeneratorSet::new(n, search.generators).expect("generators share the graph degree");
    let orbit_partition = orbits(&generators);
    AutResult {
        generators,
        orbit_partition,
        node_count: search.node_count,
    }
}

/// True iff the only automorphism of `g` is the identity.
pub fn is_asymmetric(g: &Graph) -> bool {
    automorphism_generators(g, &[]).is_trivial()
}

/// A labeling under which the relabeled adjacency is lexicographically
/// extremal over all leaves of the refinement search. Two graphs have equal
/// [`canonical_form`] bytes iff this labeling sends them to the same graph.
pub fn canonical_labeling(g: &Graph) -> Permutation {
    let mut search = Search::new(g, Vec::new());
    search.run(OrderedPartition::unit(g.order()));
    let best = search.best.expect("search visits at least one leaf");
    Permutation::from_images(best.labeling).expect("leaf labelings are bijections")
}

/// Canonical byte string: equal for two graphs iff they are isomorphic.
/// Layout: vertex count (4 bytes big-endian), then the extremal upper-triangle
/// adjacency bits.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let mut search = Search::new(g, Vec::new());
    search.run(OrderedPartition::unit(g.order()));
    let best = search.best.expect("search visits at least one leaf");
    let mut out = (g.order() as u32).to_be_bytes().to_vec();
    out.extend_from_slice(&best.bytes);
    out
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.relabeled(canonical_labeling(g).images())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_family, Family, Graph};
    use crate::perm::group_order;
    use num_bigint::BigUint;

    fn asymmetric6() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (0, 5)]).unwrap()
    }

    #[test]
    fn partition_seeding_and_validation() {
        let p = OrderedPartition::with_leading_singletons(5, &[3, 1]);
        assert_eq!(p.cells(), &[vec![1], vec![3], vec![0, 2, 4]]);
        assert!(p.validate(5));
        assert!(!p.validate(4));
        assert!(OrderedPartition::with_leading_singletons(3, &[0, 1, 2]).is_discrete());
    }

    #[test]
    fn k4_has_full_symmetric_group() {
        let k4 = named_family(Family::Complete, 4).unwrap();
        let aut = automorphism_generators(&k4, &[]);
        assert_eq!(group_order(&aut.generators), BigUint::from(24u32));
        assert_eq!(aut.orbit_partition.cell_count(), 1);
    }

    #[test]
    fn fixing_one_end_of_p3_kills_everything() {
        let p3 = named_family(Family::Path, 3).unwrap();
        let aut = automorphism_generators(&p3, &[0]);
        assert!(aut.is_trivial());
    }

    #[test]
    fn c4_stabilizer_of_a_vertex() {
        let c4 = named_family(Family::Cycle, 4).unwrap();
        let aut = automorphism_generators(&c4, &[0]);
        assert_eq!(group_order(&aut.generators), BigUint::from(2u32));
        assert_eq!(aut.orbit_partition.cells(), &[vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn generators_fix_seeds_and_preserve_adjacency() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6)])
            .unwrap();
        for fixed in [vec![], vec![0], vec![1, 5]] {
            let aut = automorphism_generators(&g, &fixed);
            for p in aut.generators.generators() {
                assert!(preserves_adjacency(&g, p));
                for &f in &fixed {
                    assert_eq!(p.image(f), f);
                }
            }
        }
    }

    #[test]
    fn asymmetry_examples() {
        assert!(is_asymmetric(&named_family(Family::Complete, 1).unwrap()));
        assert!(!is_asymmetric(&named_family(Family::Complete, 2).unwrap()));
        assert!(is_asymmetric(&asymmetric6()));
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let p3a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let p3b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&p3a), canonical_form(&p3b));

        let k3 = named_family(Family::Complete, 3).unwrap();
        assert_ne!(canonical_form(&k3), canonical_form(&p3a));

        let p4 = named_family(Family::Path, 4).unwrap();
        let star = named_family(Family::Star, 4).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&star));
    }

    #[test]
    fn canonical_graph_is_isomorphic_relabeling() {
        let g = Graph::from_edges(6, &[(0, 2), (2, 4), (4, 0), (1, 3), (3, 5)]).unwrap();
        let canon = canonical_graph(&g);
        assert_eq!(canon.size(), g.size());
        assert_eq!(canonical_form(&canon), canonical_form(&g));
    }

    #[test]
    fn orbit_partition_refines_degree_partition() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]).unwrap();
        let aut = automorphism_generators(&g, &[]);
        for cell in aut.orbit_partition.cells() {
            let d = g.degree(cell[0]);
            assert!(cell.iter().all(|&v| g.degree(v) == d));
        }
    }

    // Search-tree sizes for a few named inputs. These are regression guards
    // for the pruning, not precise counts.
    #[test]
    fn node_count_stays_small_on_fixtures() {
        let cases: Vec<(Graph, u64)> = vec![
            (named_family(Family::Complete, 8).unwrap(), 120),
            (named_family(Family::Cycle, 10).unwrap(), 60),
            (named_family(Family::Path, 10).unwrap(), 10),
            (asymmetric6(), 10),
            // Petersen graph
            (
                Graph::from_edges(
                    10,
                    &[
                        (0, 1),
                        (1, 2),
                        (2, 3),
                        (3, 4),
                        (4, 0),
                        (0, 5),
                        (1, 6),
                        (2, 7),
                        (3, 8),
                        (4, 9),
                        (5, 7),
                        (7, 9),
                        (9, 6),
                        (6, 8),
                        (8, 5),
                    ],
                )
                .unwrap(),
                400,
            ),
        ];
        for (g, bound) in cases {
            let aut = automorphism_generators(&g, &[]);
            assert!(
                aut.node_count <= bound,
                "node_count {} exceeds {}",
                aut.node_count,
                bound
            );
        }
    }

    #[test]
    fn petersen_group_order() {
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let aut = automorphism_generators(&petersen, &[]);
        assert_eq!(group_order(&aut.generators), BigUint::from(120u32));
    }
}
