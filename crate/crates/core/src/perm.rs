//! Permutations and finitely generated permutation groups: composition,
//! orbits, and exact group order via a base-and-strong-generators stabilizer
//! chain. This is the algebra carrying automorphism groups and their
//! pointwise stabilizers.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image array of length {len} is not a bijection on 0..{len}")]
    NotBijection { len: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {p} out of range for degree {degree}")]
    PointOutOfRange { p: usize, degree: usize },
}

/// A bijection on `0..n`, stored as its image array: position `v` holds the
/// image of `v`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &img in &images {
            if img >= images.len() || seen[img] {
                return Err(PermError::NotBijection { len: images.len() });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Convenience constructor from disjoint cycles; points not mentioned are
    /// fixed. Mostly used by tests and fixtures.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for window in cycle.windows(2) {
                let (a, b) = (window[0], window[1]);
                if a >= degree || b >= degree {
                    return Err(PermError::PointOutOfRange {
                        p: a.max(b),
                        degree,
                    });
                }
                images[a] = b;
            }
            if let (Some(&last), Some(&first)) = (cycle.last(), cycle.first()) {
                images[last] = first;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &img)| v == img)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (v, &img) in self.images.iter().enumerate() {
            images[img] = v;
        }
        Permutation { images }
    }

    /// Points moved by this permutation, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|&(v, &img)| v != img)
            .map(|(v, _)| v)
    }
}

/// Functional composition: the result maps `v` to `a(b(v))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation, PermError> {
    if a.degree() != b.degree() {
        return Err(PermError::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(Permutation {
        images: b.images.iter().map(|&v| a.images[v]).collect(),
    })
}

/// A finite presentation of a permutation group: the identity is never stored,
/// so an empty generator list presents the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    degree: usize,
    gens: Vec<Permutation>,
}

impl GeneratorSet {
    pub fn trivial(degree: usize) -> Self {
        GeneratorSet {
            degree,
            gens: Vec::new(),
        }
    }

    /// Builds a generator set, dropping identity elements and duplicates.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            if !g.is_identity() && seen.insert(g.images.clone()) {
                out.push(g);
            }
        }
        Ok(GeneratorSet { degree, gens: out })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True iff the presented group is the trivial group.
    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Partition of `0..n` into group orbits. Cells are sorted ascending and
/// ordered by their least element, which doubles as the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    cells: Vec<Vec<usize>>,
    cell_index: Vec<usize>,
}

impl OrbitPartition {
    fn from_cells(mut cells: Vec<Vec<usize>>, n: usize) -> Self {
        for cell in &mut cells {
            cell.sort_unstable();
        }
        cells.sort_by_key(|c| c[0]);
        let mut cell_index = vec![0; n];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_index[v] = i;
            }
        }
        OrbitPartition { cells, cell_index }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_of(&self, v: usize) -> &[usize] {
        &self.cells[self.cell_index[v]]
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.cell_index[u] == self.cell_index[v]
    }

    /// Least element of the orbit of `v`.
    pub fn representative(&self, v: usize) -> usize {
        self.cells[self.cell_index[v]][0]
    }

    /// Representatives of orbits with at least two elements, ascending.
    pub fn non_singleton_representatives(&self) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| c[0])
            .collect()
    }

    /// Vertices in singleton orbits, ascending.
    pub fn singletons(&self) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.cell_index.len()
    }
}

/// Orbits of the generated group: connected components of the union of the
/// generators' functional graphs.
pub fn orbits(gs: &GeneratorSet) -> OrbitPartition {
    let n = gs.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for g in gs.generators() {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g.image(v)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        cells.entry(root).or_default().push(v);
    }
    OrbitPartition::from_cells(cells.into_values().collect(), n)
}

/// One level of a stabilizer chain: the orbit of `point` under the generators
/// that fix all earlier base points, with a transversal element `u_p` per
/// orbit point (`u_p(point) = p`).
struct ChainLevel {
    point: usize,
    transversal: BTreeMap<usize, Permutation>,
}

/// Base and strong generating set for the generated group.
///
/// Built by the verify-and-patch variant of Schreier–Sims: keep a pool of
/// strong generators, rebuild orbit transversals, and sift every Schreier
/// generator; any nontrivial residue joins the pool and the loop repeats.
/// At desk scale this is comfortably fast and easy to audit.
struct StabilizerChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    fn build(gs: &GeneratorSet) -> Self {
        let mut chain = StabilizerChain {
            degree: gs.degree(),
            base: Vec::new(),
            strong: gs.generators().to_vec(),
            levels: Vec::new(),
        };
        chain.extend_base();
        chain.rebuild_levels();
        while let Some(residue) = chain.find_violation() {
            chain.strong.push(residue);
            chain.extend_base();
            chain.rebuild_levels();
        }
        chain
    }

    /// Ensures every strong generator moves some base point. Base points are
    /// taken in ascending vertex order, skipping points the remaining
    /// generators all fix.
    fn extend_base(&mut self) {
        loop {
            let next = self
                .strong
                .iter()
                .filter(|g| self.base.iter().all(|&b| g.image(b) == b))
                .filter_map(|g| g.support().next())
                .min();
            match next {
                Some(p) => self.base.push(p),
                None => break,
            }
        }
    }

    fn generators_at(&self, level: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|g| self.base[..level].iter().all(|&b| g.image(b) == b))
            .collect()
    }

    fn rebuild_levels(&mut self) {
        self.levels.clear();
        for (i, &point) in self.base.iter().enumerate() {
            let gens = self.generators_at(i);
            let mut transversal = BTreeMap::new();
            transversal.insert(point, Permutation::identity(self.degree));
            let mut frontier = vec![point];
            while let Some(p) = frontier.pop() {
                let rep = transversal[&p].clone();
                for g in &gens {
                    let q = g.image(p);
                    if let std::collections::btree_map::Entry::Vacant(slot) = transversal.entry(q) {
                        slot.insert(compose(g, &rep).expect("degrees match"));
                        frontier.push(q);
                    }
                }
            }
            self.levels.push(ChainLevel { point, transversal });
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue.
    fn sift(&self, mut g: Permutation, from: usize) -> Permutation {
        for level in &self.levels[from..] {
            let p = g.image(level.point);
            match level.transversal.get(&p) {
                None => return g,
                Some(u) => g = compose(&u.inverse(), &g).expect("degrees match"),
            }
        }
        g
    }

    /// Looks for a Schreier generator that does not sift to the identity.
    fn find_violation(&self) -> Option<Permutation> {
        for (i, level) in self.levels.iter().enumerate() {
            let gens = self.generators_at(i);
            for (&p, u_p) in &level.transversal {
                for g in &gens {
                    let q = g.image(p);
                    let u_q = &level.transversal[&q];
                    let schreier =
                        compose(&u_q.inverse(), &compose(g, u_p).expect("degrees match"))
                            .expect("degrees match");
                    if schreier.is_identity() {
                        continue;
                    }
                    let residue = self.sift(schreier, i + 1);
                    if !residue.is_identity() {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for level in &self.levels {
            order *= BigUint::from(level.transversal.len());
        }
        order
    }
}

/// Exact order of the generated group.
pub fn group_order(gs: &GeneratorSet) -> BigUint {
    StabilizerChain::build(gs).order()
}
