//! Fixing sets: membership, the exact fixing number, a greedy upper bound,
//! fixed vertices, relative fixing sets fix(u, v), and the component formula
//! for disconnected graphs.

use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::aut::{automorphism_generators, canonical_form, is_asymmetric, AutResult};
use crate::graph::Graph;
use crate::perm::{group_order, OrbitPartition};

/// Default ceiling for the exact search. Above it the solver refuses rather
/// than silently degrading, so "unknown" is distinguishable from a value.
pub const DEFAULT_SOLVE_CAP: usize = 512;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FixError {
    #[error("exact search refused: {n} vertices exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("relative fixing set requires two distinct vertices, got {v} twice")]
    EqualPair { v: usize },
    #[error("graph is connected; the component formula needs at least 2 components")]
    NotDisconnected,
    #[error(
        "component {{{v}}} has order 1; the component formula needs every component order >= 2"
    )]
    TrivialComponent { v: usize },
}

/// A fixing-number computation: the number, one witness set, and whether the
/// value is exact or just an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixingResult {
    pub fix_number: usize,
    pub witness: Vec<usize>,
    pub optimal: bool,
}

/// True iff fixing every vertex of `subset` pointwise leaves only the
/// identity automorphism.
pub fn is_fixing_set(g: &Graph, subset: &[usize]) -> Result<bool, FixError> {
    if let Some(&v) = subset.iter().find(|&&v| v >= g.order()) {
        return Err(FixError::VertexOutOfRange { v, n: g.order() });
    }
    Ok(automorphism_generators(g, subset).is_trivial())
}

/// Vertices fixed by every automorphism: the union of singleton orbits.
pub fn fixed_vertices(g: &Graph) -> Vec<usize> {
    automorphism_generators(g, &[]).orbit_partition.singletons()
}

/// One cached stabilizer: the search result plus its group order, computed
/// lazily because only the branch-and-bound prune needs it.
struct CachedStab {
    aut: AutResult,
    order: OnceCell<BigUint>,
}

impl CachedStab {
    fn is_trivial(&self) -> bool {
        self.aut.is_trivial()
    }

    fn orbit_partition(&self) -> &OrbitPartition {
        &self.aut.orbit_partition
    }

    fn order(&self) -> &BigUint {
        self.order.get_or_init(|| group_order(&self.aut.generators))
    }

    fn largest_orbit(&self) -> usize {
        self.aut
            .orbit_partition
            .cells()
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(1)
    }

    /// Fixing one vertex divides the group order by that vertex's orbit size
    /// (orbit–stabilizer), and suborbit sizes never exceed the parent's
    /// largest orbit. So when largest_orbit^budget < |group|, no extension
    /// within budget can reach the trivial group.
    fn unreachable_within(&self, budget: usize) -> bool {
        if self.is_trivial() {
            return false;
        }
        let ceiling = BigUint::from(self.largest_orbit()).pow(budget as u32);
        ceiling < *self.order()
    }
}

/// Stabilizer computations keyed by the sorted fixed set; the deepening
/// search revisits prefixes across target sizes, so this cache carries most
/// of the solver's work.
struct StabilizerCache<'g> {
    g: &'g Graph,
    memo: HashMap<Vec<usize>, Rc<CachedStab>>,
}

impl<'g> StabilizerCache<'g> {
    fn new(g: &'g Graph) -> Self {
        StabilizerCache {
            g,
            memo: HashMap::new(),
        }
    }

    fn stabilizer(&mut self, fixed: &[usize]) -> Rc<CachedStab> {
        if let Some(hit) = self.memo.get(fixed) {
            return hit.clone();
        }
        let result = Rc::new(CachedStab {
            aut: automorphism_generators(self.g, fixed),
            order: OnceCell::new(),
        });
        self.memo.insert(fixed.to_vec(), result.clone());
        result
    }
}

fn insert_sorted(set: &[usize], v: usize) -> Vec<usize> {
    let mut out = set.to_vec();
    let pos = out.partition_point(|&u| u < v);
    out.insert(pos, v);
    out
}

/// Greedy upper bound: repeatedly fix the least vertex of a largest orbit of
/// the current stabilizer until it collapses. The result is always a valid
/// fixing set, not necessarily minimum.
pub fn greedy_fixing_set(g: &Graph) -> FixingResult {
    let mut cache = StabilizerCache::new(g);
    let mut fixed: Vec<usize> = Vec::new();
    loop {
        let stab = cache.stabilizer(&fixed);
        if stab.is_trivial() {
            return FixingResult {
                fix_number: fixed.len(),
                witness: fixed,
                optimal: false,
            };
        }
        let largest = stab.largest_orbit();
        let pick = stab
            .orbit_partition()
            .cells()
            .iter()
            .filter(|c| c.len() == largest)
            .map(|c| c[0])
            .min()
            .unwrap();
        fixed = insert_sorted(&fixed, pick);
    }
}

/// Depth-limited extension: can `fixed` grow into a fixing set with `budget`
/// more vertices? Candidates come only from orbit representatives of the
/// current stabilizer — orbit-equivalent picks give conjugate stabilizers,
/// so one representative per orbit suffices — and orbits that are already
/// singletons are never picked because fixing such a vertex changes nothing.
/// Branches whose stabilizer order cannot be divided down to 1 within the
/// budget are cut by the orbit-stabilizer bound.
fn extend(
    cache: &mut StabilizerCache<'_>,
    visited: &mut HashSet<Vec<usize>>,
    fixed: &[usize],
    budget: usize,
) -> Option<Vec<usize>> {
    let stab = cache.stabilizer(fixed);
    if stab.is_trivial() {
        return Some(fixed.to_vec());
    }
    if budget == 0 || stab.unreachable_within(budget) {
        return None;
    }
    for rep in stab.orbit_partition().non_singleton_representatives() {
        let next = insert_sorted(fixed, rep);
        if !visited.insert(next.clone()) {
            continue;
        }
        if let Some(found) = extend(cache, visited, &next, budget - 1) {
            return Some(found);
        }
    }
    None
}

/// Exact fixing number with a minimum witness, by iterative deepening on the
/// target size. The greedy set bounds the search from above.
pub fn fixing_number(g: &Graph) -> Result<FixingResult, FixError> {
    fixing_number_capped(g, DEFAULT_SOLVE_CAP)
}

pub fn fixing_number_capped(g: &Graph, cap: usize) -> Result<FixingResult, FixError> {
    if g.order() > cap {
        return Err(FixError::CapExceeded { n: g.order(), cap });
    }
    let greedy = greedy_fixing_set(g);
    let mut cache = StabilizerCache::new(g);
    for k in 0..greedy.fix_number {
        let mut visited = HashSet::new();
        if let Some(witness) = extend(&mut cache, &mut visited, &[], k) {
            return Ok(FixingResult {
                fix_number: witness.len(),
                witness,
                optimal: true,
            });
        }
    }
    Ok(FixingResult {
        optimal: true,
        ..greedy
    })
}

/// Existence search restricted to a candidate vertex pool: is there a fixing
/// set of size at most `budget` drawn from `allowed`?
///
/// No orbit collapsing here — the pool need not be invariant under the
/// stabilizers — just index-ordered subsets with two prunes: vertices already
/// fixed by the current stabilizer are skipped, and branches that cannot
/// reach a fixing set within budget die early.
pub fn fixing_set_within(g: &Graph, allowed: &[usize], budget: usize) -> Option<Vec<usize>> {
    let mut pool: Vec<usize> = allowed.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let mut cache = StabilizerCache::new(g);
    fn rec(
        cache: &mut StabilizerCache<'_>,
        pool: &[usize],
        from: usize,
        fixed: &[usize],
        budget: usize,
    ) -> Option<Vec<usize>> {
        let stab = cache.stabilizer(fixed);
        if stab.is_trivial() {
            return Some(fixed.to_vec());
        }
        if budget == 0 || stab.unreachable_within(budget) {
            return None;
        }
        for (i, &v) in pool.iter().enumerate().skip(from) {
            if stab.orbit_partition().cell_of(v).len() == 1 {
                continue;
            }
            let next = insert_sorted(fixed, v);
            if let Some(found) = rec(cache, pool, i + 1, &next, budget - 1) {
                return Some(found);
            }
        }
        None
    }
    rec(&mut cache, &pool, 0, &[], budget)
}

/// Outcome of a relative fixing set query fix(u, v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeFixingSet {
    /// Whether u and v are similar (same orbit). When they are not, no
    /// automorphism exchanges them, so every vertex qualifies; callers
    /// scanning all pairs get the full set plus this flag instead of an error.
    pub similar: bool,
    pub vertices: Vec<usize>,
}

/// fix(u, v): the vertices x such that no automorphism fixing x maps u to v
/// or v to u, computed from the stabilizer of each x.
pub fn relative_fixing_set(g: &Graph, u: usize, v: usize) -> Result<RelativeFixingSet, FixError> {
    let n = g.order();
    if u == v {
        return Err(FixError::EqualPair { v });
    }
    for p in [u, v] {
        if p >= n {
            return Err(FixError::VertexOutOfRange { v: p, n });
        }
    }
    let whole = automorphism_generators(g, &[]);
    if !whole.orbit_partition.same_orbit(u, v) {
        return Ok(RelativeFixingSet {
            similar: false,
            vertices: (0..n).collect(),
        });
    }
    let vertices = (0..n)
        .filter(|&x| {
            let stab = automorphism_generators(g, &[x]);
            // some g in the stabilizer maps u to v iff u, v share an orbit
            !stab.orbit_partition.same_orbit(u, v)
        })
        .collect();
    Ok(RelativeFixingSet {
        similar: true,
        vertices,
    })
}

/// One isomorphism class of asymmetric components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetricClass {
    /// Vertex sets of the members, in input order.
    pub members: Vec<Vec<usize>>,
}

/// The component formula evaluated next to the whole-graph solver.
#[derive(Clone, Debug)]
pub struct DisconnectedFixing {
    /// Value of the formula: sum of fix over non-asymmetric components, plus
    /// (multiplicity - 1) per isomorphism class of asymmetric components.
    pub formula_value: usize,
    /// Non-asymmetric components with their individual fixing numbers.
    pub symmetric_components: Vec<(Vec<usize>, usize)>,
    /// Asymmetric components grouped by isomorphism class.
    pub asymmetric_classes: Vec<AsymmetricClass>,
    /// Exact solve of the whole graph, when it fits under the cap.
    pub solver: Option<FixingResult>,
    /// Set when at least two non-asymmetric components are isomorphic; on
    /// such inputs the formula's componentwise sum deserves extra scrutiny,
    /// so reports carry this flag.
    pub isomorphic_symmetric_components: bool,
}

impl DisconnectedFixing {
    pub fn agrees(&self) -> Option<bool> {
        self.solver
            .as_ref()
            .map(|s| s.fix_number == self.formula_value)
    }
}

/// Evaluates the disconnected-graph formula
/// fix(G) = Σ_{non-asymmetric components} fix(G_i) + Σ m_i − l
/// where the asymmetric components split into l isomorphism classes with
/// multiplicities m_i, and cross-checks it against the exact solver.
pub fn fixing_number_disconnected(g: &Graph, cap: usize) -> Result<DisconnectedFixing, FixError> {
    let components = g.components();
    if components.len() < 2 {
        return Err(FixError::NotDisconnected);
    }
    if let Some(singleton) = components.iter().find(|c| c.len() < 2) {
        return Err(FixError::TrivialComponent { v: singleton[0] });
    }

    let mut symmetric_components = Vec::new();
    let mut classes: Vec<(Vec<u8>, AsymmetricClass)> = Vec::new();
    for comp in &components {
        let (sub, _) = g.induced_subgraph(comp).expect("components are nonempty");
        if is_asymmetric(&sub) {
            let key = canonical_form(&sub);
            match classes.iter_mut().find(|(k, _)| *k == key) {
                Some((_, class)) => class.members.push(comp.clone()),
                None => classes.push((
                    key,
                    AsymmetricClass {
                        members: vec![comp.clone()],
                    },
                )),
            }
        } else {
            let fix = fixing_number_capped(&sub, cap)?.fix_number;
            symmetric_components.push((comp.clone(), fix));
        }
    }

    let formula_value: usize = symmetric_components.iter().map(|(_, f)| f).sum::<usize>()
        + classes
            .iter()
            .map(|(_, c)| c.members.len() - 1)
            .sum::<usize>();

    let isomorphic_symmetric_components = {
        let mut keys: Vec<Vec<u8>> = symmetric_components
            .iter()
            .map(|(comp, _)| canonical_form(&g.induced_subgraph(comp).unwrap().0))
            .collect();
        let before = keys.len();
        keys.sort();
        keys.dedup();
        keys.len() < before
    };

    let solver = if g.order() <= cap {
        Some(fixing_number_capped(g, cap)?)
    } else {
        None
    };

    Ok(DisconnectedFixing {
        formula_value,
        symmetric_components,
        asymmetric_classes: classes.into_iter().map(|(_, c)| c).collect(),
        solver,
        isomorphic_symmetric_components,
    })
}

/// Orbit partition of the full automorphism group; exposed here because
/// fixing-number reasoning is phrased in terms of it.
pub fn automorphism_orbits(g: &Graph) -> OrbitPartition {
    automorphism_generators(g, &[]).orbit_partition
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, named_family, Family};
    use crate::oracle;

    fn asymmetric6() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (0, 5)]).unwrap()
    }

    #[test]
    fn fixing_set_membership() {
        let c4 = named_family(Family::Cycle, 4).unwrap();
        assert!(is_fixing_set(&c4, &[0, 1, 2, 3]).unwrap());
        assert!(!is_fixing_set(&c4, &[0]).unwrap());

        let k3 = named_family(Family::Complete, 3).unwrap();
        assert!(is_fixing_set(&k3, &[0, 1]).unwrap());

        assert!(is_fixing_set(&k3, &[7]).is_err());
    }

    #[test]
    fn exact_fixing_numbers_for_families() {
        assert_eq!(
            fixing_number(&named_family(Family::Complete, 5).unwrap())
                .unwrap()
                .fix_number,
            4
        );
        assert_eq!(
            fixing_number(&named_family(Family::Path, 7).unwrap())
                .unwrap()
                .fix_number,
            1
        );
        assert_eq!(
            fixing_number(&named_family(Family::Cycle, 8).unwrap())
                .unwrap()
                .fix_number,
            2
        );

        let asym = fixing_number(&asymmetric6()).unwrap();
        assert_eq!(asym.fix_number, 0);
        assert!(asym.witness.is_empty());
        assert!(asym.optimal);
    }

    #[test]
    fn witnesses_are_fixing_sets() {
        for g in [
            named_family(Family::Complete, 5).unwrap(),
            named_family(Family::Cycle, 6).unwrap(),
            named_family(Family::Star, 5).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
                .unwrap(),
        ] {
            let exact = fixing_number(&g).unwrap();
            assert!(is_fixing_set(&g, &exact.witness).unwrap());
            assert_eq!(exact.witness.len(), exact.fix_number);

            let greedy = greedy_fixing_set(&g);
            assert!(is_fixing_set(&g, &greedy.witness).unwrap());
            assert!(greedy.fix_number >= exact.fix_number);
        }
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(
            greedy_fixing_set(&named_family(Family::Complete, 4).unwrap()).fix_number,
            3
        );
        assert_eq!(
            greedy_fixing_set(&named_family(Family::Path, 5).unwrap()).fix_number,
            1
        );
        assert_eq!(greedy_fixing_set(&asymmetric6()).fix_number, 0);
    }

    #[test]
    fn cap_refusal_is_explicit() {
        let g = named_family(Family::Path, 10).unwrap();
        assert_eq!(
            fixing_number_capped(&g, 5),
            Err(FixError::CapExceeded { n: 10, cap: 5 })
        );
    }

    #[test]
    fn fixed_vertices_examples() {
        assert_eq!(
            fixed_vertices(&named_family(Family::Star, 4).unwrap()),
            vec![0]
        );
        assert_eq!(
            fixed_vertices(&named_family(Family::Path, 3).unwrap()),
            vec![1]
        );
        assert_eq!(
            fixed_vertices(&named_family(Family::Complete, 3).unwrap()),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn relative_fixing_examples() {
        let p3 = named_family(Family::Path, 3).unwrap();
        let r = relative_fixing_set(&p3, 0, 2).unwrap();
        assert!(r.similar);
        assert_eq!(r.vertices, vec![0, 2]);

        let c4 = named_family(Family::Cycle, 4).unwrap();
        let r = relative_fixing_set(&c4, 0, 2).unwrap();
        assert!(r.similar);
        assert_eq!(r.vertices, vec![0, 2]);

        let k3 = named_family(Family::Complete, 3).unwrap();
        let r = relative_fixing_set(&k3, 0, 1).unwrap();
        assert!(r.similar);
        assert_eq!(r.vertices, vec![0, 1]);

        assert_eq!(
            relative_fixing_set(&k3, 1, 1),
            Err(FixError::EqualPair { v: 1 })
        );
    }

    #[test]
    fn relative_fixing_dissimilar_pair_returns_flagged_full_set() {
        let star = named_family(Family::Star, 4).unwrap();
        let r = relative_fixing_set(&star, 0, 1).unwrap();
        assert!(!r.similar);
        assert_eq!(r.vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn relative_fixing_matches_brute_force() {
        let graphs = [
            named_family(Family::Cycle, 5).unwrap(),
            named_family(Family::Path, 4).unwrap(),
            named_family(Family::Complete, 4).unwrap(),
        ];
        for g in &graphs {
            for u in 0..g.order() {
                for v in u + 1..g.order() {
                    let ours = relative_fixing_set(g, u, v).unwrap();
                    if ours.similar {
                        assert_eq!(
                            ours.vertices,
                            oracle::relative_fixing_set_brute(g, u, v),
                            "pair ({u},{v})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn disconnected_formula_twin_asymmetric() {
        let a = asymmetric6();
        let (g, _) = disjoint_union(&[a.clone(), a]).unwrap();
        let out = fixing_number_disconnected(&g, DEFAULT_SOLVE_CAP).unwrap();
        assert_eq!(out.formula_value, 1);
        assert_eq!(out.asymmetric_classes.len(), 1);
        assert_eq!(out.asymmetric_classes[0].members.len(), 2);
        assert_eq!(out.solver.as_ref().unwrap().fix_number, 1);
        assert_eq!(out.agrees(), Some(true));
    }

    #[test]
    fn disconnected_formula_twin_paths() {
        let p3 = named_family(Family::Path, 3).unwrap();
        let (g, _) = disjoint_union(&[p3.clone(), p3]).unwrap();
        let out = fixing_number_disconnected(&g, DEFAULT_SOLVE_CAP).unwrap();
        assert_eq!(out.formula_value, 2);
        assert!(out.isomorphic_symmetric_components);
        assert_eq!(out.solver.as_ref().unwrap().fix_number, 2);
        assert_eq!(out.agrees(), Some(true));
    }

    #[test]
    fn disconnected_formula_mixed_components() {
        let k2 = named_family(Family::Complete, 2).unwrap();
        let c3 = named_family(Family::Cycle, 3).unwrap();
        let (g, _) = disjoint_union(&[k2, c3]).unwrap();
        let out = fixing_number_disconnected(&g, DEFAULT_SOLVE_CAP).unwrap();
        assert_eq!(out.formula_value, 3);
        assert!(!out.isomorphic_symmetric_components);
        assert_eq!(out.agrees(), Some(true));
    }

    #[test]
    fn disconnected_formula_rejects_bad_hypotheses() {
        let k3 = named_family(Family::Complete, 3).unwrap();
        assert_eq!(
            fixing_number_disconnected(&k3, DEFAULT_SOLVE_CAP).unwrap_err(),
            FixError::NotDisconnected
        );

        let k1 = named_family(Family::Complete, 1).unwrap();
        let k2 = named_family(Family::Complete, 2).unwrap();
        let (g, _) = disjoint_union(&[k2, k1]).unwrap();
        assert_eq!(
            fixing_number_disconnected(&g, DEFAULT_SOLVE_CAP).unwrap_err(),
            FixError::TrivialComponent { v: 2 }
        );
    }

    #[test]
    fn exact_matches_brute_force_on_small_graphs() {
        // spot check here; the full corpus sweep lives in the acceptance suite
        let graphs = [
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap(),
            Graph::from_edges(4, &[]).unwrap(),
        ];
        for g in &graphs {
            let exact = fixing_number(g).unwrap();
            let (brute, _) = oracle::fixing_number_brute(g);
            assert_eq!(exact.fix_number, brute, "{g:?}");
        }
    }

    #[test]
    fn restricted_search_finds_pools() {
        let k4 = named_family(Family::Complete, 4).unwrap();
        // any 3 of the 4 vertices fix K4; restrict away vertex 0
        let found = fixing_set_within(&k4, &[1, 2, 3], 3).unwrap();
        assert_eq!(found, vec![1, 2, 3]);
        // but 2 vertices never do
        assert!(fixing_set_within(&k4, &[1, 2, 3], 2).is_none());
    }

    #[test]
    fn fix_number_bounds_hold() {
        for g in [
            named_family(Family::Complete, 6).unwrap(),
            named_family(Family::Cycle, 7).unwrap(),
            asymmetric6(),
        ] {
            let fix = fixing_number(&g).unwrap().fix_number;
            assert!(fix < g.order());
            assert_eq!(fix == 0, is_asymmetric(&g));
        }
    }
}
