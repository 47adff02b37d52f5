//! Brute-force reference implementations.
//!
//! Everything here enumerates: all n! bijections, all 2^n vertex subsets.
//! None of it goes through the refinement search, the stabilizer chain, or
//! the orbit-pruned solver, so these functions serve as independent oracles
//! for the fast paths. They are deliberately limited to very small graphs.

use crate::graph::Graph;
use crate::perm::Permutation;

/// Hard ceiling for the enumerations below; 9! is about 360k bijections.
pub const ORACLE_MAX_VERTICES: usize = 9;

fn assert_oracle_scale(g: &Graph) {
    assert!(
        g.order() <= ORACLE_MAX_VERTICES,
        "oracle enumeration limited to {} vertices, got {}",
        ORACLE_MAX_VERTICES,
        g.order()
    );
}

fn preserves_adjacency(g: &Graph, images: &[usize]) -> bool {
    let n = g.order();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) != g.has_edge(images[u], images[v]) {
                return false;
            }
        }
    }
    true
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm
    let mut items: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(&items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Every automorphism of `g`, found by checking all n! bijections.
pub fn automorphisms_brute(g: &Graph) -> Vec<Permutation> {
    assert_oracle_scale(g);
    let mut out = Vec::new();
    for_each_permutation(g.order(), |images| {
        if preserves_adjacency(g, images) {
            out.push(Permutation::from_images(images.to_vec()).unwrap());
        }
    });
    out
}

pub fn automorphism_count_brute(g: &Graph) -> u64 {
    automorphisms_brute(g).len() as u64
}

pub fn is_asymmetric_brute(g: &Graph) -> bool {
    automorphism_count_brute(g) == 1
}

fn fixes_pointwise(p: &Permutation, subset_mask: u64) -> bool {
    let mut m = subset_mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if p.image(v) != v {
            return false;
        }
        m &= m - 1;
    }
    true
}

/// Is `mask` a fixing set, judged against an explicit automorphism list?
fn mask_is_fixing(auts: &[Permutation], mask: u64) -> bool {
    auts.iter()
        .all(|p| p.is_identity() || !fixes_pointwise(p, mask))
}

/// True iff fixing `subset` pointwise kills every non-identity automorphism.
pub fn is_fixing_set_brute(g: &Graph, subset: &[usize]) -> bool {
    assert_oracle_scale(g);
    let mask = subset.iter().fold(0u64, |m, &v| m | 1 << v);
    mask_is_fixing(&automorphisms_brute(g), mask)
}

/// Minimum fixing set by scanning all subsets in (size, lexicographic) order
/// against brute-force stabilizers. Returns the fixing number and the first
/// witness encountered.
pub fn fixing_number_brute(g: &Graph) -> (usize, Vec<usize>) {
    assert_oracle_scale(g);
    let n = g.order();
    let auts = automorphisms_brute(g);
    for k in 0..=n {
        let mut found: Option<u64> = None;
        let mut scan = |mask: u64| {
            if found.is_none() && mask_is_fixing(&auts, mask) {
                found = Some(mask);
            }
        };
        for_each_subset_of_size(n, k, &mut scan);
        if let Some(mask) = found {
            let witness = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            return (k, witness);
        }
    }
    unreachable!("the full vertex set is always a fixing set")
}

fn for_each_subset_of_size(n: usize, k: usize, f: &mut impl FnMut(u64)) {
    fn rec(start: usize, n: usize, left: usize, mask: u64, f: &mut impl FnMut(u64)) {
        if left == 0 {
            f(mask);
            return;
        }
        for v in start..=n - left {
            rec(v + 1, n, left - 1, mask | 1 << v, f);
        }
    }
    rec(0, n, k, 0, f);
}

/// Isomorphism test by trying all n! vertex maps.
pub fn is_isomorphic_brute(a: &Graph, b: &Graph) -> bool {
    assert_oracle_scale(a);
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let n = a.order();
    let mut found = false;
    for_each_permutation(n, |images| {
        if found {
            return;
        }
        let ok = (0..n)
            .all(|u| (u + 1..n).all(|v| a.has_edge(u, v) == b.has_edge(images[u], images[v])));
        if ok {
            found = true;
        }
    });
    found
}

/// The relative fixing set fix(u, v) computed directly from the definition
/// over the full automorphism list.
pub fn relative_fixing_set_brute(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    assert_oracle_scale(g);
    let auts = automorphisms_brute(g);
    (0..g.order())
        .filter(|&x| {
            auts.iter()
                .filter(|p| p.image(x) == x)
                .all(|p| p.image(u) != v && p.image(v) != u)
        })
        .collect()
}
