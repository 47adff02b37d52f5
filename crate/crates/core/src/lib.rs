//! symkit: a desk-scale graph symmetry toolkit.
//!
//! It computes automorphism groups, orbits, pointwise stabilizers, and exact
//! fixing numbers; constructs composition (lexicographic) and corona
//! products with coordinate bookkeeping; and machine-checks the structure
//! theorems relating these on concrete instances, with brute-force oracles
//! backing every fast path.
//!
//! Module map:
//! - [`graph`]: bit-row graphs, families, distances, components, unions, joins
//! - [`io`]: graph6 and edge-list codecs
//! - [`perm`]: permutations, generator sets, orbits, stabilizer-chain order
//! - [`aut`]: refinement/individualization search, stabilizers, canonical forms
//! - [`fixing`]: fixing sets, exact and greedy fixing numbers
//! - [`products`]: composition, corona, iterated corona
//! - [`theorems`]: instance-level verification and corpus scans
//! - [`oracle`]: brute-force reference implementations for tests

pub mod aut;
pub mod fixing;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod perm;
pub mod products;
pub mod theorems;

pub use aut::{
    automorphism_generators, canonical_form, is_asymmetric, AutResult, OrderedPartition,
};
pub use fixing::{fixing_number, greedy_fixing_set, is_fixing_set, FixingResult};
pub use graph::{all_pairs_distances, disjoint_union, named_family, Dist, Family, Graph};
pub use perm::{compose, group_order, orbits, GeneratorSet, OrbitPartition, Permutation};
pub use products::{composition, corona, corona_iter, ProductGraph};
pub use theorems::{scan, ScanConfig, TheoremId, Verdict, VerificationReport};
