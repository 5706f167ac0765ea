//! Homotopy invariants of `Ecom G` for finite groups `G`, computed from the
//! simplicial complex `AfCom(G)` of affinely commutative subsets and the coset
//! posets `AbCo(G)` and `mAbCo(G)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`group`]: finite groups as multiplication tables, subgroups, cosets and
//!   affine commutativity tests.
//! - [`complex`]: `AfCom(G)`, the coset posets and their order complexes.
//! - [`homology`]: boundary matrices, Smith normal form and integral homology.
//! - [`pi1`]: edge-path presentations of the fundamental group, Tietze
//!   simplification, abelianization, Todd–Coxeter enumeration and the
//!   commutator homomorphism onto `[G, G]`.
//! - [`o2`]: exact arithmetic in `O(2)` for the reflection/rotation commutator
//!   identities.
//! - [`verify`]: the check suites driven by the command-line tool.

pub mod complex;
pub mod group;
pub mod homology;
pub mod o2;
pub mod pi1;
pub mod verify;
