//! Finite Galois covering theory at exactly-computable scale.
//!
//! Everything here is finite and stored extensionally: groups and groupoids
//! carry full composition tables, group actions carry full action tables,
//! graphs are dart sets with an involution, and every theorem-shaped claim
//! is checked by exhaustive enumeration rather than symbolic argument.
//!
//! The main modules:
//!
//! - [`groupoid`]: finite groupoids, quotient morphisms, strict pro-groupoid
//!   chains and the hom-set computation in their classifying categories.
//! - [`gset`]: Galois theory of finite group actions — Galois objects, the
//!   slice equivalence, deck-style exact sequences, restriction counting.
//! - [`fpgroup`]: finitely presented groups and the brute-force monodromy
//!   oracle (enumeration of actions on small finite sets).
//! - [`cover`]: dart-based graphs, covering maps, spanning-tree fundamental
//!   groups, monodromy, deck groups and trivialization quotients.
//! - [`orbifold`]: finite group actions on graphs, equivariant covers and
//!   orbifold fundamental group presentations.
//! - [`simplicial`]: truncated simplicial sets and simplicial graphs,
//!   skeleta/coskeleta, hypercovering checks and Čech nerves.
//!
//! All values are immutable after construction and every operation is a
//! pure function; enumerations produce canonically ordered output.

pub mod budget;
pub mod cover;
pub mod fixtures;
pub mod fpgroup;
pub mod group;
pub mod groupoid;
pub mod gset;
pub mod orbifold;
pub mod perm;
pub mod simplicial;

pub use budget::{Budget, BudgetError};
pub use perm::Perm;
