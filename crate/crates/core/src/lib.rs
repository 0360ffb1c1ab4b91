//! Generalized Kneser hypergraphs and the topology behind their chromatic numbers.
//!
//! The crate builds the hypergraphs `KG^r_s(n,k)`, `KG^r_S(n,k)` and
//! `KG^r(n,k,P)`, colors them (explicitly and exactly), constructs the
//! simplicial complexes used by the topological lower bounds (the join
//! `E_{n-1}(Z_p)`, box complexes, `K_s(n,k)`, `C_s(n,k)` and maximal nerves),
//! computes their integer homology, and checks Z_p-Tucker certificates built
//! from proper colorings.
//!
//! Modules:
//!
//! - [`hypergraph`]: ground-set combinatorics, instance specs, vertex/edge predicates.
//! - [`coloring`]: colorings, the explicit upper-bound constructions, closed-form
//!   bounds and the exact chromatic-number solver.
//! - [`scomplex`]: simplicial complexes and their constructions.
//! - [`homology`]: Smith normal form, reduced Betti numbers, homological connectivity.
//! - [`tucker`]: the λ labeling of `E_{n-1}(Z_p)` and its certificate checker.
//! - [`cli`]: command orchestration for the `kneser-lab` binary.

pub mod budget;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod homology;
pub mod hypergraph;
pub mod scomplex;
pub mod subset;
pub mod sweep;
pub mod tucker;

pub use budget::Budget;
pub use error::{Error, Result};
pub use subset::KSubset;
