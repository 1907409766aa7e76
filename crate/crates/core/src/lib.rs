//! Explicit sparse partial Steiner `(r-1, r, n)`-systems.
//!
//! The crate builds `r`-uniform hypergraphs in which every `(r-1)`-subset of
//! vertices lies in at most one edge and no three edges span `r + 2` or fewer
//! vertices, and it checks those properties independently:
//!
//! * [`groups`] holds the vertex groups `Z_n`, `Z_2^d` and `Z_m + Z_2^d`.
//! * [`constructions`] builds the zero-sum hypergraphs and picks parameters.
//! * [`verifier`] searches for forbidden configurations, with a pruned and a
//!   naive route, plus a tiny exhaustive extremal search.
//! * [`counting`] evaluates the closed-form counts in exact arithmetic.
//! * [`edgelist`] reads and writes the canonical edge-list file format.
//!
//! With the default `parallel` feature the enumeration loops run on rayon;
//! without it every loop runs sequentially and produces identical output.

pub mod constructions;
pub mod counting;
pub mod edgelist;
mod error;
pub mod groups;
pub mod hypergraph;
mod par;
pub mod subsets;
pub mod verifier;

pub use constructions::{ConstructionKind, ConstructionMeta, ParamChoice};
pub use counting::CountReport;
pub use error::{Error, Result};
pub use groups::{Element, GroupSpec};
pub use hypergraph::{Hypergraph, SubsetIndex};
pub use verifier::{Certificate, ForbiddenFamily, ViolationReport};
