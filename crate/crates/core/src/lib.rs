//! Signed graphs, their k-token graphs, and exact spectral measures of
//! unbalance.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`] — signed graphs, switching, balance, signed complements;
//! * [`subsets`] — ranking/unranking of k-subsets in lexicographic order;
//! * [`linalg`] — exact big-integer matrices, characteristic polynomials,
//!   power traces, and floating-point symmetric eigensolving;
//! * [`token`] — k-token graphs of signed graphs, switching lifts, and
//!   (signed) binomial inclusion matrices;
//! * [`measures`] — frustration index and the spectral unbalance level, both
//!   exact, plus randomized exploration of their relationship;
//! * [`equivalence`] — switching equivalence, switching-isomorphism classes,
//!   canonical forms, and sign-symmetry;
//! * [`verify`] — self-checking verifiers for the structural claims the
//!   crate's algorithms rely on;
//! * [`gallery`] — small named instances used in tests, docs, and tables;
//! * [`cli`] — the `tokensign` command-line surface over all of the above.

pub mod cli;
pub mod equivalence;
pub mod gallery;
pub mod graph;
pub mod linalg;
pub mod measures;
pub mod subsets;
pub mod token;
pub mod verify;

pub use graph::{
    BalanceCertificate, Edge, Family, GraphError, NegativeCycleWitness, Sign, SignedGraph,
    SwitchingVector,
};
