//! Maximum bounded rooted-tree packing.
//!
//! Given a graph, a root and a per-vertex budget of children, find `K` trees
//! containing the root that together span as many vertex occurrences as
//! possible. This crate provides
//!
//! * the instance model, JSON I/O and a packing verifier ([`instance`], [`packing`]),
//! * an `O(nK)` exact algorithm for complete graphs ([`complete`]),
//! * an exact knapsack-based dynamic program for trees ([`tree`]),
//! * an exhaustive oracle and a greedy heuristic for general graphs ([`oracle`]),
//! * the 3-SAT gadget showing the general problem is NP-complete ([`reduction`]).

pub mod cli;
pub mod complete;
pub mod error;
pub mod instance;
pub mod oracle;
pub mod packing;
pub mod reduction;
pub mod tree;

pub use error::{Error, Result};
pub use instance::{load_instance, save_instance, GraphKind, Instance};
pub use packing::{load_packing, objective, save_packing, verify_packing, Packing, RootedTree, Verification, Violation, ViolationKind};
