//! Constructive nowhere-zero 6-flows on bridgeless multigraphs.
//!
//! Every bridgeless graph admits a nowhere-zero 6-flow. This crate makes
//! that fact executable: it reduces an arbitrary bridgeless multigraph to
//! cubic 3-edge-connected pieces, solves each piece with either of two
//! independent recursive algorithms, and lifts the solutions back through
//! the reduction. A flow is produced as a pair (mod-2, mod-3), combined
//! into a single mod-6 function, and finally converted to an integer-valued
//! flow with values in ±{1, …, 5}.
//!
//! The crate is `no_std` (with `alloc`) and fully deterministic: identical
//! inputs produce byte-identical outputs. All collections are ordered, and
//! every internal choice (which vertex to split, which edge to contract,
//! which branch to explore first) is pinned to the smallest available id.
//!
//! Modules:
//!
//! - [`graph`] — loopless directed multigraphs with stable ids and
//!   id-preserving surgery (identify, contract, subdivide, delete).
//! - [`cuts`] — bridges, cut vertices, 2-edge-cuts, series classes, and
//!   cycle-shaped quotients.
//! - [`flow`] — modular edge functions, boundaries, flow pairs, the
//!   mod-6/CRT combination, and the integer-flow converter.
//! - [`oracle`] — exhaustive search for nowhere-zero mod-k flows over a
//!   cycle basis, used as ground truth in tests and exposed on the CLI.
//! - [`reduce`] — the recursion from bridgeless graphs down to cubic
//!   3-edge-connected leaves, with a replayable trace and solution lifting.
//! - [`solver_one`] — first constructive algorithm: rooted instances on
//!   cubic 3-edge-connected graphs, recursing along a series class of the
//!   root-deleted graph.
//! - [`solver_two`] — second constructive algorithm: rooted instances on
//!   subcubic 2-edge-connected graphs with degree-2 demands, recursing by
//!   local deletions and contractions.
//! - [`pipeline`] — end-to-end orchestration from an input graph to a
//!   verified integer flow.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cuts;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod reduce;
pub mod solver_one;
pub mod solver_two;

pub use graph::{EdgeId, MultiGraph, VertexId};
