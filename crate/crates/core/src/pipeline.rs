//! End-to-end pipeline: reduce an arbitrary bridgeless multigraph to
//! leaves, solve every cubic leaf with the chosen algorithm, lift the
//! leaf solutions back up the reduction, and convert the resulting
//! nowhere-zero pair into a single mod-6 function and a bounded integer
//! flow.
//!
//! The two backends are interchangeable: both produce a verified
//! nowhere-zero 6-flow, generally different ones. Every stage revalidates
//! its output, so a [`Solution`] is correct by checking, not by trust.

use core::fmt;

use crate::flow::{self, EdgeFunction, FlowError, FlowPair, IntegerFlow};
use crate::graph::{EdgeId, MultiGraph};
use crate::reduce::{self, LeafKind, ReduceError};
use crate::solver_one::{self, SolveOneError};
use crate::solver_two::{self, SolveTwoError};

/// Which constructive algorithm solves the cubic leaves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Backend {
    /// The work-stack recursion over series classes.
    One,
    /// The demand-driven subcubic recursion.
    Two,
}

/// A complete solved instance.
#[derive(Clone, Debug)]
pub struct Solution {
    /// The nowhere-zero pair (parity component, ternary component).
    pub pair: FlowPair,
    /// The combined mod-6 function, nonzero on every edge.
    pub mod6: EdgeFunction,
    /// An integer flow with every value in ±{1, …, 5}.
    pub integer: IntegerFlow,
}

/// Errors raised by the pipeline.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PipelineError {
    /// The input graph is not connected.
    Disconnected,
    /// The input graph has a bridge, so it admits no nowhere-zero flow.
    HasBridge(EdgeId),
    /// The reduction failed structurally.
    Reduce(ReduceError),
    /// The first solver failed on a leaf.
    SolveOne(SolveOneError),
    /// The second solver failed on a leaf.
    SolveTwo(SolveTwoError),
    /// Flow algebra failed on the solved pair.
    Flow(FlowError),
    /// A cross-stage invariant failed — a bug.
    Internal(&'static str),
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Disconnected => write!(f, "the graph is not connected"),
            PipelineError::HasBridge(e) => write!(f, "edge {e} is a bridge"),
            PipelineError::Reduce(err) => write!(f, "reduction failed: {err}"),
            PipelineError::SolveOne(err) => write!(f, "first algorithm failed: {err}"),
            PipelineError::SolveTwo(err) => write!(f, "second algorithm failed: {err}"),
            PipelineError::Flow(err) => write!(f, "flow conversion failed: {err}"),
            PipelineError::Internal(msg) => write!(f, "internal pipeline invariant failed: {msg}"),
        }
    }
}

impl From<ReduceError> for PipelineError {
    fn from(err: ReduceError) -> Self {
        match err {
            ReduceError::Disconnected => PipelineError::Disconnected,
            ReduceError::HasBridge(e) => PipelineError::HasBridge(e),
            other => PipelineError::Reduce(other),
        }
    }
}

/// Computes a nowhere-zero 6-flow on a connected bridgeless multigraph,
/// in all three forms: pair, mod-6 function, and bounded integer flow.
pub fn solve_pipeline(g: &MultiGraph, backend: Backend) -> Result<Solution, PipelineError> {
    let trace = reduce::reduce(g)?;
    let mut solutions = alloc::vec::Vec::with_capacity(trace.leaf_count());
    for (leaf, kind) in trace.leaves() {
        let pair = match kind {
            LeafKind::Small => reduce::solve_small(leaf)?,
            LeafKind::Cubic => match backend {
                Backend::One => solver_one::solve_cubic(leaf).map_err(PipelineError::SolveOne)?,
                Backend::Two => solver_two::solve_cubic(leaf).map_err(PipelineError::SolveTwo)?,
            },
        };
        solutions.push(pair);
    }
    let pair = trace.lift(&solutions)?;
    let report = flow::verify_pair(g, &pair).map_err(PipelineError::Flow)?;
    if !report.passed() {
        return Err(PipelineError::Internal("lifted pair fails verification"));
    }
    let mod6 = flow::crt_combine(&pair);
    let integer = flow::to_integer_flow(g, &mod6).map_err(PipelineError::Flow)?;
    let integer_report = flow::verify_integer_flow(g, &integer, 6);
    if !integer_report.passed() {
        return Err(PipelineError::Internal(
            "integer conversion fails verification",
        ));
    }
    Ok(Solution {
        pair,
        mod6,
        integer,
    })
}
