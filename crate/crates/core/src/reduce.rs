//! Reduction of bridgeless graphs to cubic 3-edge-connected leaves.
//!
//! The recursion dispatches in a fixed order, always taking the smallest
//! id when there is a choice:
//!
//! 1. **Small leaf** — at most two vertices. Solved directly by
//!    [`solve_small`].
//! 2. **Split** — at a cut vertex `v`: the graph falls into the subgraph
//!    induced by the first component of g − v plus v, and the rest plus
//!    v. Both sides stay connected and bridgeless, and their edge sets
//!    partition the original edges, so solutions merge by union.
//! 3. **Contract** — a 2-edge-cut `{e, f}` with `e < f`: contract `e`.
//!    With cut vertices already excluded, `e` has no parallel edge, so
//!    the contraction deletes exactly `e` and `f` survives. Lifting
//!    solves for the one missing value by Kirchhoff at the old tail.
//! 4. **Expand** — a vertex `v` of degree > 3 in a graph that is now
//!    3-edge-connected: replace `v` by a ring of fresh degree-3 vertices,
//!    one per incident edge in ascending id order. Expansion preserves
//!    3-edge-connectivity, so from the first expansion on, only
//!    expansions remain until the graph is cubic. Lifting restricts the
//!    solution to the original edges.
//! 5. **Cubic leaf** — cubic and 3-edge-connected; handed to one of the
//!    constructive solvers.
//!
//! Splits and contractions strictly shrink the edge count and expansions
//! strictly shrink the total degree excess, so the recursion terminates.
//! The whole run is recorded in a [`ReductionTrace`] whose leaves can be
//! solved independently and lifted back with [`ReductionTrace::lift`].

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::cuts;
use crate::flow::{self, EdgeFunction, FlowPair};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// What kind of instance a reduction leaf is.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LeafKind {
    /// At most two vertices (any number of parallel edges).
    Small,
    /// Cubic and 3-edge-connected, with at least four vertices.
    Cubic,
}

/// Errors raised by reduction and lifting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReduceError {
    /// The input graph is disconnected.
    Disconnected,
    /// The input graph has a bridge, so it admits no nowhere-zero flow.
    HasBridge(EdgeId),
    /// `solve_small` was handed a graph with more than two vertices.
    NotSmall { vertices: usize },
    /// `lift` was handed the wrong number of leaf solutions.
    WrongLeafCount { expected: usize, got: usize },
    /// A leaf solution failed verification on its leaf graph.
    BadLeafSolution { leaf: usize, reason: &'static str },
    /// An invariant of the reduction itself failed — a bug, not bad input.
    Internal(&'static str),
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::Disconnected => write!(f, "graph is disconnected"),
            ReduceError::HasBridge(e) => write!(f, "graph has a bridge (edge {e})"),
            ReduceError::NotSmall { vertices } => {
                write!(f, "small solver needs at most 2 vertices, got {vertices}")
            }
            ReduceError::WrongLeafCount { expected, got } => {
                write!(f, "expected {expected} leaf solutions, got {got}")
            }
            ReduceError::BadLeafSolution { leaf, reason } => {
                write!(f, "solution for leaf {leaf} is invalid: {reason}")
            }
            ReduceError::Internal(msg) => write!(f, "internal reduction invariant failed: {msg}"),
        }
    }
}

/// One node of the reduction tree. Every node keeps the graph it was
/// given, so lifting can re-derive everything it needs.
#[derive(Clone, Debug)]
enum Node {
    Leaf {
        graph: MultiGraph,
        kind: LeafKind,
        index: usize,
    },
    Split {
        graph: MultiGraph,
        cut_vertex: VertexId,
        left: Box<Node>,
        right: Box<Node>,
    },
    Contract {
        graph: MultiGraph,
        contracted: EdgeId,
        partner: EdgeId,
        child: Box<Node>,
    },
    Expand {
        graph: MultiGraph,
        hub: VertexId,
        ring: Vec<EdgeId>,
        child: Box<Node>,
    },
}

/// A replayable record of one reduction run.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    root: Node,
    leaf_count: usize,
}

/// A borrowed view of one reduction event, in depth-first pre-order.
#[derive(Clone, Copy, Debug)]
pub enum TraceEvent<'a> {
    /// The graph was split at a cut vertex.
    Split {
        graph: &'a MultiGraph,
        cut_vertex: VertexId,
    },
    /// An edge of a 2-edge-cut was contracted.
    Contract {
        graph: &'a MultiGraph,
        contracted: EdgeId,
        partner: EdgeId,
    },
    /// A high-degree vertex was expanded into a ring.
    Expand {
        graph: &'a MultiGraph,
        hub: VertexId,
        ring: &'a [EdgeId],
    },
    /// A leaf instance was reached.
    Leaf {
        graph: &'a MultiGraph,
        kind: LeafKind,
        index: usize,
    },
}

impl ReductionTrace {
    /// Number of leaves.
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    /// The leaf graphs and their kinds, ordered by leaf index.
    pub fn leaves(&self) -> Vec<(&MultiGraph, LeafKind)> {
        let mut out = Vec::with_capacity(self.leaf_count);
        collect_leaves(&self.root, &mut out);
        out
    }

    /// Every reduction event in depth-first pre-order.
    pub fn events(&self) -> Vec<TraceEvent<'_>> {
        let mut out = Vec::new();
        collect_events(&self.root, &mut out);
        out
    }

    /// Lifts per-leaf flow pairs back to a flow pair on the root graph.
    ///
    /// `solutions[i]` must be a nowhere-zero flow pair on leaf `i`; each is
    /// verified before use. The lift mirrors the recursion: unions across
    /// splits, Kirchhoff completion across contractions, restriction
    /// across expansions.
    pub fn lift(&self, solutions: &[FlowPair]) -> Result<FlowPair, ReduceError> {
        if solutions.len() != self.leaf_count {
            return Err(ReduceError::WrongLeafCount {
                expected: self.leaf_count,
                got: solutions.len(),
            });
        }
        lift_node(&self.root, solutions)
    }
}

fn collect_leaves<'a>(node: &'a Node, out: &mut Vec<(&'a MultiGraph, LeafKind)>) {
    match node {
        Node::Leaf { graph, kind, .. } => out.push((graph, *kind)),
        Node::Split { left, right, .. } => {
            collect_leaves(left, out);
            collect_leaves(right, out);
        }
        Node::Contract { child, .. } | Node::Expand { child, .. } => collect_leaves(child, out),
    }
}

fn collect_events<'a>(node: &'a Node, out: &mut Vec<TraceEvent<'a>>) {
    match node {
        Node::Leaf { graph, kind, index } => out.push(TraceEvent::Leaf {
            graph,
            kind: *kind,
            index: *index,
        }),
        Node::Split {
            graph,
            cut_vertex,
            left,
            right,
        } => {
            out.push(TraceEvent::Split {
                graph,
                cut_vertex: *cut_vertex,
            });
            collect_events(left, out);
            collect_events(right, out);
        }
        Node::Contract {
            graph,
            contracted,
            partner,
            child,
        } => {
            out.push(TraceEvent::Contract {
                graph,
                contracted: *contracted,
                partner: *partner,
            });
            collect_events(child, out);
        }
        Node::Expand {
            graph,
            hub,
            ring,
            child,
        } => {
            out.push(TraceEvent::Expand {
                graph,
                hub: *hub,
                ring,
            });
            collect_events(child, out);
        }
    }
}

/// Reduces a connected bridgeless multigraph to leaves.
pub fn reduce(g: &MultiGraph) -> Result<ReductionTrace, ReduceError> {
    if !g.is_connected() {
        return Err(ReduceError::Disconnected);
    }
    if let Some(&b) = cuts::bridges(g).iter().next() {
        return Err(ReduceError::HasBridge(b));
    }
    let mut next_leaf = 0;
    let root = build(g.clone(), &mut next_leaf)?;
    Ok(ReductionTrace {
        root,
        leaf_count: next_leaf,
    })
}

fn build(g: MultiGraph, next_leaf: &mut usize) -> Result<Node, ReduceError> {
    if g.vertex_count() <= 2 {
        let index = *next_leaf;
        *next_leaf += 1;
        return Ok(Node::Leaf {
            graph: g,
            kind: LeafKind::Small,
            index,
        });
    }
    let structure = cuts::analyze(&g).map_err(|_| ReduceError::Internal("step disconnected"))?;
    if !structure.bridges.is_empty() {
        return Err(ReduceError::Internal("step grew a bridge"));
    }

    if let Some(&v) = structure.cut_vertices.iter().next() {
        let remainder = g
            .delete_vertex(v)
            .map_err(|_| ReduceError::Internal("cut vertex"))?;
        let comps = remainder.graph.components();
        if comps.len() < 2 {
            return Err(ReduceError::Internal("cut vertex did not cut"));
        }
        let mut near = comps[0].clone();
        near.insert(v);
        let mut far: alloc::collections::BTreeSet<VertexId> =
            g.vertices().filter(|x| !comps[0].contains(x)).collect();
        far.insert(v);
        let left_graph = g
            .induced_subgraph(&near)
            .map_err(|_| ReduceError::Internal("split side"))?;
        let right_graph = g
            .induced_subgraph(&far)
            .map_err(|_| ReduceError::Internal("split side"))?;
        if left_graph.edge_count() + right_graph.edge_count() != g.edge_count() {
            return Err(ReduceError::Internal("split lost edges"));
        }
        let left = build(left_graph, next_leaf)?;
        let right = build(right_graph, next_leaf)?;
        return Ok(Node::Split {
            graph: g,
            cut_vertex: v,
            left: Box::new(left),
            right: Box::new(right),
        });
    }

    if let Some(&(e, f)) = structure.two_cuts.iter().next() {
        let outcome = g
            .contract_edge(e)
            .map_err(|_| ReduceError::Internal("contract"))?;
        // Without cut vertices, a 2-cut edge has no parallel partner, so
        // the contraction must delete exactly the contracted edge.
        if outcome.edges.deleted().count() != 1 || !outcome.edges.survived(f) {
            return Err(ReduceError::Internal("2-cut edge had parallels"));
        }
        let child = build(outcome.graph, next_leaf)?;
        return Ok(Node::Contract {
            graph: g,
            contracted: e,
            partner: f,
            child: Box::new(child),
        });
    }

    let high_degree = g.vertices().find(|&v| g.degree(v) > 3);
    if let Some(hub) = high_degree {
        let (expanded, ring) = expand_vertex(&g, hub)?;
        match cuts::is_k_edge_connected(&expanded, 3) {
            Ok(true) => {}
            _ => return Err(ReduceError::Internal("expansion lost 3-edge-connectivity")),
        }
        let child = build(expanded, next_leaf)?;
        return Ok(Node::Expand {
            graph: g,
            hub,
            ring,
            child: Box::new(child),
        });
    }

    if g.vertices().any(|v| g.degree(v) != 3) {
        return Err(ReduceError::Internal(
            "3-edge-connected graph with degree < 3",
        ));
    }
    let index = *next_leaf;
    *next_leaf += 1;
    Ok(Node::Leaf {
        graph: g,
        kind: LeafKind::Cubic,
        index,
    })
}

/// Replaces `hub` by a ring of fresh degree-3 vertices, one per incident
/// edge in ascending id order; returns the new graph and the ring edges
/// (`ring[i]` joins ring vertex i to ring vertex (i+1) mod k).
fn expand_vertex(g: &MultiGraph, hub: VertexId) -> Result<(MultiGraph, Vec<EdgeId>), ReduceError> {
    let spokes: Vec<EdgeId> = g.incident_edges(hub).to_vec();
    let k = spokes.len();
    let first_vertex = g.vertex_id_bound().0;
    let first_edge = g.edge_id_bound().0;
    let ring_vertices: Vec<VertexId> = (0..k as u32).map(|i| VertexId(first_vertex + i)).collect();
    let ring_edges: Vec<EdgeId> = (0..k as u32).map(|i| EdgeId(first_edge + i)).collect();

    let vertices = g
        .vertices()
        .filter(|&v| v != hub)
        .chain(ring_vertices.iter().copied());
    let rerouted = g.edges().map(|(e, t, h)| {
        let slot = spokes.iter().position(|&s| s == e);
        match slot {
            Some(i) => {
                let r = ring_vertices[i];
                if t == hub {
                    (e, r, h)
                } else {
                    (e, t, r)
                }
            }
            None => (e, t, h),
        }
    });
    let ring = (0..k).map(|i| (ring_edges[i], ring_vertices[i], ring_vertices[(i + 1) % k]));
    let graph = MultiGraph::from_parts(vertices, rerouted.chain(ring))
        .map_err(|_| ReduceError::Internal("expansion rebuild"))?;
    Ok((graph, ring_edges))
}

fn check_leaf_solution(
    graph: &MultiGraph,
    pair: &FlowPair,
    leaf: usize,
) -> Result<(), ReduceError> {
    let report = flow::verify_pair(graph, pair).map_err(|_| ReduceError::BadLeafSolution {
        leaf,
        reason: "not total on the leaf graph",
    })?;
    if !report.passed() {
        return Err(ReduceError::BadLeafSolution {
            leaf,
            reason: "not a nowhere-zero flow pair",
        });
    }
    Ok(())
}

fn lift_node(node: &Node, solutions: &[FlowPair]) -> Result<FlowPair, ReduceError> {
    match node {
        Node::Leaf { graph, index, .. } => {
            let pair = &solutions[*index];
            check_leaf_solution(graph, pair, *index)?;
            Ok(pair.clone())
        }
        Node::Split {
            graph, left, right, ..
        } => {
            let a = lift_node(left, solutions)?;
            let b = lift_node(right, solutions)?;
            // The two sides partition the edges, so union is well defined.
            let overlap = a.mod2.domain().any(|e| b.mod2.get(e).is_some());
            if overlap {
                return Err(ReduceError::Internal("split sides overlap"));
            }
            let mod2 = a
                .mod2
                .add(&b.mod2)
                .map_err(|_| ReduceError::Internal("union"))?;
            let mod3 = a
                .mod3
                .add(&b.mod3)
                .map_err(|_| ReduceError::Internal("union"))?;
            let pair = FlowPair::new(graph, mod2, mod3)
                .map_err(|_| ReduceError::Internal("split union not total"))?;
            debug_assert!(flow::verify_pair(graph, &pair).is_ok_and(|r| r.passed()));
            Ok(pair)
        }
        Node::Contract {
            graph,
            contracted,
            child,
            ..
        } => {
            let inner = lift_node(child, solutions)?;
            let (tail, head) = graph
                .endpoints(*contracted)
                .ok_or(ReduceError::Internal("contracted edge missing"))?;
            let mut mod2 = inner.mod2;
            let mut mod3 = inner.mod3;
            let (e2, v2) = flow::solve_missing_at(graph, &mod2, tail, 0);
            if e2 != *contracted {
                return Err(ReduceError::Internal("unexpected undetermined edge"));
            }
            mod2.set(e2, v2);
            let (e3, v3) = flow::solve_missing_at(graph, &mod3, tail, 0);
            if e3 != *contracted {
                return Err(ReduceError::Internal("unexpected undetermined edge"));
            }
            mod3.set(e3, v3);
            // Kirchhoff at the head follows from the rest of the graph
            // already balancing; the reinstated pair is nonzero because
            // its 2-cut partner's is.
            if flow::boundary_at(graph, &mod2, head) != 0
                || flow::boundary_at(graph, &mod3, head) != 0
            {
                return Err(ReduceError::Internal("contraction lift unbalanced"));
            }
            if v2 == 0 && v3 == 0 {
                return Err(ReduceError::Internal("contraction lift hit a zero pair"));
            }
            let pair = FlowPair::new(graph, mod2, mod3)
                .map_err(|_| ReduceError::Internal("contraction lift not total"))?;
            debug_assert!(flow::verify_pair(graph, &pair).is_ok_and(|r| r.passed()));
            Ok(pair)
        }
        Node::Expand { graph, child, .. } => {
            let inner = lift_node(child, solutions)?;
            let mod2 = inner.mod2.restricted_to(graph.edge_ids());
            let mod3 = inner.mod3.restricted_to(graph.edge_ids());
            let pair = FlowPair::new(graph, mod2, mod3)
                .map_err(|_| ReduceError::Internal("expansion lift not total"))?;
            debug_assert!(flow::verify_pair(graph, &pair).is_ok_and(|r| r.passed()));
            Ok(pair)
        }
    }
}

/// Solves a leaf with at most two vertices directly.
///
/// With two vertices and m ≥ 2 parallel edges, assign mod-6 values whose
/// oriented contributions at the smaller vertex are 3, 3, …, 3 for even m
/// and 1, 2, 3, …, 3 for odd m (edges in ascending id order); either way
/// the contributions sum to 0 mod 6 and every value is nonzero. Graphs
/// with no edges get the empty pair; a single edge is a bridge.
pub fn solve_small(g: &MultiGraph) -> Result<FlowPair, ReduceError> {
    let n = g.vertex_count();
    if n > 2 {
        return Err(ReduceError::NotSmall { vertices: n });
    }
    let m = g.edge_count();
    if m == 0 {
        if n == 2 {
            return Err(ReduceError::Disconnected);
        }
        let pair = FlowPair::new(g, EdgeFunction::new(2), EdgeFunction::new(3))
            .map_err(|_| ReduceError::Internal("empty pair"))?;
        return Ok(pair);
    }
    if n < 2 {
        // Edges need two distinct endpoints.
        return Err(ReduceError::Internal("edges on fewer than two vertices"));
    }
    if m == 1 {
        let e = g.edge_ids().next().expect("one edge");
        return Err(ReduceError::HasBridge(e));
    }
    let source = g.vertices().next().expect("two vertices");
    let mut f6 = EdgeFunction::new(6);
    for (i, e) in g.edge_ids().enumerate() {
        // Oriented contribution of this edge at the source vertex.
        let contribution: u8 = if m % 2 == 1 && i == 0 {
            1
        } else if m % 2 == 1 && i == 1 {
            2
        } else {
            3
        };
        let toward = g.tail(e) == Some(source);
        f6.set(
            e,
            if toward {
                contribution
            } else {
                (6 - contribution) % 6
            },
        );
    }
    let (mod2, mod3) = flow::split_mod6(&f6).map_err(|_| ReduceError::Internal("split"))?;
    let pair =
        FlowPair::new(g, mod2, mod3).map_err(|_| ReduceError::Internal("small pair not total"))?;
    debug_assert!(flow::verify_pair(g, &pair).is_ok_and(|r| r.passed()));
    Ok(pair)
}
