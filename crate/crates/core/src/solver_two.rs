//! Second constructive 6-flow algorithm, via demand-driven recursion on
//! subcubic 2-edge-connected graphs.
//!
//! The recursion works on *demand instances*: a subcubic 2-edge-connected
//! graph with a root vertex `u` of degree 2, seed values ψ2 and ψ3 on the
//! two root edges, and a ternary demand μ prescribing the boundary the
//! mod-3 solution must attain at each vertex. The hypotheses are
//!
//! 1. μ sums to zero and is supported on degree-2 vertices,
//! 2. ∂ψ3(u) = μ(u), and ∂ψ2(u) = 0 whenever μ(u) = 0,
//! 3. the seed pair is nonzero on both root edges,
//!
//! and the conclusions ([`solve_rooted`]) are: φ3 extends ψ3 with
//! boundary exactly μ, φ2 extends ψ2 and is balanced at every vertex
//! where μ vanishes, and the pair (φ2, φ3) is nonzero on every edge.
//!
//! Each instance is shrunk by the first applicable of six cases
//! ([`classify`]): the 2-cycle and triangle bases solve directly;
//! balanced degree-2 vertices are suppressed by contracting an edge;
//! a separating pair of edges with two vertices on each side splits the
//! instance in two, solved in sequence so the second inherits the first's
//! values on the shared edges; a charged degree-2 vertex is detached with
//! its demand pushed onto its neighbours; and once only the root has
//! degree 2 and every demand is zero, deleting an edge away from the root
//! leaves demands that force the reinstated value to be nonzero.
//!
//! [`solve_cubic`] wraps the recursion: it subdivides the smallest edge
//! of a cubic 3-edge-connected graph, roots the instance at the fresh
//! midpoint with nonzero seeds, and fuses the halves back together into
//! a nowhere-zero 6-flow pair.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::cuts;
use crate::flow::{self, neg_mod, sub_mod, BoundaryMap, EdgeFunction, FlowPair};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Errors raised by the second solver.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveTwoError {
    /// An entry precondition of [`solve_cubic`] failed.
    Precondition(&'static str),
    /// A hypothesis of the rooted recursion failed on an instance.
    Hypothesis(&'static str),
    /// A solved instance violated the recursion's conclusions — a bug.
    Conclusion(&'static str),
    /// A structural invariant of a case failed — a bug.
    Structure(&'static str),
}

impl fmt::Display for SolveTwoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveTwoError::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            SolveTwoError::Hypothesis(msg) => write!(f, "hypothesis failed: {msg}"),
            SolveTwoError::Conclusion(msg) => write!(f, "conclusion violated: {msg}"),
            SolveTwoError::Structure(msg) => write!(f, "case invariant failed: {msg}"),
        }
    }
}

/// A demand instance of the recursion.
#[derive(Clone, Debug)]
pub struct DemandInstance {
    /// The instance graph: subcubic and 2-edge-connected.
    pub graph: MultiGraph,
    /// The root vertex, of degree 2.
    pub root: VertexId,
    /// Ternary demand: the boundary φ3 must attain at every vertex.
    pub demand: BoundaryMap,
    /// Parity seed on exactly the two root edges.
    pub root_mod2: EdgeFunction,
    /// Ternary seed on exactly the two root edges.
    pub root_mod3: EdgeFunction,
}

/// The six mutually exclusive shrink cases, in dispatch order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Case {
    /// Two vertices joined by two parallel edges: the seeds already solve
    /// the instance.
    TwoCycle,
    /// A balanced degree-2 vertex away from the root is suppressed by
    /// contracting one of its edges (never one incident to the root).
    SuppressBalancedVertex {
        vertex: VertexId,
        contracted: EdgeId,
    },
    /// A triangle of degree-2 vertices whose off-root vertices are both
    /// charged: one missing value, forced by the demand.
    ThreeCycle,
    /// A separating pair of edges with at least two vertices on each
    /// side: solve the root side against the fused far side first, then
    /// the far side with the computed values as seeds.
    SplitTwoCut { cut: (EdgeId, EdgeId) },
    /// A charged degree-2 vertex away from the root is detached, its
    /// demand pushed across its two edges onto the neighbours.
    DetachChargedVertex { vertex: VertexId },
    /// Only the root has degree 2 and every demand is zero: delete an
    /// edge away from the root, charging its endpoints so the reinstated
    /// value is forced to be nonzero.
    DetachInteriorEdge { edge: EdgeId },
}

/// Checks the shape and hypotheses of an instance.
fn check_hypotheses(inst: &DemandInstance) -> Result<(), SolveTwoError> {
    let g = &inst.graph;
    if !g.contains_vertex(inst.root) || g.degree(inst.root) != 2 {
        return Err(SolveTwoError::Hypothesis("the root must have degree 2"));
    }
    if g.vertices().any(|v| g.degree(v) > 3) {
        return Err(SolveTwoError::Hypothesis(
            "every vertex must have degree at most 3",
        ));
    }
    if cuts::is_k_edge_connected(g, 2) != Ok(true) {
        return Err(SolveTwoError::Hypothesis(
            "the graph must be 2-edge-connected",
        ));
    }
    if inst.demand.modulus() != 3 {
        return Err(SolveTwoError::Hypothesis("the demand must be ternary"));
    }
    if inst.demand.total() != 0 {
        return Err(SolveTwoError::Hypothesis("the demand must sum to zero"));
    }
    if inst
        .demand
        .support()
        .any(|v| !g.contains_vertex(v) || g.degree(v) != 2)
    {
        return Err(SolveTwoError::Hypothesis(
            "the demand must sit on degree-2 vertices",
        ));
    }
    let root_edges: BTreeSet<EdgeId> = g.incident_edges(inst.root).iter().copied().collect();
    let mod2_domain: BTreeSet<EdgeId> = inst.root_mod2.domain().collect();
    let mod3_domain: BTreeSet<EdgeId> = inst.root_mod3.domain().collect();
    if inst.root_mod2.modulus() != 2 || mod2_domain != root_edges {
        return Err(SolveTwoError::Hypothesis(
            "the parity seed must cover exactly the root edges",
        ));
    }
    if inst.root_mod3.modulus() != 3 || mod3_domain != root_edges {
        return Err(SolveTwoError::Hypothesis(
            "the ternary seed must cover exactly the root edges",
        ));
    }
    if flow::boundary_at(g, &inst.root_mod3, inst.root) != inst.demand.get(inst.root) {
        return Err(SolveTwoError::Hypothesis(
            "the ternary seed boundary must match the root demand",
        ));
    }
    if inst.demand.get(inst.root) == 0 && flow::boundary_at(g, &inst.root_mod2, inst.root) != 0 {
        return Err(SolveTwoError::Hypothesis(
            "a balanced root needs a balanced parity seed",
        ));
    }
    if root_edges
        .iter()
        .any(|&e| inst.root_mod2.get_or_zero(e) == 0 && inst.root_mod3.get_or_zero(e) == 0)
    {
        return Err(SolveTwoError::Hypothesis(
            "the seed pair must be nonzero on the root edges",
        ));
    }
    Ok(())
}

/// Checks the conclusions of a solved instance.
fn check_conclusions(inst: &DemandInstance, pair: &FlowPair) -> Result<(), SolveTwoError> {
    let g = &inst.graph;
    if pair.mod2.check_total_on(g).is_err() || pair.mod3.check_total_on(g).is_err() {
        return Err(SolveTwoError::Conclusion(
            "solution is not total on the instance graph",
        ));
    }
    for (e, v) in inst.root_mod3.iter() {
        if pair.mod3.get(e) != Some(v) {
            return Err(SolveTwoError::Conclusion(
                "ternary seed restriction violated",
            ));
        }
    }
    for (e, v) in inst.root_mod2.iter() {
        if pair.mod2.get(e) != Some(v) {
            return Err(SolveTwoError::Conclusion(
                "parity seed restriction violated",
            ));
        }
    }
    for v in g.vertices() {
        if flow::boundary_at(g, &pair.mod3, v) != inst.demand.get(v) {
            return Err(SolveTwoError::Conclusion(
                "ternary boundary does not match the demand",
            ));
        }
        if inst.demand.get(v) == 0 && flow::boundary_at(g, &pair.mod2, v) != 0 {
            return Err(SolveTwoError::Conclusion(
                "parity imbalance at a balanced vertex",
            ));
        }
    }
    for e in g.edge_ids() {
        if pair.mod2.get_or_zero(e) == 0 && pair.mod3.get_or_zero(e) == 0 {
            return Err(SolveTwoError::Conclusion("zero pair on an edge"));
        }
    }
    Ok(())
}

/// Picks the first applicable case for a (hypothesis-checked) instance.
pub fn classify(inst: &DemandInstance) -> Result<Case, SolveTwoError> {
    let g = &inst.graph;
    if g.vertex_count() == 2 {
        return Ok(Case::TwoCycle);
    }
    // Smallest balanced degree-2 vertex away from the root.
    if let Some(v) = g
        .vertices()
        .find(|&v| v != inst.root && g.degree(v) == 2 && inst.demand.get(v) == 0)
    {
        let contracted = g
            .incident_edges(v)
            .iter()
            .copied()
            .find(|&e| g.other_end(e, v) != Some(inst.root))
            .ok_or(SolveTwoError::Structure(
                "a suppressed vertex needs an edge away from the root",
            ))?;
        return Ok(Case::SuppressBalancedVertex {
            vertex: v,
            contracted,
        });
    }
    if g.vertex_count() == 3 && g.edge_count() == 3 && g.vertices().all(|v| g.degree(v) == 2) {
        return Ok(Case::ThreeCycle);
    }
    // First separating pair leaving at least two vertices on each side.
    for &(d1, d2) in &cuts::two_edge_cuts(g) {
        let rest = g
            .delete_edges(&[d1, d2].into_iter().collect())
            .map_err(|_| SolveTwoError::Structure("separating pair not in the graph"))?
            .graph;
        let sides = rest.components();
        if sides.len() == 2 && sides[0].len() >= 2 && sides[1].len() >= 2 {
            return Ok(Case::SplitTwoCut { cut: (d1, d2) });
        }
    }
    // Smallest charged degree-2 vertex away from the root (every balanced
    // one was suppressed above).
    if let Some(v) = g.vertices().find(|&v| v != inst.root && g.degree(v) == 2) {
        return Ok(Case::DetachChargedVertex { vertex: v });
    }
    let edge = g
        .edges()
        .find(|&(_, t, h)| t != inst.root && h != inst.root)
        .map(|(e, _, _)| e)
        .ok_or(SolveTwoError::Structure("no edge away from the root"))?;
    Ok(Case::DetachInteriorEdge { edge })
}

/// Solves a demand instance. Hypotheses are validated on every instance
/// entered — the top-level one and every recursive child — and the
/// conclusions are validated on every result before it is returned.
pub fn solve_rooted(inst: &DemandInstance) -> Result<FlowPair, SolveTwoError> {
    check_hypotheses(inst)?;
    let pair = match classify(inst)? {
        Case::TwoCycle => solve_two_cycle(inst)?,
        Case::SuppressBalancedVertex { vertex, contracted } => {
            solve_suppress(inst, vertex, contracted)?
        }
        Case::ThreeCycle => solve_three_cycle(inst)?,
        Case::SplitTwoCut { cut } => solve_split(inst, cut)?,
        Case::DetachChargedVertex { vertex } => solve_detach_vertex(inst, vertex)?,
        Case::DetachInteriorEdge { edge } => solve_detach_edge(inst, edge)?,
    };
    check_conclusions(inst, &pair)?;
    Ok(pair)
}

/// Two parallel edges: the seeds are the whole answer.
fn solve_two_cycle(inst: &DemandInstance) -> Result<FlowPair, SolveTwoError> {
    if inst.graph.edge_count() != 2 {
        return Err(SolveTwoError::Structure(
            "two-vertex instance must be a 2-cycle",
        ));
    }
    FlowPair::new(&inst.graph, inst.root_mod2.clone(), inst.root_mod3.clone())
        .map_err(|_| SolveTwoError::Structure("seed pair not total on the 2-cycle"))
}

/// Suppresses a balanced degree-2 vertex by contracting its edge away
/// from the root; the kept edge's values transfer to the contracted one.
fn solve_suppress(
    inst: &DemandInstance,
    vertex: VertexId,
    contracted: EdgeId,
) -> Result<FlowPair, SolveTwoError> {
    let g = &inst.graph;
    if inst.demand.get(vertex) != 0 {
        return Err(SolveTwoError::Structure(
            "suppressed vertex must be balanced",
        ));
    }
    let kept = g
        .incident_edges(vertex)
        .iter()
        .copied()
        .find(|&e| e != contracted)
        .ok_or(SolveTwoError::Structure(
            "suppressed vertex lost its second edge",
        ))?;
    let (t, h) = g
        .endpoints(contracted)
        .ok_or(SolveTwoError::Structure("contracted edge not in the graph"))?;
    let outcome = g
        .contract_edge(contracted)
        .map_err(|_| SolveTwoError::Structure("contraction failed"))?;
    // Exactly the contracted edge disappears: a parallel partner would
    // mean a doubled edge at a degree-2 vertex, impossible here.
    if outcome.edges.deleted().count() != 1 {
        return Err(SolveTwoError::Structure(
            "contraction deleted a parallel edge",
        ));
    }
    let mut demand = BoundaryMap::new(3);
    for (v, value) in inst.demand.iter() {
        let renamed = if v == t || v == h { outcome.merged } else { v };
        demand.set(renamed, value);
    }
    let child = DemandInstance {
        graph: outcome.graph,
        root: inst.root,
        demand,
        root_mod2: inst.root_mod2.clone(),
        root_mod3: inst.root_mod3.clone(),
    };
    let solved = solve_rooted(&child)?;

    let mut mod3 = solved.mod3.clone();
    let (missing, value) = flow::solve_missing_at(g, &mod3, vertex, 0);
    if missing != contracted {
        return Err(SolveTwoError::Structure(
            "reinstated edge is not the contracted one",
        ));
    }
    mod3.set(contracted, value);
    let mut mod2 = solved.mod2.clone();
    let carried = mod2.get(kept).ok_or(SolveTwoError::Structure(
        "kept edge missing from the child solution",
    ))?;
    mod2.set(contracted, carried);
    FlowPair::new(g, mod2, mod3).map_err(|_| SolveTwoError::Structure("lifted pair not total"))
}

/// A triangle whose two off-root vertices are charged: the demand at one
/// of them forces the only missing ternary value.
fn solve_three_cycle(inst: &DemandInstance) -> Result<FlowPair, SolveTwoError> {
    let g = &inst.graph;
    let mut off_root = g.vertices().filter(|&v| v != inst.root);
    let v = off_root
        .next()
        .ok_or(SolveTwoError::Structure("triangle lost a vertex"))?;
    let w = off_root
        .next()
        .ok_or(SolveTwoError::Structure("triangle lost a vertex"))?;
    if inst.demand.get(v) == 0 || inst.demand.get(w) == 0 {
        return Err(SolveTwoError::Structure(
            "triangle vertices must be charged (else suppression applies)",
        ));
    }
    let mut mod3 = inst.root_mod3.clone();
    let (missing, value) = flow::solve_missing_at(g, &mod3, v, inst.demand.get(v));
    mod3.set(missing, value);
    if flow::boundary_at(g, &mod3, w) != inst.demand.get(w) {
        return Err(SolveTwoError::Structure("triangle demand does not close"));
    }
    let mut mod2 = inst.root_mod2.clone();
    mod2.set(missing, 1);
    FlowPair::new(g, mod2, mod3).map_err(|_| SolveTwoError::Structure("triangle pair not total"))
}

/// Splits the instance along a separating pair of edges: the root side is
/// solved against the fused far side, then the far side is solved with
/// the computed cut values as its seeds, and the halves are glued.
fn solve_split(inst: &DemandInstance, cut: (EdgeId, EdgeId)) -> Result<FlowPair, SolveTwoError> {
    let g = &inst.graph;
    let (d1, d2) = cut;
    let rest = g
        .delete_edges(&[d1, d2].into_iter().collect())
        .map_err(|_| SolveTwoError::Structure("separating pair not in the graph"))?
        .graph;
    let sides = rest.components();
    if sides.len() != 2 {
        return Err(SolveTwoError::Structure(
            "separating pair must leave two sides",
        ));
    }
    let (near, far) = if sides[0].contains(&inst.root) {
        (sides[0].clone(), sides[1].clone())
    } else {
        (sides[1].clone(), sides[0].clone())
    };

    // Root side first, with the far side fused into one degree-2 vertex
    // carrying the far demand.
    let fused_far = g
        .identify(core::slice::from_ref(&far))
        .map_err(|_| SolveTwoError::Structure("fusing the far side failed"))?;
    let far_total = far
        .iter()
        .fold(0u8, |acc, &v| flow::add_mod(acc, inst.demand.get(v), 3));
    let mut near_demand = BoundaryMap::new(3);
    for (v, value) in inst.demand.iter() {
        if near.contains(&v) {
            near_demand.set(v, value);
        }
    }
    near_demand.set(fused_far.class_vertices[0], far_total);
    let near_inst = DemandInstance {
        graph: fused_far.graph,
        root: inst.root,
        demand: near_demand,
        root_mod2: inst.root_mod2.clone(),
        root_mod3: inst.root_mod3.clone(),
    };
    let near_pair = solve_rooted(&near_inst)?;

    // Far side second, rooted at the fused near side, seeded with the
    // values the near solution put on the separating pair.
    let fused_near = g
        .identify(core::slice::from_ref(&near))
        .map_err(|_| SolveTwoError::Structure("fusing the near side failed"))?;
    let far_root = fused_near.class_vertices[0];
    let near_total = near
        .iter()
        .fold(0u8, |acc, &v| flow::add_mod(acc, inst.demand.get(v), 3));
    let mut far_demand = BoundaryMap::new(3);
    for (v, value) in inst.demand.iter() {
        if far.contains(&v) {
            far_demand.set(v, value);
        }
    }
    far_demand.set(far_root, near_total);
    let far_inst = DemandInstance {
        graph: fused_near.graph,
        root: far_root,
        demand: far_demand,
        root_mod2: near_pair.mod2.restricted_to([d1, d2]),
        root_mod3: near_pair.mod3.restricted_to([d1, d2]),
    };
    let far_pair = solve_rooted(&far_inst)?;

    // Glue: the two solutions agree on the separating pair by the far
    // side's seed restriction; everything else lives on exactly one side.
    for &d in &[d1, d2] {
        if near_pair.mod2.get(d) != far_pair.mod2.get(d)
            || near_pair.mod3.get(d) != far_pair.mod3.get(d)
        {
            return Err(SolveTwoError::Structure(
                "halves disagree on the separating pair",
            ));
        }
    }
    let mut mod2 = near_pair.mod2.clone();
    let mut mod3 = near_pair.mod3.clone();
    for (e, v) in far_pair.mod2.iter() {
        mod2.set(e, v);
    }
    for (e, v) in far_pair.mod3.iter() {
        mod3.set(e, v);
    }
    FlowPair::new(g, mod2, mod3).map_err(|_| SolveTwoError::Structure("glued pair not total"))
}

/// Detaches a charged degree-2 vertex: its two edges get fixed nonzero
/// ternary values draining the charge, the neighbours inherit adjusted
/// demands, and the parity values are whatever rebalances the neighbours.
fn solve_detach_vertex(inst: &DemandInstance, vertex: VertexId) -> Result<FlowPair, SolveTwoError> {
    let g = &inst.graph;
    let charge = inst.demand.get(vertex);
    if charge == 0 {
        return Err(SolveTwoError::Structure("detached vertex must be charged"));
    }
    let edges: Vec<EdgeId> = g.incident_edges(vertex).to_vec();
    if edges.len() != 2 {
        return Err(SolveTwoError::Structure(
            "detached vertex must have degree 2",
        ));
    }
    let ends: Vec<VertexId> = edges
        .iter()
        .map(|&e| g.other_end(e, vertex).expect("incident edge"))
        .collect();
    // Dispatch precedence (bases, suppression, splits) guarantees the
    // neighbours are distinct degree-3 vertices away from the root.
    if ends[0] == ends[1] || ends.contains(&inst.root) {
        return Err(SolveTwoError::Structure(
            "detached vertex hugs the root or a double edge",
        ));
    }
    if ends.iter().any(|&w| g.degree(w) != 3) {
        return Err(SolveTwoError::Structure(
            "detached vertex has a degree-2 neighbour",
        ));
    }
    // Both edges carry the same value away from the vertex; twice that
    // value must equal the charge mod 3.
    let away = if charge == 1 { 2 } else { 1 };
    let mut drained = EdgeFunction::new(3);
    for &e in &edges {
        let stored = if g.tail(e) == Some(vertex) {
            away
        } else {
            neg_mod(away, 3)
        };
        drained.set(e, stored);
    }
    let outcome = g
        .delete_vertex(vertex)
        .map_err(|_| SolveTwoError::Structure("vertex deletion failed"))?;
    if cuts::is_k_edge_connected(&outcome.graph, 2) != Ok(true) {
        return Err(SolveTwoError::Structure(
            "detaching a charged vertex must keep two-edge-connectivity",
        ));
    }
    let mut demand = BoundaryMap::new(3);
    for (v, value) in inst.demand.iter() {
        if v != vertex {
            demand.set(v, value);
        }
    }
    for &w in &ends {
        let absorbed = sub_mod(inst.demand.get(w), flow::boundary_at(g, &drained, w), 3);
        demand.set(w, absorbed);
    }
    let child = DemandInstance {
        graph: outcome.graph.clone(),
        root: inst.root,
        demand,
        root_mod2: inst.root_mod2.clone(),
        root_mod3: inst.root_mod3.clone(),
    };
    let solved = solve_rooted(&child)?;

    let mut mod3 = solved.mod3.clone();
    for (e, v) in drained.iter() {
        mod3.set(e, v);
    }
    let mut mod2 = solved.mod2.clone();
    for (&e, &w) in edges.iter().zip(ends.iter()) {
        mod2.set(e, flow::boundary_at(&outcome.graph, &solved.mod2, w));
    }
    FlowPair::new(g, mod2, mod3).map_err(|_| SolveTwoError::Structure("detached pair not total"))
}

/// Deletes an edge away from the root of an instance whose only degree-2
/// vertex is the root and whose demand is zero everywhere; the charges
/// put on its endpoints force the reinstated ternary value to 1.
fn solve_detach_edge(inst: &DemandInstance, edge: EdgeId) -> Result<FlowPair, SolveTwoError> {
    let g = &inst.graph;
    if g.vertices().any(|v| v != inst.root && g.degree(v) != 3) {
        return Err(SolveTwoError::Structure(
            "edge deletion applies only when the root is the sole degree-2 vertex",
        ));
    }
    if !inst.demand.is_zero() {
        return Err(SolveTwoError::Structure(
            "edge deletion applies only to zero demand",
        ));
    }
    let (t, h) = g
        .endpoints(edge)
        .ok_or(SolveTwoError::Structure("deleted edge not in the graph"))?;
    if t == inst.root || h == inst.root {
        return Err(SolveTwoError::Structure("deleted edge must avoid the root"));
    }
    let outcome = g
        .delete_edge(edge)
        .map_err(|_| SolveTwoError::Structure("edge deletion failed"))?;
    if cuts::is_k_edge_connected(&outcome.graph, 2) != Ok(true) {
        return Err(SolveTwoError::Structure(
            "deleting an interior edge must keep two-edge-connectivity",
        ));
    }
    // Charge the endpoints so the tail must push one extra unit through
    // the reinstated edge: demand 2 at the tail, 1 at the head.
    let mut demand = BoundaryMap::new(3);
    demand.set(t, 2);
    demand.set(h, 1);
    let child = DemandInstance {
        graph: outcome.graph.clone(),
        root: inst.root,
        demand,
        root_mod2: inst.root_mod2.clone(),
        root_mod3: inst.root_mod3.clone(),
    };
    let solved = solve_rooted(&child)?;

    let mut mod3 = solved.mod3.clone();
    let (missing, value) = flow::solve_missing_at(g, &mod3, t, 0);
    if missing != edge || value != 1 {
        return Err(SolveTwoError::Structure(
            "reinstated edge value must be one",
        ));
    }
    mod3.set(edge, value);
    let imbalance = flow::boundary_at(&outcome.graph, &solved.mod2, t);
    if flow::boundary_at(&outcome.graph, &solved.mod2, h) != imbalance {
        return Err(SolveTwoError::Structure(
            "parity imbalance differs at the two ends",
        ));
    }
    let mut mod2 = solved.mod2.clone();
    mod2.set(edge, imbalance);
    FlowPair::new(g, mod2, mod3).map_err(|_| SolveTwoError::Structure("reinstated pair not total"))
}

/// Computes a nowhere-zero 6-flow pair on a cubic 3-edge-connected graph.
///
/// Subdivides the smallest edge and roots the recursion at the midpoint
/// with unit seeds on both halves, then fuses the halves back together.
pub fn solve_cubic(g: &MultiGraph) -> Result<FlowPair, SolveTwoError> {
    if g.vertices().any(|v| g.degree(v) != 3) {
        return Err(SolveTwoError::Precondition("the graph must be cubic"));
    }
    if cuts::is_k_edge_connected(g, 3) != Ok(true) {
        return Err(SolveTwoError::Precondition(
            "the graph must be 3-edge-connected",
        ));
    }
    let smallest = g
        .edge_ids()
        .next()
        .ok_or(SolveTwoError::Precondition("the graph must not be empty"))?;
    let sub = g
        .subdivide_edge(smallest)
        .map_err(|_| SolveTwoError::Structure("subdivision failed"))?;
    let [first_half, second_half] = sub.halves;
    let mut root_mod2 = EdgeFunction::new(2);
    root_mod2.set(first_half, 1);
    root_mod2.set(second_half, 1);
    let mut root_mod3 = EdgeFunction::new(3);
    root_mod3.set(first_half, 1);
    root_mod3.set(second_half, 1);
    let instance = DemandInstance {
        graph: sub.graph,
        root: sub.midpoint,
        demand: BoundaryMap::new(3),
        root_mod2,
        root_mod3,
    };
    let solved = solve_rooted(&instance)?;

    // Fuse the halves: both carry the seed value 1 in the subdivided
    // orientation, so the original edge carries 1 as well.
    let mut mod2 = EdgeFunction::new(2);
    let mut mod3 = EdgeFunction::new(3);
    for e in g.edge_ids() {
        if e == smallest {
            mod2.set(e, solved.mod2.get_or_zero(first_half));
            mod3.set(e, solved.mod3.get_or_zero(first_half));
        } else {
            let v2 = solved.mod2.get(e).ok_or(SolveTwoError::Conclusion(
                "solution misses an original edge",
            ))?;
            let v3 = solved.mod3.get(e).ok_or(SolveTwoError::Conclusion(
                "solution misses an original edge",
            ))?;
            mod2.set(e, v2);
            mod3.set(e, v3);
        }
    }
    let pair = FlowPair::new(g, mod2, mod3)
        .map_err(|_| SolveTwoError::Conclusion("final pair not total"))?;
    let report = flow::verify_pair(g, &pair)
        .map_err(|_| SolveTwoError::Conclusion("final pair not total"))?;
    if !report.passed() {
        return Err(SolveTwoError::Conclusion(
            "final pair is not a nowhere-zero flow",
        ));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn graph(n: u32, arcs: &[(u32, u32)]) -> MultiGraph {
        let mut g = MultiGraph::new();
        let vs = g.add_vertices(n as usize);
        for &(t, h) in arcs {
            g.add_edge(vs[t as usize], vs[h as usize])
                .expect("test edge");
        }
        g
    }

    fn check_solution(g: &MultiGraph, pair: &FlowPair) {
        let report = flow::verify_pair(g, pair).expect("total");
        assert!(report.passed(), "violations: {report:?}");
        let f6 = flow::crt_combine(pair);
        assert!(oracle::is_nowhere_zero_mod_flow(g, &f6, 6));
    }

    fn petersen() -> MultiGraph {
        let mut arcs = Vec::new();
        for i in 0..5u32 {
            arcs.push((i, (i + 1) % 5));
        }
        for i in 0..5u32 {
            arcs.push((5 + i, 5 + (i + 2) % 5));
        }
        for i in 0..5u32 {
            arcs.push((i, i + 5));
        }
        graph(10, &arcs)
    }

    /// A 2-cycle instance with nonzero demand at both vertices.
    fn two_cycle_instance() -> DemandInstance {
        let g = graph(2, &[(0, 1), (1, 0)]);
        let mut demand = BoundaryMap::new(3);
        demand.set(VertexId(0), 1);
        demand.set(VertexId(1), 2);
        let mut root_mod2 = EdgeFunction::new(2);
        root_mod2.set(EdgeId(0), 1);
        root_mod2.set(EdgeId(1), 0);
        let mut root_mod3 = EdgeFunction::new(3);
        // Edge 0 runs 0→1, edge 1 runs 1→0: boundary at 0 is e0 − e1.
        root_mod3.set(EdgeId(0), 2);
        root_mod3.set(EdgeId(1), 1);
        DemandInstance {
            graph: g,
            root: VertexId(0),
            demand,
            root_mod2,
            root_mod3,
        }
    }

    #[test]
    fn two_cycle_returns_the_seeds() {
        let inst = two_cycle_instance();
        assert_eq!(classify(&inst), Ok(Case::TwoCycle));
        let pair = solve_rooted(&inst).expect("2-cycle");
        assert_eq!(pair.mod3.get(EdgeId(0)), Some(2));
        assert_eq!(pair.mod3.get(EdgeId(1)), Some(1));
        assert_eq!(pair.mod2.get(EdgeId(0)), Some(1));
        assert_eq!(pair.mod2.get(EdgeId(1)), Some(0));
    }

    #[test]
    fn triangle_with_charged_vertices_solves_directly() {
        // Cycle 0-1-2, rooted at 0 with balanced seeds; charges 1 and 2
        // at the other two vertices.
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let mut demand = BoundaryMap::new(3);
        demand.set(VertexId(1), 1);
        demand.set(VertexId(2), 2);
        let mut root_mod2 = EdgeFunction::new(2);
        root_mod2.set(EdgeId(0), 1);
        root_mod2.set(EdgeId(2), 1);
        let mut root_mod3 = EdgeFunction::new(3);
        root_mod3.set(EdgeId(0), 1);
        root_mod3.set(EdgeId(2), 1);
        let inst = DemandInstance {
            graph: g.clone(),
            root: VertexId(0),
            demand,
            root_mod2,
            root_mod3,
        };
        assert_eq!(classify(&inst), Ok(Case::ThreeCycle));
        let pair = solve_rooted(&inst).expect("triangle");
        // Boundary at vertex 1 must hit its charge: e0 in (−1), e1 out
        // (+x): x − 1 ≡ 1, so the missing value is 2.
        assert_eq!(pair.mod3.get(EdgeId(1)), Some(2));
        assert_eq!(pair.mod2.get(EdgeId(1)), Some(1));
    }

    #[test]
    fn balanced_degree_two_vertices_are_suppressed() {
        // A square rooted at 0: vertices 1, 2, 3 all balanced degree 2,
        // so three suppressions reach the 2-cycle base.
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let mut root_mod2 = EdgeFunction::new(2);
        root_mod2.set(EdgeId(0), 1);
        root_mod2.set(EdgeId(3), 1);
        let mut root_mod3 = EdgeFunction::new(3);
        root_mod3.set(EdgeId(0), 2);
        root_mod3.set(EdgeId(3), 2);
        let inst = DemandInstance {
            graph: g.clone(),
            root: VertexId(0),
            demand: BoundaryMap::new(3),
            root_mod2,
            root_mod3,
        };
        assert_eq!(
            classify(&inst),
            Ok(Case::SuppressBalancedVertex {
                vertex: VertexId(1),
                contracted: EdgeId(1)
            })
        );
        let pair = solve_rooted(&inst).expect("square");
        // The flow is constant around the cycle.
        for e in g.edge_ids() {
            assert_eq!(pair.mod3.get(e), Some(2));
            assert_eq!(pair.mod2.get(e), Some(1));
        }
    }

    #[test]
    fn theta_walks_through_deletion_and_triangle() {
        let g = graph(2, &[(0, 1), (0, 1), (0, 1)]);
        let pair = solve_cubic(&g).expect("theta");
        check_solution(&g, &pair);
    }

    #[test]
    fn k4_solves() {
        let g = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let pair = solve_cubic(&g).expect("k4");
        check_solution(&g, &pair);
    }

    #[test]
    fn k33_solves() {
        let g = graph(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        );
        let pair = solve_cubic(&g).expect("k33");
        check_solution(&g, &pair);
    }

    #[test]
    fn prism_and_cube_solve() {
        let prism = graph(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        );
        let cube = graph(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        );
        for g in [prism, cube] {
            let pair = solve_cubic(&g).expect("cubic 3ec");
            check_solution(&g, &pair);
        }
    }

    #[test]
    fn petersen_solves() {
        let g = petersen();
        let pair = solve_cubic(&g).expect("petersen");
        check_solution(&g, &pair);
    }

    #[test]
    fn moebius_ladders_solve() {
        for n in 3..=6u32 {
            let mut arcs: Vec<(u32, u32)> = (0..2 * n).map(|i| (i, (i + 1) % (2 * n))).collect();
            for i in 0..n {
                arcs.push((i, i + n));
            }
            let g = graph(2 * n, &arcs);
            let pair = solve_cubic(&g).expect("moebius ladder");
            check_solution(&g, &pair);
        }
    }

    #[test]
    fn deterministic_output() {
        let g = petersen();
        let a = solve_cubic(&g).expect("petersen");
        let b = solve_cubic(&g).expect("petersen");
        assert_eq!(a.mod2, b.mod2);
        assert_eq!(a.mod3, b.mod3);
    }

    #[test]
    fn preconditions_are_enforced() {
        let mut arcs = Vec::new();
        for i in 0..5u32 {
            for j in (i + 1)..5u32 {
                arcs.push((i, j));
            }
        }
        assert_eq!(
            solve_cubic(&graph(5, &arcs)),
            Err(SolveTwoError::Precondition("the graph must be cubic"))
        );
        let g = graph(
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (4, 5),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (2, 6),
                (3, 7),
            ],
        );
        assert_eq!(
            solve_cubic(&g).err(),
            Some(SolveTwoError::Precondition(
                "the graph must be 3-edge-connected"
            ))
        );
    }

    #[test]
    fn hypotheses_are_validated_at_entry() {
        // A demand charging a degree-3 vertex is rejected: in the square
        // with one chord, vertices 1 and 3 have degree 3.
        let g2 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]);
        let mut demand = BoundaryMap::new(3);
        demand.set(VertexId(1), 1);
        demand.set(VertexId(3), 2);
        let mut root_mod2 = EdgeFunction::new(2);
        root_mod2.set(EdgeId(0), 1);
        root_mod2.set(EdgeId(3), 1);
        let mut root_mod3 = EdgeFunction::new(3);
        root_mod3.set(EdgeId(0), 1);
        root_mod3.set(EdgeId(3), 1);
        let inst = DemandInstance {
            graph: g2,
            root: VertexId(0),
            demand,
            root_mod2,
            root_mod3,
        };
        assert_eq!(
            solve_rooted(&inst).err(),
            Some(SolveTwoError::Hypothesis(
                "the demand must sit on degree-2 vertices"
            ))
        );
    }

    /// Two squares joined by a pair of edges: 0-1-2-3 and 4-5-6-7 with
    /// joins 0-4 and 2-6, rooted at vertex 1.
    fn two_squares(demands: &[(u32, u8)]) -> DemandInstance {
        let g = graph(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (2, 6),
            ],
        );
        let mut demand = BoundaryMap::new(3);
        for &(v, value) in demands {
            demand.set(VertexId(v), value);
        }
        let mut root_mod2 = EdgeFunction::new(2);
        root_mod2.set(EdgeId(0), 1);
        root_mod2.set(EdgeId(1), 1);
        let mut root_mod3 = EdgeFunction::new(3);
        root_mod3.set(EdgeId(0), 1);
        root_mod3.set(EdgeId(1), 1);
        DemandInstance {
            graph: g,
            root: VertexId(1),
            demand,
            root_mod2,
            root_mod3,
        }
    }

    #[test]
    fn two_squares_with_zero_demand_solve() {
        // Suppressions eat the balanced corners until the joining pair
        // becomes the first nontrivial separating pair.
        let inst = two_squares(&[]);
        assert_eq!(
            classify(&inst),
            Ok(Case::SuppressBalancedVertex {
                vertex: VertexId(3),
                contracted: EdgeId(2)
            })
        );
        let pair = solve_rooted(&inst).expect("two squares");
        // Zero demand means both components are genuine flows.
        assert!(flow::is_flow(&inst.graph, &pair.mod3).expect("total"));
        assert!(flow::is_flow(&inst.graph, &pair.mod2).expect("total"));
    }

    #[test]
    fn split_fires_without_suppressible_vertices() {
        // Charging every off-root degree-2 vertex disables suppression,
        // so the joining pair splits the instance immediately.
        let inst = two_squares(&[(3, 1), (5, 1), (7, 1)]);
        assert_eq!(
            classify(&inst),
            Ok(Case::SplitTwoCut {
                cut: (EdgeId(8), EdgeId(9))
            })
        );
        let pair = solve_rooted(&inst).expect("charged two squares");
        // The charges sit where they were demanded.
        for v in [3u32, 5, 7] {
            assert_eq!(flow::boundary_at(&inst.graph, &pair.mod3, VertexId(v)), 1);
        }
    }

    #[test]
    fn case_dispatch_is_ordered() {
        // On the subdivided theta the first case must be the interior
        // edge deletion: no balanced degree-2 vertex off the root, no
        // triangle, no nontrivial separating pair.
        let theta = graph(2, &[(0, 1), (0, 1), (0, 1)]);
        let sub = theta.subdivide_edge(EdgeId(0)).expect("subdivide");
        let mut root_mod2 = EdgeFunction::new(2);
        root_mod2.set(sub.halves[0], 1);
        root_mod2.set(sub.halves[1], 1);
        let mut root_mod3 = EdgeFunction::new(3);
        root_mod3.set(sub.halves[0], 1);
        root_mod3.set(sub.halves[1], 1);
        let inst = DemandInstance {
            graph: sub.graph,
            root: sub.midpoint,
            demand: BoundaryMap::new(3),
            root_mod2,
            root_mod3,
        };
        assert_eq!(
            classify(&inst),
            Ok(Case::DetachInteriorEdge { edge: EdgeId(1) })
        );
    }
}
