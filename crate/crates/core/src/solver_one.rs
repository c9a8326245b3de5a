//! First constructive 6-flow algorithm for cubic 3-edge-connected graphs.
//!
//! The recursion works on *rooted instances*: a graph with a distinguished
//! root vertex `u`, a ternary seed ψ3 on all root edges, and a parity seed
//! ψ2 on two distinguished root edges. Under the hypotheses
//!
//! 1. every vertex other than `u` has degree 3,
//! 2. the graph is 3-edge-connected,
//! 3. deleting `u` leaves a 2-edge-connected graph, and
//! 4. ψ3 has zero boundary at `u`,
//!
//! there are flows φ3 and φ2 extending the seeds whose pair is nonzero on
//! every edge away from the root ([`solve_rooted`]).
//!
//! The inductive step picks the smallest unpinned root edge `uv`, takes
//! the series class F of the pendant vertex `v`'s two remaining edges
//! inside g − u, and orders the components of (g − u) − F along their
//! quotient cycle starting at `{v}`. Extending ψ3 over F is a chase of
//! Kirchhoff equations around that cycle plus a circulation shift keeping
//! ψ3 nonzero on two sentinel connectors. Each component then becomes a
//! child instance by identifying everything else into a fresh root. Two
//! children (those meeting the pinned edges) must be solved before their
//! computed parity values can be pinned onto the remaining children, so
//! the recursion runs on an explicit work stack with enter / resume /
//! finish stages instead of call-stack recursion.
//!
//! [`solve_cubic`] wraps the recursion: it roots the graph at its smallest
//! vertex and picks seeds that make the final pair nonzero on the root
//! edges as well, yielding a nowhere-zero 6-flow pair.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cuts::{self, CycleOrder};
use crate::flow::{self, sub_mod, EdgeFunction, FlowPair};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Errors raised by the first solver.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOneError {
    /// An entry precondition of [`solve_cubic`] failed.
    Precondition(&'static str),
    /// A hypothesis of the rooted recursion failed on an instance.
    Hypothesis(&'static str),
    /// A solved instance violated the recursion's conclusions — a bug.
    Conclusion(&'static str),
    /// A structural invariant of the decomposition failed — a bug.
    Structure(&'static str),
}

impl fmt::Display for SolveOneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveOneError::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            SolveOneError::Hypothesis(msg) => write!(f, "hypothesis failed: {msg}"),
            SolveOneError::Conclusion(msg) => write!(f, "conclusion violated: {msg}"),
            SolveOneError::Structure(msg) => write!(f, "decomposition invariant failed: {msg}"),
        }
    }
}

/// A rooted instance of the recursion.
#[derive(Clone, Debug)]
pub struct RootedInstance {
    /// The instance graph.
    pub graph: MultiGraph,
    /// The root vertex `u`.
    pub root: VertexId,
    /// The two pinned root edges carrying the parity seed.
    pub pinned: [EdgeId; 2],
    /// Parity seed ψ2, defined exactly on the pinned edges.
    pub pinned_mod2: EdgeFunction,
    /// Ternary seed ψ3, defined exactly on the root edges, with zero
    /// boundary at the root.
    pub root_mod3: EdgeFunction,
}

/// Checks the structural shape and the four hypotheses of an instance.
fn check_hypotheses(inst: &RootedInstance) -> Result<(), SolveOneError> {
    let g = &inst.graph;
    if !g.contains_vertex(inst.root) {
        return Err(SolveOneError::Hypothesis(
            "the root must be a vertex of the graph",
        ));
    }
    let root_edges: BTreeSet<EdgeId> = g.incident_edges(inst.root).iter().copied().collect();
    let [s1, s2] = inst.pinned;
    if s1 == s2 || !root_edges.contains(&s1) || !root_edges.contains(&s2) {
        return Err(SolveOneError::Hypothesis(
            "the pinned edges must be two distinct root edges",
        ));
    }
    let pinned_domain: BTreeSet<EdgeId> = inst.pinned_mod2.domain().collect();
    if inst.pinned_mod2.modulus() != 2 || pinned_domain != inst.pinned.iter().copied().collect() {
        return Err(SolveOneError::Hypothesis(
            "the parity seed must cover exactly the pinned edges",
        ));
    }
    let mod3_domain: BTreeSet<EdgeId> = inst.root_mod3.domain().collect();
    if inst.root_mod3.modulus() != 3 || mod3_domain != root_edges {
        return Err(SolveOneError::Hypothesis(
            "the ternary seed must cover exactly the root edges",
        ));
    }
    if g.vertices().any(|v| v != inst.root && g.degree(v) != 3) {
        return Err(SolveOneError::Hypothesis(
            "every vertex other than the root must have degree 3",
        ));
    }
    if cuts::is_k_edge_connected(g, 3) != Ok(true) {
        return Err(SolveOneError::Hypothesis(
            "the graph must be 3-edge-connected",
        ));
    }
    let rootless = g
        .delete_vertex(inst.root)
        .map_err(|_| SolveOneError::Hypothesis("the root must be a vertex of the graph"))?;
    if cuts::is_k_edge_connected(&rootless.graph, 2) != Ok(true) {
        return Err(SolveOneError::Hypothesis(
            "deleting the root must leave a 2-edge-connected graph",
        ));
    }
    if flow::boundary_at(g, &inst.root_mod3, inst.root) != 0 {
        return Err(SolveOneError::Hypothesis(
            "the ternary seed must have zero boundary at the root",
        ));
    }
    Ok(())
}

/// Checks the recursion's conclusions for a solved instance.
fn check_conclusions(inst: &RootedInstance, pair: &FlowPair) -> Result<(), SolveOneError> {
    let g = &inst.graph;
    let report = flow::verify_pair(g, pair)
        .map_err(|_| SolveOneError::Conclusion("solution is not total on the instance graph"))?;
    if !report.mod3_violations.is_empty() {
        return Err(SolveOneError::Conclusion("ternary component is not a flow"));
    }
    if !report.mod2_violations.is_empty() {
        return Err(SolveOneError::Conclusion("parity component is not a flow"));
    }
    for (e, v) in inst.root_mod3.iter() {
        if pair.mod3.get(e) != Some(v) {
            return Err(SolveOneError::Conclusion(
                "ternary seed restriction violated",
            ));
        }
    }
    for (e, v) in inst.pinned_mod2.iter() {
        if pair.mod2.get(e) != Some(v) {
            return Err(SolveOneError::Conclusion(
                "parity seed restriction violated",
            ));
        }
    }
    let root_edges: BTreeSet<EdgeId> = g.incident_edges(inst.root).iter().copied().collect();
    if report
        .zero_pair_edges
        .iter()
        .any(|e| !root_edges.contains(e))
    {
        return Err(SolveOneError::Conclusion("zero pair away from the root"));
    }
    Ok(())
}

/// The fixed data of one inductive decomposition.
#[derive(Clone, Debug)]
struct Decomposition {
    /// Cycle order of the components of (g − u) − F, where F is the
    /// series class of the pendant vertex's two edges in g − u;
    /// component 0 is the pendant vertex alone.
    order: CycleOrder,
    /// Index i of the component met by the lower-attaching pinned edge.
    low: usize,
    /// Index j ≥ i of the component met by the other pinned edge.
    high: usize,
    /// The pinned edge attaching to component `low`.
    low_edge: EdgeId,
    /// The pinned edge attaching to component `high`.
    high_edge: EdgeId,
    /// ψ3 extended over δ(u) ∪ F.
    extended_mod3: EdgeFunction,
    /// Parity values fixed on class edges so far; grows when the pinned
    /// children report back.
    class_mod2: BTreeMap<EdgeId, u8>,
}

impl Decomposition {
    fn connector(&self, k: usize) -> EdgeId {
        self.order.connectors[k]
    }

    fn connector_before(&self, k: usize) -> EdgeId {
        let len = self.order.len();
        self.order.connectors[(k + len - 1) % len]
    }
}

/// One suspended instance on the work stack.
struct Frame {
    instance: RootedInstance,
    /// Which parent frame and child slot this frame reports to.
    parent: Option<(usize, usize)>,
    decomposition: Option<Decomposition>,
    /// Solved child pairs by component index.
    results: BTreeMap<usize, FlowPair>,
}

/// Work items: enter an instance (validate, decompose, spawn pinned
/// children), resume once the pinned children are solved (pin the
/// postponed parity values, spawn the rest), finish when all children are
/// solved (combine and deliver).
enum Task {
    Enter(usize),
    Resume(usize),
    Finish(usize),
}

/// Solves a rooted instance. Hypotheses are validated on every instance
/// entered — the top-level one and every recursive child — and the
/// conclusions are validated on every result before it is used.
pub fn solve_rooted(instance: &RootedInstance) -> Result<FlowPair, SolveOneError> {
    let mut frames: Vec<Frame> = vec![Frame {
        instance: instance.clone(),
        parent: None,
        decomposition: None,
        results: BTreeMap::new(),
    }];
    let mut tasks: Vec<Task> = vec![Task::Enter(0)];
    let mut final_pair: Option<FlowPair> = None;

    while let Some(task) = tasks.pop() {
        match task {
            Task::Enter(fi) => {
                check_hypotheses(&frames[fi].instance)?;
                if frames[fi].instance.graph.vertex_count() == 2 {
                    let pair = solve_base(&frames[fi].instance)?;
                    deliver(&mut frames, &mut final_pair, fi, pair)?;
                    continue;
                }
                let decomposition = decompose(&frames[fi].instance)?;
                let (low, high) = (decomposition.low, decomposition.high);
                frames[fi].decomposition = Some(decomposition);
                tasks.push(Task::Resume(fi));
                if low == high {
                    let child = make_child(&frames[fi], low)?;
                    push_child(&mut frames, &mut tasks, fi, low, child);
                } else {
                    // Push j then i so i is entered first; order is purely
                    // cosmetic since both must finish before the resume.
                    let child_high = make_child(&frames[fi], high)?;
                    push_child(&mut frames, &mut tasks, fi, high, child_high);
                    let child_low = make_child(&frames[fi], low)?;
                    push_child(&mut frames, &mut tasks, fi, low, child_low);
                }
            }
            Task::Resume(fi) => {
                let (low, high) = {
                    let d = frames[fi].decomposition.as_ref().expect("resumed frame");
                    (d.low, d.high)
                };
                // Copy the postponed parity values off the pinned
                // children's solutions.
                let before_low = frames[fi]
                    .decomposition
                    .as_ref()
                    .expect("resumed frame")
                    .connector_before(low);
                let at_high = frames[fi]
                    .decomposition
                    .as_ref()
                    .expect("resumed frame")
                    .connector(high);
                let low_value = frames[fi]
                    .results
                    .get(&low)
                    .and_then(|pair| pair.mod2.get(before_low))
                    .ok_or(SolveOneError::Structure("pinned child misses a connector"))?;
                let high_value = frames[fi]
                    .results
                    .get(&high)
                    .and_then(|pair| pair.mod2.get(at_high))
                    .ok_or(SolveOneError::Structure("pinned child misses a connector"))?;
                {
                    let d = frames[fi].decomposition.as_mut().expect("resumed frame");
                    d.class_mod2.insert(before_low, low_value);
                    d.class_mod2.insert(at_high, high_value);
                }
                tasks.push(Task::Finish(fi));
                let count = frames[fi]
                    .decomposition
                    .as_ref()
                    .expect("resumed frame")
                    .order
                    .len();
                for k in (0..count).rev() {
                    if k == low || k == high {
                        continue;
                    }
                    let child = make_child(&frames[fi], k)?;
                    push_child(&mut frames, &mut tasks, fi, k, child);
                }
            }
            Task::Finish(fi) => {
                let pair = combine(&frames[fi])?;
                deliver(&mut frames, &mut final_pair, fi, pair)?;
            }
        }
    }
    final_pair.ok_or(SolveOneError::Structure(
        "machine finished without a result",
    ))
}

/// Validates a finished pair and hands it to the parent frame (or out).
fn deliver(
    frames: &mut [Frame],
    final_pair: &mut Option<FlowPair>,
    fi: usize,
    pair: FlowPair,
) -> Result<(), SolveOneError> {
    check_conclusions(&frames[fi].instance, &pair)?;
    match frames[fi].parent {
        Some((pf, slot)) => {
            frames[pf].results.insert(slot, pair);
        }
        None => *final_pair = Some(pair),
    }
    Ok(())
}

fn push_child(
    frames: &mut Vec<Frame>,
    tasks: &mut Vec<Task>,
    parent: usize,
    slot: usize,
    instance: RootedInstance,
) {
    frames.push(Frame {
        instance,
        parent: Some((parent, slot)),
        decomposition: None,
        results: BTreeMap::new(),
    });
    tasks.push(Task::Enter(frames.len() - 1));
}

/// Base case: two vertices, three parallel edges. φ3 is the seed; the
/// unpinned edge's parity value balances the two pinned ones.
fn solve_base(inst: &RootedInstance) -> Result<FlowPair, SolveOneError> {
    let g = &inst.graph;
    if g.edge_count() != 3 {
        return Err(SolveOneError::Structure(
            "base instance must have three edges",
        ));
    }
    let mod3 = inst.root_mod3.clone();
    let mut mod2 = inst.pinned_mod2.clone();
    let third = g
        .edge_ids()
        .find(|e| !inst.pinned.contains(e))
        .ok_or(SolveOneError::Structure(
            "base instance must have an unpinned edge",
        ))?;
    let balance = (inst.pinned_mod2.get_or_zero(inst.pinned[0])
        + inst.pinned_mod2.get_or_zero(inst.pinned[1]))
        % 2;
    mod2.set(third, balance);
    FlowPair::new(g, mod2, mod3).map_err(|_| SolveOneError::Structure("base pair not total"))
}

/// Builds the inductive decomposition of an instance with ≥ 3 vertices.
fn decompose(inst: &RootedInstance) -> Result<Decomposition, SolveOneError> {
    let g = &inst.graph;
    let u = inst.root;
    let chosen = g
        .incident_edges(u)
        .iter()
        .copied()
        .find(|e| !inst.pinned.contains(e))
        .ok_or(SolveOneError::Structure("no unpinned root edge"))?;
    let pendant = g
        .other_end(chosen, u)
        .ok_or(SolveOneError::Structure("chosen edge lost its endpoint"))?;
    // The pendant vertex has exactly one edge to the root: a second one
    // would leave it with degree 1 in g − u, contradicting hypothesis 3.
    let back_edges = g
        .incident_edges(pendant)
        .iter()
        .filter(|&&e| g.other_end(e, pendant) == Some(u))
        .count();
    if back_edges != 1 {
        return Err(SolveOneError::Structure(
            "pendant vertex sees the root twice",
        ));
    }

    let rootless = g
        .delete_vertex(u)
        .map_err(|_| SolveOneError::Structure("root deletion failed"))?
        .graph;
    let pendant_edges: Vec<EdgeId> = rootless.incident_edges(pendant).to_vec();
    if pendant_edges.len() != 2 {
        return Err(SolveOneError::Structure(
            "pendant vertex is not degree 2 off the root",
        ));
    }
    let class = cuts::series_class_of(&rootless, pendant_edges[0])
        .map_err(|_| SolveOneError::Structure("series class computation failed"))?;
    if !class.contains(&pendant_edges[1]) {
        return Err(SolveOneError::Structure(
            "the pendant vertex's edges are not in series",
        ));
    }
    let order = cuts::quotient_cycle_order(&rootless, &class, pendant)
        .map_err(|_| SolveOneError::Structure("class quotient is not a cycle"))?;
    if order.components[0] != [pendant].into_iter().collect::<BTreeSet<_>>() {
        return Err(SolveOneError::Structure(
            "anchor component is not the pendant vertex alone",
        ));
    }

    // Locate the components the pinned edges attach to.
    let mut attach = [0usize; 2];
    for (slot, &s) in inst.pinned.iter().enumerate() {
        let x = g
            .other_end(s, u)
            .ok_or(SolveOneError::Structure("pinned edge lost its endpoint"))?;
        let k = order
            .component_of(x)
            .ok_or(SolveOneError::Structure("pinned edge attaches nowhere"))?;
        if k == 0 {
            return Err(SolveOneError::Structure(
                "pinned edge attaches to the pendant component",
            ));
        }
        attach[slot] = k;
    }
    let (low, high, low_edge, high_edge) = if attach[0] <= attach[1] {
        (attach[0], attach[1], inst.pinned[0], inst.pinned[1])
    } else {
        (attach[1], attach[0], inst.pinned[1], inst.pinned[0])
    };

    let extended_mod3 = extend_mod3_over_class(g, u, &inst.root_mod3, &order, low, high)?;

    // Parity seed on the class: 1 everywhere except the two connectors
    // whose values the pinned children will dictate.
    let skip_a = order.connectors[(low + order.len() - 1) % order.len()];
    let skip_b = order.connectors[high];
    let mut class_mod2 = BTreeMap::new();
    for &f in &class {
        if f != skip_a && f != skip_b {
            class_mod2.insert(f, 1u8);
        }
    }

    Ok(Decomposition {
        order,
        low,
        high,
        low_edge,
        high_edge,
        extended_mod3,
        class_mod2,
    })
}

/// Extends the ternary seed over the class connectors: chase Kirchhoff
/// around the quotient cycle from a zero start, then add the smallest
/// multiple of the cycle circulation keeping both sentinel connectors
/// (the one entering component `low`, the one leaving component `high`)
/// nonzero.
fn extend_mod3_over_class(
    g: &MultiGraph,
    root: VertexId,
    root_mod3: &EdgeFunction,
    order: &CycleOrder,
    low: usize,
    high: usize,
) -> Result<EdgeFunction, SolveOneError> {
    let len = order.len();
    // Orientation of each connector relative to the walk: +1 when its
    // tail sits in the component it leaves.
    let mut alignment: Vec<u8> = Vec::with_capacity(len);
    for (k, &f) in order.connectors.iter().enumerate() {
        let (tail, _) = g
            .endpoints(f)
            .ok_or(SolveOneError::Structure("connector missing from the graph"))?;
        alignment.push(if order.components[k].contains(&tail) {
            1
        } else {
            2
        });
    }
    // Known contribution of the root edges at each component.
    let mut known: Vec<u8> = vec![0; len];
    for &e in g.incident_edges(root) {
        let x = g.other_end(e, root).expect("root edge");
        let k = order
            .component_of(x)
            .ok_or(SolveOneError::Structure("root edge attaches nowhere"))?;
        let value = root_mod3.get_or_zero(e);
        let signed = if g.tail(e) == Some(x) {
            value
        } else {
            flow::neg_mod(value, 3)
        };
        known[k] = flow::add_mod(known[k], signed, 3);
    }
    // Chase: with x[0] = 0, the balance at component k reads
    //   known[k] − x[k−1]·align[k−1] + x[k]·align[k] ≡ 0 (mod 3),
    // and ±1 alignments are their own inverses mod 3.
    let mut values: Vec<u8> = vec![0; len];
    for k in 1..len {
        let carried = (values[k - 1] as u16 * alignment[k - 1] as u16 % 3) as u8;
        let rhs = sub_mod(carried, known[k], 3);
        values[k] = (rhs as u16 * alignment[k] as u16 % 3) as u8;
    }
    // The balance at component 0 is then automatic; check it anyway.
    let carried = (values[len - 1] as u16 * alignment[len - 1] as u16 % 3) as u8;
    let closing = flow::add_mod(known[0], sub_mod(0, carried, 3), 3);
    let closing = flow::add_mod(
        closing,
        (values[0] as u16 * alignment[0] as u16 % 3) as u8,
        3,
    );
    if closing != 0 {
        return Err(SolveOneError::Structure("class extension does not close"));
    }
    // Circulation shift: connector k changes by c·align[k].
    let sentinel_a = (low + len - 1) % len;
    let sentinel_b = high;
    let shift = (0..3u8)
        .find(|&c| {
            let a = flow::add_mod(
                values[sentinel_a],
                (c as u16 * alignment[sentinel_a] as u16 % 3) as u8,
                3,
            );
            let b = flow::add_mod(
                values[sentinel_b],
                (c as u16 * alignment[sentinel_b] as u16 % 3) as u8,
                3,
            );
            a != 0 && b != 0
        })
        .ok_or(SolveOneError::Structure(
            "no circulation shift keeps both sentinel connectors nonzero",
        ))?;

    let mut extended = root_mod3.clone();
    for (k, &f) in order.connectors.iter().enumerate() {
        let value = flow::add_mod(values[k], (shift as u16 * alignment[k] as u16 % 3) as u8, 3);
        extended.set(f, value);
    }

    // Sanity: on the quotient graph (root kept, every component fused to
    // a node) the extension must be a flow.
    let outcome = g
        .identify(&order.components)
        .map_err(|_| SolveOneError::Structure("quotient construction failed"))?;
    let quotient_domain: BTreeSet<EdgeId> = outcome.graph.edge_ids().collect();
    let restricted = extended.restricted_to(quotient_domain.iter().copied());
    match flow::is_flow(&outcome.graph, &restricted) {
        Ok(true) => {}
        _ => {
            return Err(SolveOneError::Structure(
                "class extension is not a quotient flow",
            ))
        }
    }
    Ok(extended)
}

/// Builds the child instance for component `k`: everything outside the
/// component is identified into a fresh root, the extended ternary seed
/// restricts to the new root's edges, and the parity pins are chosen per
/// the component's role.
fn make_child(frame: &Frame, k: usize) -> Result<RootedInstance, SolveOneError> {
    let inst = &frame.instance;
    let d = frame.decomposition.as_ref().expect("decomposed frame");
    let g = &inst.graph;
    let component = &d.order.components[k];
    let part: BTreeSet<VertexId> = g.vertices().filter(|v| !component.contains(v)).collect();
    let outcome = g
        .identify(core::slice::from_ref(&part))
        .map_err(|_| SolveOneError::Structure("child identification failed"))?;
    let child_root = outcome.class_vertices[0];
    let child_graph = outcome.graph;

    let root_edges: Vec<EdgeId> = child_graph.incident_edges(child_root).to_vec();
    let mod3 = d.extended_mod3.restricted_to(root_edges.iter().copied());
    if mod3.len() != root_edges.len() {
        return Err(SolveOneError::Structure(
            "child root edge misses a ternary value",
        ));
    }

    let (pinned, parity_values): ([EdgeId; 2], [u8; 2]) = if k == d.low && k == d.high {
        (
            inst.pinned,
            [
                inst.pinned_mod2.get_or_zero(inst.pinned[0]),
                inst.pinned_mod2.get_or_zero(inst.pinned[1]),
            ],
        )
    } else if k == d.low {
        let f = d.connector(k);
        let seed = *d
            .class_mod2
            .get(&f)
            .ok_or(SolveOneError::Structure("low child connector not seeded"))?;
        (
            [f, d.low_edge],
            [seed, inst.pinned_mod2.get_or_zero(d.low_edge)],
        )
    } else if k == d.high {
        let f = d.connector_before(k);
        let seed = *d
            .class_mod2
            .get(&f)
            .ok_or(SolveOneError::Structure("high child connector not seeded"))?;
        (
            [f, d.high_edge],
            [seed, inst.pinned_mod2.get_or_zero(d.high_edge)],
        )
    } else {
        let fa = d.connector_before(k);
        let fb = d.connector(k);
        let va = *d
            .class_mod2
            .get(&fa)
            .ok_or(SolveOneError::Structure("plain child connector not seeded"))?;
        let vb = *d
            .class_mod2
            .get(&fb)
            .ok_or(SolveOneError::Structure("plain child connector not seeded"))?;
        ([fa, fb], [va, vb])
    };
    let mut pinned_mod2 = EdgeFunction::new(2);
    pinned_mod2.set(pinned[0], parity_values[0]);
    pinned_mod2.set(pinned[1], parity_values[1]);
    Ok(RootedInstance {
        graph: child_graph,
        root: child_root,
        pinned,
        pinned_mod2,
        root_mod3: mod3,
    })
}

/// Combines all solved children of a frame into the frame's own solution:
/// union of the child functions, which agree on shared connectors.
fn combine(frame: &Frame) -> Result<FlowPair, SolveOneError> {
    let inst = &frame.instance;
    let d = frame.decomposition.as_ref().expect("decomposed frame");
    let count = d.order.len();
    if frame.results.len() != count {
        return Err(SolveOneError::Structure(
            "combine before all children finished",
        ));
    }
    let mut mod2 = EdgeFunction::new(2);
    let mut mod3 = EdgeFunction::new(3);
    for k in 0..count {
        let child = frame.results.get(&k).ok_or(SolveOneError::Structure(
            "combine before all children finished",
        ))?;
        for (e, v) in child.mod2.iter() {
            if let Some(prev) = mod2.get(e) {
                if prev != v {
                    return Err(SolveOneError::Structure(
                        "siblings disagree on a parity value",
                    ));
                }
            }
            mod2.set(e, v);
        }
        for (e, v) in child.mod3.iter() {
            if let Some(prev) = mod3.get(e) {
                if prev != v {
                    return Err(SolveOneError::Structure(
                        "siblings disagree on a ternary value",
                    ));
                }
            }
            mod3.set(e, v);
        }
    }
    FlowPair::new(&inst.graph, mod2, mod3)
        .map_err(|_| SolveOneError::Structure("combined solution not total"))
}

/// Computes a nowhere-zero 6-flow pair on a cubic 3-edge-connected graph.
///
/// Roots the recursion at the smallest vertex with seeds that keep the final
/// pair nonzero on the root edges too: ternary contributions +1, +2, 0 on
/// the three root edges in ascending id order, parity pins 0 and 1 on the
/// last two.
pub fn solve_cubic(g: &MultiGraph) -> Result<FlowPair, SolveOneError> {
    if g.vertices().any(|v| g.degree(v) != 3) {
        return Err(SolveOneError::Precondition("the graph must be cubic"));
    }
    if cuts::is_k_edge_connected(g, 3) != Ok(true) {
        return Err(SolveOneError::Precondition(
            "the graph must be 3-edge-connected",
        ));
    }
    let root = g
        .vertices()
        .next()
        .ok_or(SolveOneError::Precondition("the graph must not be empty"))?;
    let edges: Vec<EdgeId> = g.incident_edges(root).to_vec();
    debug_assert_eq!(edges.len(), 3);
    let mut root_mod3 = EdgeFunction::new(3);
    // Oriented contributions at the root: +1, +2, 0.
    for (e, contribution) in edges.iter().copied().zip([1u8, 2, 0]) {
        let toward = g.tail(e) == Some(root);
        root_mod3.set(
            e,
            if toward {
                contribution
            } else {
                flow::neg_mod(contribution, 3)
            },
        );
    }
    let mut pinned_mod2 = EdgeFunction::new(2);
    pinned_mod2.set(edges[1], 0);
    pinned_mod2.set(edges[2], 1);
    let instance = RootedInstance {
        graph: g.clone(),
        root,
        pinned: [edges[1], edges[2]],
        pinned_mod2,
        root_mod3,
    };
    let pair = solve_rooted(&instance)?;
    // The rooted recursion guarantees a nonzero pair away from the root;
    // the seeds cover the root edges (+1, +2 ternary, parity 1), so the
    // pair is nowhere-zero outright.
    let report = flow::verify_pair(g, &pair)
        .map_err(|_| SolveOneError::Conclusion("final pair not total"))?;
    if !report.passed() {
        return Err(SolveOneError::Conclusion(
            "final pair is not a nowhere-zero flow",
        ));
    }
    Ok(pair)
}
