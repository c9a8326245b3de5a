//! Modular edge functions, boundaries, flow pairs, and the conversion
//! from mod-6 flows to integer flows.
//!
//! An [`EdgeFunction`] assigns residues mod k to edges; it may be partial
//! (seeds and intermediate extensions are), but flow verification demands
//! totality. The *boundary* of an edge function at a vertex is the sum of
//! the values on outgoing edges minus the sum on incoming ones, mod k; a
//! *flow* has zero boundary everywhere.
//!
//! A nowhere-zero 6-flow is represented as a [`FlowPair`]: a mod-2 and a
//! mod-3 flow that are never simultaneously zero on an edge. The pair
//! combines into a single mod-6 flow by the Chinese remainder theorem, and
//! [`to_integer_flow`] turns that into an integer flow with edge values in
//! ±{1, …, 5} by solving a small transshipment problem.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::cuts::CycleOrder;
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Errors raised by flow-algebra operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FlowError {
    /// Moduli must lie in 2..=6.
    BadModulus(u8),
    /// Two functions that must share a modulus do not.
    ModulusMismatch { left: u8, right: u8 },
    /// An operation expected a specific modulus.
    WrongModulus { expected: u8, got: u8 },
    /// A function is missing a value on an edge of the graph.
    MissingEdge(EdgeId),
    /// A function carries a value for an edge the graph does not have.
    ForeignEdge(EdgeId),
    /// The input must be a flow but has nonzero boundary at a vertex.
    NotAFlow(VertexId),
    /// The input must be nowhere-zero but vanishes on an edge.
    ZeroOnEdge(EdgeId),
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::BadModulus(k) => write!(f, "modulus {k} out of range (need 2..=6)"),
            FlowError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            FlowError::WrongModulus { expected, got } => {
                write!(f, "expected modulus {expected}, got {got}")
            }
            FlowError::MissingEdge(e) => write!(f, "no value on edge {e}"),
            FlowError::ForeignEdge(e) => write!(f, "value on edge {e} which the graph lacks"),
            FlowError::NotAFlow(v) => write!(f, "nonzero boundary at vertex {v}"),
            FlowError::ZeroOnEdge(e) => write!(f, "value vanishes on edge {e}"),
        }
    }
}

/// `(a + b) mod k` for residues `a, b < k`.
#[inline]
pub fn add_mod(a: u8, b: u8, k: u8) -> u8 {
    (a + b) % k
}

/// `(a - b) mod k` for residues `a, b < k`.
#[inline]
pub fn sub_mod(a: u8, b: u8, k: u8) -> u8 {
    (a + k - b) % k
}

/// `(-a) mod k` for a residue `a < k`.
#[inline]
pub fn neg_mod(a: u8, k: u8) -> u8 {
    (k - a) % k
}

/// A partial assignment of residues mod k to edges.
///
/// Stored zeros are meaningful: they put the edge in the *domain* while
/// keeping it out of the *support*. Seeds pin values (including zeros) on
/// specific edges; solvers extend the domain until it covers the graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeFunction {
    modulus: u8,
    values: BTreeMap<EdgeId, u8>,
}

impl EdgeFunction {
    /// Creates the empty function mod `k`. Panics unless 2 ≤ k ≤ 6 — a
    /// modulus outside that range is a programming error in this crate.
    pub fn new(modulus: u8) -> Self {
        assert!((2..=6).contains(&modulus), "modulus {modulus} out of range");
        EdgeFunction {
            modulus,
            values: BTreeMap::new(),
        }
    }

    /// The modulus k.
    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    /// Sets the value on `e` to `value mod k`, extending the domain.
    pub fn set(&mut self, e: EdgeId, value: u8) {
        self.values.insert(e, value % self.modulus);
    }

    /// Removes `e` from the domain.
    pub fn unset(&mut self, e: EdgeId) {
        self.values.remove(&e);
    }

    /// The value on `e`, or `None` if `e` is outside the domain.
    pub fn get(&self, e: EdgeId) -> Option<u8> {
        self.values.get(&e).copied()
    }

    /// The value on `e`, defaulting to 0 outside the domain.
    pub fn get_or_zero(&self, e: EdgeId) -> u8 {
        self.get(e).unwrap_or(0)
    }

    /// Number of edges in the domain.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True if the domain is empty.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Domain edges, ascending.
    pub fn domain(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.values.keys().copied()
    }

    /// `(edge, value)` pairs, ascending by edge.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, u8)> + '_ {
        self.values.iter().map(|(&e, &v)| (e, v))
    }

    /// Domain edges with nonzero value, ascending.
    pub fn support(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.values.iter().filter(|(_, &v)| v != 0).map(|(&e, _)| e)
    }

    /// Checks that the domain is exactly the edge set of `g`.
    pub fn check_total_on(&self, g: &MultiGraph) -> Result<(), FlowError> {
        for e in g.edge_ids() {
            if !self.values.contains_key(&e) {
                return Err(FlowError::MissingEdge(e));
            }
        }
        for &e in self.values.keys() {
            if !g.contains_edge(e) {
                return Err(FlowError::ForeignEdge(e));
            }
        }
        Ok(())
    }

    /// The restriction of the function to the given edges (intersected
    /// with the current domain).
    pub fn restricted_to(&self, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut out = EdgeFunction::new(self.modulus);
        for e in edges {
            if let Some(v) = self.get(e) {
                out.set(e, v);
            }
        }
        out
    }

    /// Pointwise sum over the union of the domains, treating missing
    /// values as 0. Fails on modulus mismatch.
    pub fn add(&self, other: &Self) -> Result<Self, FlowError> {
        if self.modulus != other.modulus {
            return Err(FlowError::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        let mut out = self.clone();
        for (e, v) in other.iter() {
            let cur = out.get_or_zero(e);
            out.set(e, add_mod(cur, v, self.modulus));
        }
        Ok(out)
    }

    /// Pointwise negation on the same domain.
    pub fn negated(&self) -> Self {
        let mut out = EdgeFunction::new(self.modulus);
        for (e, v) in self.iter() {
            out.set(e, neg_mod(v, self.modulus));
        }
        out
    }

    /// Pointwise scaling by `c` on the same domain.
    pub fn scaled(&self, c: u8) -> Self {
        let mut out = EdgeFunction::new(self.modulus);
        for (e, v) in self.iter() {
            out.set(e, (v as u16 * c as u16 % self.modulus as u16) as u8);
        }
        out
    }
}

/// A partial assignment of residues mod k to vertices — boundary values
/// and demand functions. Missing vertices count as 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryMap {
    modulus: u8,
    values: BTreeMap<VertexId, u8>,
}

impl BoundaryMap {
    /// Creates the empty (all-zero) map mod `k`. Panics unless 2 ≤ k ≤ 6.
    pub fn new(modulus: u8) -> Self {
        assert!((2..=6).contains(&modulus), "modulus {modulus} out of range");
        BoundaryMap {
            modulus,
            values: BTreeMap::new(),
        }
    }

    /// The modulus k.
    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    /// Sets the value at `v` to `value mod k`. Zero values erase the entry
    /// — the map stores the support only.
    pub fn set(&mut self, v: VertexId, value: u8) {
        let reduced = value % self.modulus;
        if reduced == 0 {
            self.values.remove(&v);
        } else {
            self.values.insert(v, reduced);
        }
    }

    /// The value at `v` (0 when absent).
    pub fn get(&self, v: VertexId) -> u8 {
        self.values.get(&v).copied().unwrap_or(0)
    }

    /// Vertices with nonzero value, ascending.
    pub fn support(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.values.keys().copied()
    }

    /// `(vertex, value)` pairs over the support, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u8)> + '_ {
        self.values.iter().map(|(&v, &x)| (v, x))
    }

    /// Sum of all values mod k (the total charge).
    pub fn total(&self) -> u8 {
        self.values
            .values()
            .fold(0u8, |acc, &v| add_mod(acc, v, self.modulus))
    }

    /// True if every value is zero.
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// Boundary of `f` at a single vertex: outgoing minus incoming values,
/// mod k. Missing edge values count as 0, so this is usable on seeds.
pub fn boundary_at(g: &MultiGraph, f: &EdgeFunction, v: VertexId) -> u8 {
    let k = f.modulus();
    let mut acc = 0u8;
    for &e in g.incident_edges(v) {
        let value = f.get_or_zero(e);
        let (tail, _) = g.endpoints(e).expect("incident edge");
        if tail == v {
            acc = add_mod(acc, value, k);
        } else {
            acc = sub_mod(acc, value, k);
        }
    }
    acc
}

/// Boundary of a total function at every vertex. Fails if `f` is not
/// total on `g`.
pub fn boundary(g: &MultiGraph, f: &EdgeFunction) -> Result<BoundaryMap, FlowError> {
    f.check_total_on(g)?;
    let mut out = BoundaryMap::new(f.modulus());
    for v in g.vertices() {
        out.set(v, boundary_at(g, f, v));
    }
    Ok(out)
}

/// True if `f` is a flow on `g`: total with zero boundary everywhere.
pub fn is_flow(g: &MultiGraph, f: &EdgeFunction) -> Result<bool, FlowError> {
    Ok(boundary(g, f)?.is_zero())
}

/// Solves for the single missing incident value at `v` so that the
/// boundary of `f` at `v` becomes `target`.
///
/// Exactly one edge at `v` must be outside the domain of `f`; its forced
/// value is returned (and not written back). Panics if zero or several
/// incident edges are missing — callers use this only in positions where
/// the shape is guaranteed.
pub fn solve_missing_at(g: &MultiGraph, f: &EdgeFunction, v: VertexId, target: u8) -> (EdgeId, u8) {
    let k = f.modulus();
    let missing: Vec<EdgeId> = g
        .incident_edges(v)
        .iter()
        .copied()
        .filter(|&e| f.get(e).is_none())
        .collect();
    assert_eq!(
        missing.len(),
        1,
        "exactly one incident edge at {v} may be undetermined"
    );
    let e = missing[0];
    let partial = boundary_at(g, f, v);
    // partial + sign·x ≡ target, with sign = +1 when v is the tail.
    let gap = sub_mod(target % k, partial, k);
    let (tail, _) = g.endpoints(e).expect("incident edge");
    let x = if tail == v { gap } else { neg_mod(gap, k) };
    (e, x)
}

/// Checks the cut-sum identity for a vertex set `side`: the boundary sum
/// over `side` equals the signed sum of `f` over the edges leaving it.
/// Returns the common value. Fails if `f` lacks a value on a crossing
/// edge or an interior one (totality keeps the statement honest).
pub fn cut_sum(
    g: &MultiGraph,
    f: &EdgeFunction,
    side: &BTreeSet<VertexId>,
) -> Result<u8, FlowError> {
    f.check_total_on(g)?;
    let k = f.modulus();
    let mut by_vertices = 0u8;
    for &v in side {
        by_vertices = add_mod(by_vertices, boundary_at(g, f, v), k);
    }
    let mut by_edges = 0u8;
    for (e, tail, head) in g.edges() {
        let out = side.contains(&tail);
        let into = side.contains(&head);
        if out && !into {
            by_edges = add_mod(by_edges, f.get_or_zero(e), k);
        } else if into && !out {
            by_edges = sub_mod(by_edges, f.get_or_zero(e), k);
        }
    }
    debug_assert_eq!(by_vertices, by_edges, "cut-sum identity");
    Ok(by_edges)
}

/// A mod-2 flow and a mod-3 flow on the same graph, the crate's working
/// representation of a 6-flow. Construction checks totality and moduli;
/// the flow conditions themselves are checked by [`verify_pair`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlowPair {
    /// The mod-2 component.
    pub mod2: EdgeFunction,
    /// The mod-3 component.
    pub mod3: EdgeFunction,
}

impl FlowPair {
    /// Bundles two total edge functions (mod 2 and mod 3) on `g`.
    pub fn new(g: &MultiGraph, mod2: EdgeFunction, mod3: EdgeFunction) -> Result<Self, FlowError> {
        if mod2.modulus() != 2 {
            return Err(FlowError::WrongModulus {
                expected: 2,
                got: mod2.modulus(),
            });
        }
        if mod3.modulus() != 3 {
            return Err(FlowError::WrongModulus {
                expected: 3,
                got: mod3.modulus(),
            });
        }
        mod2.check_total_on(g)?;
        mod3.check_total_on(g)?;
        Ok(FlowPair { mod2, mod3 })
    }

    /// The pair of values on edge `e` (`None` outside the domain).
    pub fn values(&self, e: EdgeId) -> Option<(u8, u8)> {
        Some((self.mod2.get(e)?, self.mod3.get(e)?))
    }
}

/// Outcome of [`verify_pair`]: all the ways a pair can fail to be a
/// nowhere-zero 6-flow, each list ascending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PairReport {
    /// Vertices where the mod-2 boundary is nonzero.
    pub mod2_violations: Vec<VertexId>,
    /// Vertices where the mod-3 boundary is nonzero.
    pub mod3_violations: Vec<VertexId>,
    /// Edges where both components vanish.
    pub zero_pair_edges: Vec<EdgeId>,
}

impl PairReport {
    /// True if the pair is a nowhere-zero 6-flow.
    pub fn passed(&self) -> bool {
        self.mod2_violations.is_empty()
            && self.mod3_violations.is_empty()
            && self.zero_pair_edges.is_empty()
    }
}

/// Verifies that `pair` is a nowhere-zero 6-flow on `g`: both components
/// are flows and no edge carries (0, 0). Fails only on totality/modulus
/// problems; semantic violations are reported, not errored.
pub fn verify_pair(g: &MultiGraph, pair: &FlowPair) -> Result<PairReport, FlowError> {
    pair.mod2.check_total_on(g)?;
    pair.mod3.check_total_on(g)?;
    let mut report = PairReport::default();
    for v in g.vertices() {
        if boundary_at(g, &pair.mod2, v) != 0 {
            report.mod2_violations.push(v);
        }
        if boundary_at(g, &pair.mod3, v) != 0 {
            report.mod3_violations.push(v);
        }
    }
    for e in g.edge_ids() {
        if pair.mod2.get_or_zero(e) == 0 && pair.mod3.get_or_zero(e) == 0 {
            report.zero_pair_edges.push(e);
        }
    }
    Ok(report)
}

/// Combines a flow pair into a single mod-6 function by the Chinese
/// remainder theorem: the unique residue that is `a` mod 2 and `b` mod 3
/// is `(3a + 4b) mod 6`.
pub fn crt_combine(pair: &FlowPair) -> EdgeFunction {
    let mut out = EdgeFunction::new(6);
    for (e, a) in pair.mod2.iter() {
        let b = pair.mod3.get_or_zero(e);
        out.set(e, (3 * a + 4 * b) % 6);
    }
    out
}

/// Splits a mod-6 function into its mod-2 and mod-3 residues (the inverse
/// of [`crt_combine`] on total functions).
pub fn split_mod6(f6: &EdgeFunction) -> Result<(EdgeFunction, EdgeFunction), FlowError> {
    if f6.modulus() != 6 {
        return Err(FlowError::WrongModulus {
            expected: 6,
            got: f6.modulus(),
        });
    }
    let mut mod2 = EdgeFunction::new(2);
    let mut mod3 = EdgeFunction::new(3);
    for (e, v) in f6.iter() {
        mod2.set(e, v % 2);
        mod3.set(e, v % 3);
    }
    Ok((mod2, mod3))
}

/// The mod-3 circulation of strength `c` around a quotient cycle: value
/// ±c on each connector, signed so that the cycle is traversed
/// consistently (`+c` when the connector's tail sits in the component the
/// walk leaves). With `c = 0` this is the zero function on the class.
pub fn circulation_on_class(g: &MultiGraph, order: &CycleOrder, c: u8) -> EdgeFunction {
    let mut out = EdgeFunction::new(3);
    for (k, &e) in order.connectors.iter().enumerate() {
        let (tail, _) = g.endpoints(e).expect("connector edge");
        let aligned = order.components[k].contains(&tail);
        out.set(e, if aligned { c % 3 } else { neg_mod(c % 3, 3) });
    }
    out
}

/// An integer-valued assignment on edges, used for the final ±{1..5}
/// flows.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntegerFlow {
    values: BTreeMap<EdgeId, i64>,
}

impl IntegerFlow {
    /// Creates an empty assignment.
    pub fn new() -> Self {
        IntegerFlow::default()
    }

    /// Sets the value on `e`.
    pub fn set(&mut self, e: EdgeId, value: i64) {
        self.values.insert(e, value);
    }

    /// The value on `e`, or `None` outside the domain.
    pub fn get(&self, e: EdgeId) -> Option<i64> {
        self.values.get(&e).copied()
    }

    /// `(edge, value)` pairs, ascending by edge.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, i64)> + '_ {
        self.values.iter().map(|(&e, &v)| (e, v))
    }

    /// Number of edges in the domain.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True if the domain is empty.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The residues of the values mod k, as an [`EdgeFunction`].
    pub fn residues(&self, k: u8) -> EdgeFunction {
        let mut out = EdgeFunction::new(k);
        for (e, v) in self.iter() {
            out.set(e, v.rem_euclid(k as i64) as u8);
        }
        out
    }
}

/// Outcome of [`verify_integer_flow`], each list ascending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntegerReport {
    /// Vertices where the signed value sum is nonzero.
    pub kirchhoff_violations: Vec<VertexId>,
    /// Edges whose value lies outside ±{1, …, bound−1}.
    pub range_violations: Vec<EdgeId>,
    /// Edges missing from the assignment.
    pub missing_edges: Vec<EdgeId>,
}

impl IntegerReport {
    /// True if the assignment is a nowhere-zero integer flow in range.
    pub fn passed(&self) -> bool {
        self.kirchhoff_violations.is_empty()
            && self.range_violations.is_empty()
            && self.missing_edges.is_empty()
    }
}

/// Verifies that `f` is an integer flow on `g` with `0 < |f(e)| < bound`
/// on every edge.
pub fn verify_integer_flow(g: &MultiGraph, f: &IntegerFlow, bound: i64) -> IntegerReport {
    let mut report = IntegerReport::default();
    for e in g.edge_ids() {
        match f.get(e) {
            None => report.missing_edges.push(e),
            Some(v) => {
                if v == 0 || v.abs() >= bound {
                    report.range_violations.push(e);
                }
            }
        }
    }
    for v in g.vertices() {
        let mut acc: i64 = 0;
        for &e in g.incident_edges(v) {
            let value = f.get(e).unwrap_or(0);
            let (tail, _) = g.endpoints(e).expect("incident edge");
            acc += if tail == v { value } else { -value };
        }
        if acc != 0 {
            report.kirchhoff_violations.push(v);
        }
    }
    report
}

/// Converts a nowhere-zero mod-6 flow into an integer flow with values in
/// ±{1, …, 5} congruent to the input mod 6.
///
/// Representatives in {1, …, 5} give boundaries divisible by 6; dividing
/// by 6 yields integer vertex demands satisfied by a 0/1 correction: each
/// unit of surplus is routed to a deficit along an augmenting path in the
/// residual orientation, and every edge picked up by a path has its
/// representative shifted down by 6. Feasibility is guaranteed for flow
/// inputs, so exhausting the search is a panic, not an error.
pub fn to_integer_flow(g: &MultiGraph, f6: &EdgeFunction) -> Result<IntegerFlow, FlowError> {
    if f6.modulus() != 6 {
        return Err(FlowError::WrongModulus {
            expected: 6,
            got: f6.modulus(),
        });
    }
    f6.check_total_on(g)?;
    for (e, v) in f6.iter() {
        if v == 0 {
            return Err(FlowError::ZeroOnEdge(e));
        }
    }
    let bd = boundary(g, f6)?;
    if let Some(v) = bd.support().next() {
        return Err(FlowError::NotAFlow(v));
    }

    // Integer demands: boundary of the representatives, divided by 6.
    let mut demand: BTreeMap<VertexId, i64> = BTreeMap::new();
    for v in g.vertices() {
        let mut acc: i64 = 0;
        for &e in g.incident_edges(v) {
            let r = f6.get_or_zero(e) as i64;
            let (tail, _) = g.endpoints(e).expect("incident edge");
            acc += if tail == v { r } else { -r };
        }
        debug_assert_eq!(
            acc.rem_euclid(6),
            0,
            "representative boundary divisible by 6"
        );
        demand.insert(v, acc / 6);
    }

    // 0/1 transshipment: find S ⊆ E with ∂χ_S = demand, then subtract 6
    // on S. Augment one unit at a time from the smallest surplus vertex.
    let mut chosen: BTreeSet<EdgeId> = BTreeSet::new();
    while let Some((&source, _)) = demand.iter().find(|(_, &d)| d > 0) {
        // BFS in the residual orientation: unchosen edges forward
        // (tail → head), chosen edges backward (head → tail).
        let mut parent: BTreeMap<VertexId, (EdgeId, bool)> = BTreeMap::new();
        let mut queue: VecDeque<VertexId> = [source].into_iter().collect();
        let mut seen: BTreeSet<VertexId> = [source].into_iter().collect();
        let mut sink = None;
        'search: while let Some(x) = queue.pop_front() {
            for &e in g.incident_edges(x) {
                let (tail, head) = g.endpoints(e).expect("incident edge");
                let next = if !chosen.contains(&e) && tail == x {
                    head
                } else if chosen.contains(&e) && head == x {
                    tail
                } else {
                    continue;
                };
                if !seen.insert(next) {
                    continue;
                }
                parent.insert(next, (e, !chosen.contains(&e)));
                if demand[&next] < 0 {
                    sink = Some(next);
                    break 'search;
                }
                queue.push_back(next);
            }
        }
        let sink = sink.unwrap_or_else(|| {
            // A flow's demands always balance within reach; failing to
            // find a deficit contradicts the flow checks above.
            panic!("transshipment infeasible on a verified flow")
        });
        let mut at = sink;
        while at != source {
            let (e, forward) = parent[&at];
            if forward {
                chosen.insert(e);
                at = g.tail(e).expect("edge");
            } else {
                chosen.remove(&e);
                at = g.head(e).expect("edge");
            }
        }
        *demand.get_mut(&source).expect("vertex") -= 1;
        *demand.get_mut(&sink).expect("vertex") += 1;
    }

    let mut out = IntegerFlow::new();
    for (e, v) in f6.iter() {
        let r = v as i64;
        out.set(e, if chosen.contains(&e) { r - 6 } else { r });
    }
    debug_assert!(verify_integer_flow(g, &out, 6).passed());
    Ok(out)
}
