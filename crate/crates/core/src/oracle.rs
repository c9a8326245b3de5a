//! Exhaustive search for nowhere-zero mod-k flows.
//!
//! The flows mod k on a graph form a group generated by the fundamental
//! cycles of any spanning forest: one basis vector per non-tree edge, with
//! entries ±1 along the cycle. Enumerating all k^dim coefficient
//! combinations therefore visits every flow exactly once. The search walks
//! coefficient space in lexicographic order (last coordinate fastest) and
//! maintains edge values incrementally, so each step costs only the length
//! of one basis cycle; it stops at the first witness whose values are all
//! nonzero.
//!
//! This module is deliberately independent of the constructive solvers —
//! it shares no code paths with them beyond the graph type — so it can
//! serve as ground truth in tests. [`is_nowhere_zero_mod_flow`] is the
//! matching direct checker.
//!
//! The search space is capped at [`DIMENSION_LIMIT`] basis cycles
//! (6^12 ≈ 2·10⁹ worst case); larger inputs are refused rather than
//! ground through.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::flow::EdgeFunction;
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Largest cycle-space dimension the enumerator accepts.
pub const DIMENSION_LIMIT: usize = 12;

/// Errors raised by the oracle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// The cycle space is too large to enumerate.
    DimensionTooLarge { dimension: usize, limit: usize },
    /// Moduli must lie in 2..=6.
    UnsupportedModulus(u8),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::DimensionTooLarge { dimension, limit } => write!(
                f,
                "cycle space dimension {dimension} exceeds the enumeration limit {limit}"
            ),
            OracleError::UnsupportedModulus(k) => {
                write!(f, "modulus {k} out of range (need 2..=6)")
            }
        }
    }
}

/// A signed cycle basis of the flow space: one vector per non-tree edge of
/// a spanning forest, entries ±1, each vector sorted by edge id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleBasis {
    /// One fundamental cycle per non-tree edge, ordered by that edge's id.
    vectors: Vec<Vec<(EdgeId, i8)>>,
    /// Edges of the spanning forest used.
    pub tree_edges: BTreeSet<EdgeId>,
}

impl CycleBasis {
    /// Dimension of the flow space: |E| − |V| + #components.
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// The fundamental cycle vectors, ordered by defining non-tree edge.
    pub fn vectors(&self) -> &[Vec<(EdgeId, i8)>] {
        &self.vectors
    }
}

/// Builds a fundamental cycle basis from a breadth-first spanning forest.
///
/// Each non-tree edge `e` yields the vector that is +1 on `e` and ±1 along
/// the tree path from `head(e)` back to `tail(e)` (+1 where the path runs
/// with the stored orientation).
pub fn cycle_basis(g: &MultiGraph) -> CycleBasis {
    // Forest: per vertex, the edge that discovered it and the parent.
    let mut parent: BTreeMap<VertexId, (EdgeId, VertexId)> = BTreeMap::new();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut tree_edges = BTreeSet::new();
    let mut order: Vec<VertexId> = Vec::new();
    for root in g.vertices() {
        if depth.contains_key(&root) {
            continue;
        }
        depth.insert(root, 0);
        order.clear();
        order.push(root);
        let mut cursor = 0;
        while cursor < order.len() {
            let v = order[cursor];
            cursor += 1;
            for &e in g.incident_edges(v) {
                let w = g.other_end(e, v).expect("incident edge");
                if !depth.contains_key(&w) {
                    depth.insert(w, depth[&v] + 1);
                    parent.insert(w, (e, v));
                    tree_edges.insert(e);
                    order.push(w);
                }
            }
        }
    }

    // Signed tree path from x up to y's level and onward to the meeting
    // point; returns (edge, sign) pairs for a walk x → … → y.
    let walk_up = |from: VertexId, to_depth: usize, path: &mut Vec<(EdgeId, i8)>| -> VertexId {
        let mut at = from;
        while depth[&at] > to_depth {
            let (e, up) = parent[&at];
            // Walking from `at` to `up`: positive if the edge is oriented
            // at → up.
            let sign = if g.tail(e) == Some(at) { 1 } else { -1 };
            path.push((e, sign));
            at = up;
        }
        at
    };

    let mut vectors = Vec::new();
    for (e, tail, head) in g.edges() {
        if tree_edges.contains(&e) {
            continue;
        }
        // Cycle: follow e tail → head, then walk the tree head → tail.
        let mut down: Vec<(EdgeId, i8)> = vec![(e, 1)];
        let mut up: Vec<(EdgeId, i8)> = Vec::new();
        let d = depth[&tail].min(depth[&head]);
        let mut a = walk_up(head, d, &mut down);
        let mut b = walk_up(tail, d, &mut up);
        while a != b {
            let (ea, ua) = parent[&a];
            down.push((ea, if g.tail(ea) == Some(a) { 1 } else { -1 }));
            a = ua;
            let (eb, ub) = parent[&b];
            up.push((eb, if g.tail(eb) == Some(b) { 1 } else { -1 }));
            b = ub;
        }
        // `down` runs head → lca with forward signs; `up` runs tail → lca,
        // and the cycle traverses it backwards (lca → tail), so flip it.
        for (e, s) in up {
            down.push((e, -s));
        }
        down.sort_unstable_by_key(|&(e, _)| e);
        vectors.push(down);
    }
    CycleBasis {
        vectors,
        tree_edges,
    }
}

/// Direct nowhere-zero mod-k flow check, independent of the solvers: `f`
/// must cover every edge, every value must be nonzero, and the signed
/// value sum at every vertex must vanish mod k.
pub fn is_nowhere_zero_mod_flow(g: &MultiGraph, f: &EdgeFunction, k: u8) -> bool {
    if f.modulus() != k || !(2..=6).contains(&k) {
        return false;
    }
    for e in g.edge_ids() {
        match f.get(e) {
            None | Some(0) => return false,
            Some(v) if v >= k => return false,
            Some(_) => {}
        }
    }
    for v in g.vertices() {
        let mut acc: i32 = 0;
        for &e in g.incident_edges(v) {
            let value = f.get_or_zero(e) as i32;
            if g.tail(e) == Some(v) {
                acc += value;
            } else {
                acc -= value;
            }
        }
        if acc.rem_euclid(k as i32) != 0 {
            return false;
        }
    }
    true
}

/// Searches exhaustively for a nowhere-zero mod-k flow.
///
/// Returns the first witness in lexicographic coefficient order, or `None`
/// when no nowhere-zero flow exists. The edgeless graph has the empty
/// witness; a graph with edges but trivial cycle space (a forest) has
/// none. Deterministic: same graph, same answer, always.
pub fn find_nowhere_zero_mod_flow(
    g: &MultiGraph,
    k: u8,
) -> Result<Option<EdgeFunction>, OracleError> {
    if !(2..=6).contains(&k) {
        return Err(OracleError::UnsupportedModulus(k));
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(Some(EdgeFunction::new(k)));
    }
    let basis = cycle_basis(g);
    let dim = basis.dimension();
    if dim > DIMENSION_LIMIT {
        return Err(OracleError::DimensionTooLarge {
            dimension: dim,
            limit: DIMENSION_LIMIT,
        });
    }
    if dim == 0 {
        // Edges but no cycles: some edge is a bridge; no nowhere-zero flow.
        return Ok(None);
    }

    // Dense edge indexing for the incremental updates.
    let edge_list: Vec<EdgeId> = g.edge_ids().collect();
    let index_of: BTreeMap<EdgeId, usize> =
        edge_list.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let dense: Vec<Vec<(usize, i8)>> = basis
        .vectors()
        .iter()
        .map(|vec| vec.iter().map(|&(e, s)| (index_of[&e], s)).collect())
        .collect();

    let mut values: Vec<u8> = vec![0; m];
    let mut zero_count = m;
    let mut digits: Vec<u8> = vec![0; dim];

    // Adds `delta` (mod k) times basis vector `i` to the edge values.
    let apply = |i: usize, delta: u8, values: &mut Vec<u8>, zero_count: &mut usize| {
        for &(idx, sign) in &dense[i] {
            let step = if sign > 0 { delta } else { (k - delta) % k };
            let old = values[idx];
            let new = (old + step) % k;
            values[idx] = new;
            if old == 0 && new != 0 {
                *zero_count -= 1;
            } else if old != 0 && new == 0 {
                *zero_count += 1;
            }
        }
    };

    // The all-zero combination is never nowhere-zero here (m > 0), so
    // advance the odometer first, last digit fastest.
    loop {
        let mut pos = dim;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if digits[pos] + 1 == k {
                digits[pos] = 0;
                // Stepping from k−1 back to 0 adds 1 mod k.
                apply(pos, 1, &mut values, &mut zero_count);
            } else {
                digits[pos] += 1;
                apply(pos, 1, &mut values, &mut zero_count);
                break;
            }
        }
        if zero_count == 0 {
            let mut witness = EdgeFunction::new(k);
            for (idx, &v) in values.iter().enumerate() {
                witness.set(edge_list[idx], v);
            }
            debug_assert!(is_nowhere_zero_mod_flow(g, &witness, k));
            return Ok(Some(witness));
        }
    }
}
