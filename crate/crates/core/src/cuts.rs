//! Connectivity structure: bridges, cut vertices, 2-edge-cuts, series
//! classes, and cycle-shaped quotients.
//!
//! Everything here is deterministic and multigraph-aware. Depth-first
//! search tracks the *edge* it entered a vertex by, not the parent vertex,
//! so parallel edges are handled correctly (a pair of parallel edges is
//! never a bridge).
//!
//! Two distinct non-bridge edges `{e, f}` form a *2-edge-cut* if removing
//! both disconnects the component containing them. On a connected
//! bridgeless graph the relation "equal or forming a 2-edge-cut" is an
//! equivalence; its classes are the *series classes*. Deleting a whole
//! series class `F` from a connected bridgeless graph splits it into
//! `|F|` components arranged in a cycle, which [`quotient_cycle_order`]
//! recovers and orders.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Errors raised by the connectivity analyses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CutError {
    /// The operation requires a connected graph.
    Disconnected,
    /// The operation requires a bridgeless graph.
    HasBridge(EdgeId),
    /// `is_k_edge_connected` supports only k ∈ {1, 2, 3}.
    UnsupportedConnectivity(u8),
    /// An edge id that is not present in the graph.
    UnknownEdge(EdgeId),
    /// A vertex id that is not present in the graph.
    UnknownVertex(VertexId),
    /// The edge set passed to `quotient_cycle_order` is not a class whose
    /// removal leaves components arranged in one cycle.
    QuotientNotCycle,
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::Disconnected => write!(f, "graph is disconnected"),
            CutError::HasBridge(e) => write!(f, "graph has a bridge (edge {e})"),
            CutError::UnsupportedConnectivity(k) => {
                write!(
                    f,
                    "edge connectivity check supports only k = 1, 2, 3 (got {k})"
                )
            }
            CutError::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            CutError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            CutError::QuotientNotCycle => {
                write!(
                    f,
                    "deleting the edge set does not leave a single cycle of components"
                )
            }
        }
    }
}

/// Cut data of a connected graph, as computed by [`analyze`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CutStructure {
    /// Edges whose removal disconnects the graph, ascending.
    pub bridges: BTreeSet<EdgeId>,
    /// Vertices whose removal disconnects the graph, ascending.
    pub cut_vertices: BTreeSet<VertexId>,
    /// All 2-edge-cuts `{e, f}` (both non-bridges), stored as pairs with
    /// `e < f`, ordered lexicographically.
    pub two_cuts: BTreeSet<(EdgeId, EdgeId)>,
    /// Series classes, present only when the graph is bridgeless. Classes
    /// are sorted by their smallest edge; singleton classes are included.
    series: Option<Vec<BTreeSet<EdgeId>>>,
}

impl CutStructure {
    /// Series classes, or `None` when the graph has bridges.
    pub fn series_classes(&self) -> Option<&[BTreeSet<EdgeId>]> {
        self.series.as_deref()
    }
}

/// Components of a series class deleted from a connected bridgeless graph,
/// arranged along their quotient cycle.
///
/// `components[k]` and `components[(k + 1) % len]` are joined by the class
/// edge `connectors[k]`; the class is exactly the set of connectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleOrder {
    /// Vertex sets of the components of g − class, in cycle order starting
    /// at the component containing the anchor vertex.
    pub components: Vec<BTreeSet<VertexId>>,
    /// `connectors[k]` joins `components[k]` to `components[(k+1) % len]`.
    pub connectors: Vec<EdgeId>,
}

impl CycleOrder {
    /// Number of components (equals the number of connectors).
    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// True if there are no components (never produced by a successful
    /// analysis; provided for completeness).
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Index of the component containing `v`, if any.
    pub fn component_of(&self, v: VertexId) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&v))
    }
}

/// Result of one depth-first sweep: bridges and cut vertices together.
struct DfsCuts {
    bridges: BTreeSet<EdgeId>,
    cut_vertices: BTreeSet<VertexId>,
}

/// Iterative lowpoint DFS over all components. Tracks the entering edge id
/// so parallel edges count as back edges rather than tree-edge revisits.
fn dfs_cuts(g: &MultiGraph) -> DfsCuts {
    struct Frame {
        vertex: VertexId,
        entry_edge: Option<EdgeId>,
        next_slot: usize,
        child_count: usize,
        is_articulation: bool,
    }

    let mut disc: BTreeMap<VertexId, u32> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, u32> = BTreeMap::new();
    let mut time: u32 = 0;
    let mut bridges = BTreeSet::new();
    let mut cut_vertices = BTreeSet::new();

    for root in g.vertices() {
        if disc.contains_key(&root) {
            continue;
        }
        disc.insert(root, time);
        low.insert(root, time);
        time += 1;
        let mut stack: Vec<Frame> = Vec::new();
        stack.push(Frame {
            vertex: root,
            entry_edge: None,
            next_slot: 0,
            child_count: 0,
            is_articulation: false,
        });
        while let Some(frame) = stack.last_mut() {
            let v = frame.vertex;
            let slots = g.incident_edges(v);
            if frame.next_slot < slots.len() {
                let e = slots[frame.next_slot];
                frame.next_slot += 1;
                if frame.entry_edge == Some(e) {
                    continue;
                }
                let w = g.other_end(e, v).expect("incident edge");
                if let Some(&dw) = disc.get(&w) {
                    // Back (or forward) edge: relax the lowpoint.
                    let lv = low.get_mut(&v).expect("visited");
                    if dw < *lv {
                        *lv = dw;
                    }
                } else {
                    frame.child_count += 1;
                    disc.insert(w, time);
                    low.insert(w, time);
                    time += 1;
                    stack.push(Frame {
                        vertex: w,
                        entry_edge: Some(e),
                        next_slot: 0,
                        child_count: 0,
                        is_articulation: false,
                    });
                }
            } else {
                // v is finished; fold its lowpoint into the parent.
                let finished = stack.pop().expect("nonempty");
                let v = finished.vertex;
                let lv = *low.get(&v).expect("visited");
                if finished.is_articulation
                    || (finished.entry_edge.is_none() && finished.child_count >= 2)
                {
                    cut_vertices.insert(v);
                }
                if let Some(parent) = stack.last_mut() {
                    let p = parent.vertex;
                    let dp = *disc.get(&p).expect("visited");
                    if lv > dp {
                        bridges.insert(finished.entry_edge.expect("non-root has entry"));
                    }
                    if parent.entry_edge.is_some() && lv >= dp {
                        parent.is_articulation = true;
                    }
                    let lp = low.get_mut(&p).expect("visited");
                    if lv < *lp {
                        *lp = lv;
                    }
                }
            }
        }
    }
    DfsCuts {
        bridges,
        cut_vertices,
    }
}

/// Edges whose removal increases the number of components. Works on any
/// graph, component by component.
pub fn bridges(g: &MultiGraph) -> BTreeSet<EdgeId> {
    dfs_cuts(g).bridges
}

/// Vertices whose removal increases the number of components. Works on any
/// graph, component by component.
pub fn cut_vertices(g: &MultiGraph) -> BTreeSet<VertexId> {
    dfs_cuts(g).cut_vertices
}

/// All 2-edge-cuts: unordered pairs of distinct non-bridge edges whose
/// joint removal disconnects their component. Pairs are normalized with
/// the smaller id first.
pub fn two_edge_cuts(g: &MultiGraph) -> BTreeSet<(EdgeId, EdgeId)> {
    let bridge_set = bridges(g);
    let mut cuts = BTreeSet::new();
    for e in g.edge_ids() {
        if bridge_set.contains(&e) {
            continue;
        }
        let reduced = g.delete_edge(e).expect("own edge").graph;
        for f in bridges(&reduced) {
            if !bridge_set.contains(&f) {
                let pair = if e < f { (e, f) } else { (f, e) };
                cuts.insert(pair);
            }
        }
    }
    cuts
}

/// Computes the full [`CutStructure`] of a connected graph.
pub fn analyze(g: &MultiGraph) -> Result<CutStructure, CutError> {
    if !g.is_connected() {
        return Err(CutError::Disconnected);
    }
    let DfsCuts {
        bridges,
        cut_vertices,
    } = dfs_cuts(g);
    let two_cuts = two_edge_cuts(g);
    let series = if bridges.is_empty() {
        Some(series_classes_from_cuts(g, &two_cuts))
    } else {
        None
    };
    Ok(CutStructure {
        bridges,
        cut_vertices,
        two_cuts,
        series,
    })
}

/// Union-find closure of the 2-edge-cut relation over all edges.
fn series_classes_from_cuts(
    g: &MultiGraph,
    two_cuts: &BTreeSet<(EdgeId, EdgeId)>,
) -> Vec<BTreeSet<EdgeId>> {
    // Adjacency between edges related by some 2-edge-cut.
    let mut related: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    for &(e, f) in two_cuts {
        related.entry(e).or_default().push(f);
        related.entry(f).or_default().push(e);
    }
    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut classes = Vec::new();
    for e in g.edge_ids() {
        if seen.contains(&e) {
            continue;
        }
        let mut class = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back(e);
        seen.insert(e);
        class.insert(e);
        while let Some(x) = queue.pop_front() {
            if let Some(partners) = related.get(&x) {
                for &y in partners {
                    if seen.insert(y) {
                        class.insert(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        classes.push(class);
    }
    classes
}

/// The series class of `e` in a connected bridgeless graph, computed
/// incrementally: repeatedly delete a class member and absorb the edges
/// that become bridges. Cheaper than [`analyze`] when only one class is
/// needed.
pub fn series_class_of(g: &MultiGraph, e: EdgeId) -> Result<BTreeSet<EdgeId>, CutError> {
    if !g.contains_edge(e) {
        return Err(CutError::UnknownEdge(e));
    }
    if !g.is_connected() {
        return Err(CutError::Disconnected);
    }
    if let Some(&b) = bridges(g).iter().next() {
        return Err(CutError::HasBridge(b));
    }
    let mut class: BTreeSet<EdgeId> = [e].into_iter().collect();
    let mut queue: VecDeque<EdgeId> = [e].into_iter().collect();
    while let Some(x) = queue.pop_front() {
        let reduced = g.delete_edge(x).expect("class member").graph;
        for f in bridges(&reduced) {
            if class.insert(f) {
                queue.push_back(f);
            }
        }
    }
    Ok(class)
}

/// Checks k-edge-connectivity for k ∈ {1, 2, 3}.
///
/// Graphs with at most one vertex count as k-edge-connected for every
/// supported k: there is no two-sided edge cut to destroy.
pub fn is_k_edge_connected(g: &MultiGraph, k: u8) -> Result<bool, CutError> {
    if !(1..=3).contains(&k) {
        return Err(CutError::UnsupportedConnectivity(k));
    }
    if g.vertex_count() <= 1 {
        return Ok(true);
    }
    if !g.is_connected() {
        return Ok(false);
    }
    if k >= 2 && !bridges(g).is_empty() {
        return Ok(false);
    }
    if k >= 3 && !two_edge_cuts(g).is_empty() {
        return Ok(false);
    }
    Ok(true)
}

/// Orders the components left by deleting a series class from a connected
/// bridgeless graph along their quotient cycle.
///
/// `class` must contain at least two edges. The walk starts at the
/// component containing `anchor` and proceeds over that component's
/// smaller-id connector, which pins the direction; the result lists every
/// component exactly once. Fails with [`CutError::QuotientNotCycle`] if
/// the components do not form a single cycle.
pub fn quotient_cycle_order(
    g: &MultiGraph,
    class: &BTreeSet<EdgeId>,
    anchor: VertexId,
) -> Result<CycleOrder, CutError> {
    if !g.contains_vertex(anchor) {
        return Err(CutError::UnknownVertex(anchor));
    }
    for &e in class {
        if !g.contains_edge(e) {
            return Err(CutError::UnknownEdge(e));
        }
    }
    if !g.is_connected() {
        return Err(CutError::Disconnected);
    }
    if class.len() < 2 {
        return Err(CutError::QuotientNotCycle);
    }
    let remainder = g.delete_edges(class).expect("validated").graph;
    let components = remainder.components();
    let count = components.len();
    if count != class.len() {
        return Err(CutError::QuotientNotCycle);
    }
    let mut comp_of: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            comp_of.insert(v, i);
        }
    }
    // Each component must meet exactly two class edges (counted with
    // multiplicity at the component, which here equals plain incidence
    // because class edges never have both ends in one component).
    let mut touching: Vec<Vec<EdgeId>> = (0..count).map(|_| Vec::new()).collect();
    for &e in class {
        let (t, h) = g.endpoints(e).expect("validated");
        let (ct, ch) = (comp_of[&t], comp_of[&h]);
        if ct == ch {
            return Err(CutError::QuotientNotCycle);
        }
        touching[ct].push(e);
        touching[ch].push(e);
    }
    if touching.iter().any(|list| list.len() != 2) {
        return Err(CutError::QuotientNotCycle);
    }
    for list in &mut touching {
        list.sort_unstable();
    }

    // Walk the quotient starting at the anchor component, over its
    // smaller-id connector first.
    let start = comp_of[&anchor];
    let mut order = Vec::with_capacity(count);
    let mut connectors = Vec::with_capacity(count);
    let mut current = start;
    let mut via = touching[start][0];
    for _ in 0..count {
        order.push(current);
        connectors.push(via);
        let (t, h) = g.endpoints(via).expect("class edge");
        let (ct, ch) = (comp_of[&t], comp_of[&h]);
        let next = if ct == current { ch } else { ct };
        let pair = &touching[next];
        let onward = if pair[0] == via { pair[1] } else { pair[0] };
        current = next;
        via = onward;
    }
    // The walk must close and must have visited every component once.
    if current != start {
        return Err(CutError::QuotientNotCycle);
    }
    let distinct: BTreeSet<usize> = order.iter().copied().collect();
    if distinct.len() != count {
        return Err(CutError::QuotientNotCycle);
    }

    let picked: Vec<BTreeSet<VertexId>> =
        order.iter().map(|&idx| components[idx].clone()).collect();
    Ok(CycleOrder {
        components: picked,
        connectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn graph(n: u32, arcs: &[(u32, u32)]) -> MultiGraph {
        let mut g = MultiGraph::new();
        let vs = g.add_vertices(n as usize);
        for &(t, h) in arcs {
            g.add_edge(vs[t as usize], vs[h as usize])
                .expect("test edge");
        }
        g
    }

    fn ids(list: &[u32]) -> BTreeSet<EdgeId> {
        list.iter().map(|&i| EdgeId(i)).collect()
    }

    /// Reference bridge finder: delete each edge and count components.
    fn bridges_by_deletion(g: &MultiGraph) -> BTreeSet<EdgeId> {
        let base = g.components().len();
        g.edge_ids()
            .filter(|&e| g.delete_edge(e).expect("edge").graph.components().len() > base)
            .collect()
    }

    /// Reference cut-vertex finder: v cuts iff its component falls apart
    /// into ≥ 2 pieces, i.e. deleting v strictly increases the component
    /// count (the count would stay flat for a harmless vertex and drop by
    /// one for an isolated one).
    fn cut_vertices_by_deletion(g: &MultiGraph) -> BTreeSet<VertexId> {
        let base = g.components().len();
        g.vertices()
            .filter(|&v| g.delete_vertex(v).expect("vertex").graph.components().len() > base)
            .collect()
    }

    /// Reference 2-edge-cut finder: try all pairs.
    fn two_cuts_by_deletion(g: &MultiGraph) -> BTreeSet<(EdgeId, EdgeId)> {
        let base = g.components().len();
        let bridge_set = bridges_by_deletion(g);
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        let mut out = BTreeSet::new();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if bridge_set.contains(&e) || bridge_set.contains(&f) {
                    continue;
                }
                let cut: BTreeSet<EdgeId> = [e, f].into_iter().collect();
                let reduced = g.delete_edges(&cut).expect("edges").graph;
                if reduced.components().len() > base {
                    out.insert((e, f));
                }
            }
        }
        out
    }

    #[test]
    fn bridges_on_a_path_and_a_cycle() {
        let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(bridges(&path), ids(&[0, 1, 2]));
        let cycle = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(bridges(&cycle), BTreeSet::new());
    }

    #[test]
    fn parallel_edges_are_never_bridges() {
        let g = graph(3, &[(0, 1), (0, 1), (1, 2)]);
        assert_eq!(bridges(&g), ids(&[2]));
        assert_eq!(cut_vertices(&g), [VertexId(1)].into_iter().collect());
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        // Bowtie: triangles 0-1-2 and 2-3-4 sharing vertex 2.
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(bridges(&g), BTreeSet::new());
        assert_eq!(cut_vertices(&g), [VertexId(2)].into_iter().collect());
        let expected: BTreeSet<(EdgeId, EdgeId)> = [
            (EdgeId(0), EdgeId(1)),
            (EdgeId(0), EdgeId(2)),
            (EdgeId(1), EdgeId(2)),
            (EdgeId(3), EdgeId(4)),
            (EdgeId(3), EdgeId(5)),
            (EdgeId(4), EdgeId(5)),
        ]
        .into_iter()
        .collect();
        assert_eq!(two_edge_cuts(&g), expected);
    }

    #[test]
    fn doubled_edge_triangle_series_classes() {
        // Triangle a-b-c with the a-b edge doubled: edges 0,1 parallel on
        // (a, b); edge 2 = (b, c); edge 3 = (c, a). Removing the parallel
        // pair leaves the path a-c-b connected, so the only 2-edge-cut is
        // {2, 3}, which isolates c.
        let g = graph(3, &[(0, 1), (0, 1), (1, 2), (2, 0)]);
        assert_eq!(bridges(&g), BTreeSet::new());
        let expected: BTreeSet<(EdgeId, EdgeId)> = [(EdgeId(2), EdgeId(3))].into_iter().collect();
        assert_eq!(two_edge_cuts(&g), expected);
        assert_eq!(two_edge_cuts(&g), two_cuts_by_deletion(&g));
        let cs = analyze(&g).expect("connected");
        let classes = cs.series_classes().expect("bridgeless").to_vec();
        assert_eq!(classes, vec![ids(&[0]), ids(&[1]), ids(&[2, 3])]);
        // Classes partition the edge set.
        let mut all = BTreeSet::new();
        for class in &classes {
            for &e in class {
                assert!(all.insert(e), "classes must be disjoint");
            }
        }
        assert_eq!(all, g.edge_ids().collect());
    }

    #[test]
    fn matches_reference_finders_on_assorted_graphs() {
        let samples = [
            graph(1, &[]),
            graph(2, &[(0, 1)]),
            graph(2, &[(0, 1), (1, 0)]),
            graph(4, &[(0, 1), (1, 2), (2, 3)]),
            graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
            graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]),
            graph(3, &[(0, 1), (0, 1), (1, 2), (2, 0)]),
            graph(2, &[(0, 1), (0, 1), (0, 1)]),
            graph(
                7,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 0),
                    (2, 4),
                    (4, 5),
                    (5, 6),
                    (6, 2),
                ],
            ),
        ];
        for g in &samples {
            assert_eq!(bridges(g), bridges_by_deletion(g), "bridges on {g:?}");
            assert_eq!(
                cut_vertices(g),
                cut_vertices_by_deletion(g),
                "cut vertices on {g:?}"
            );
            assert_eq!(two_edge_cuts(g), two_cuts_by_deletion(g), "2-cuts on {g:?}");
        }
    }

    #[test]
    fn series_class_of_agrees_with_analyze() {
        let g = graph(
            7,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (2, 4),
                (4, 5),
                (5, 6),
                (6, 2),
            ],
        );
        let cs = analyze(&g).expect("connected");
        let classes = cs.series_classes().expect("bridgeless");
        for e in g.edge_ids() {
            let class = series_class_of(&g, e).expect("bridgeless");
            let reference = classes
                .iter()
                .find(|c| c.contains(&e))
                .expect("partition covers e");
            assert_eq!(&class, reference);
        }
    }

    #[test]
    fn connectivity_thresholds() {
        let theta = graph(2, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(is_k_edge_connected(&theta, 1), Ok(true));
        assert_eq!(is_k_edge_connected(&theta, 2), Ok(true));
        assert_eq!(is_k_edge_connected(&theta, 3), Ok(true));

        let square = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(is_k_edge_connected(&square, 2), Ok(true));
        assert_eq!(is_k_edge_connected(&square, 3), Ok(false));

        let path = graph(2, &[(0, 1)]);
        assert_eq!(is_k_edge_connected(&path, 2), Ok(false));

        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(is_k_edge_connected(&k4, 3), Ok(true));

        let lonely = graph(1, &[]);
        assert_eq!(is_k_edge_connected(&lonely, 3), Ok(true));
        assert_eq!(
            is_k_edge_connected(&lonely, 4),
            Err(CutError::UnsupportedConnectivity(4))
        );

        let two_parts = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(is_k_edge_connected(&two_parts, 1), Ok(false));
    }

    #[test]
    fn quotient_cycle_on_a_plain_cycle() {
        // On C4 any two edges form a 2-edge-cut, so all four edges are one
        // series class and the quotient components are the four vertices.
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let class = series_class_of(&g, EdgeId(0)).expect("bridgeless");
        assert_eq!(class, ids(&[0, 1, 2, 3]));
        let order = quotient_cycle_order(&g, &class, VertexId(0)).expect("cycle");
        assert_eq!(order.len(), 4);
        assert_eq!(order.components[0], [VertexId(0)].into_iter().collect());
        // Anchor component's connectors are edges 0 and 3; direction goes
        // over the smaller one first, so the walk is 0,1,2,3 over edges
        // 0,1,2,3.
        assert_eq!(
            order.connectors,
            vec![EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(3)]
        );
        for k in 0..4 {
            assert_eq!(
                order.components[k],
                [VertexId(k as u32)].into_iter().collect(),
                "component {k}"
            );
        }
    }

    #[test]
    fn quotient_cycle_direction_pinned_by_smaller_connector() {
        // Triangle of doubled edges: components A = {0,1}, B = {2,3},
        // C = {4,5} (each internally a 2-cycle, hence bridgeless), joined
        // in a ring by single connectors e6 (A-B), e7 (B-C), e8 (C-A).
        let mut g = MultiGraph::new();
        let vs = g.add_vertices(6);
        let mut add = |a: usize, b: usize| g.add_edge(vs[a], vs[b]).expect("edge");
        let _e0 = add(0, 1);
        let _e1 = add(0, 1);
        let _e2 = add(2, 3);
        let _e3 = add(2, 3);
        let _e4 = add(4, 5);
        let _e5 = add(4, 5);
        let c0 = add(1, 2); // e6
        let c1 = add(3, 4); // e7
        let c2 = add(5, 0); // e8
        let class: BTreeSet<EdgeId> = [c0, c1, c2].into_iter().collect();
        assert_eq!(series_class_of(&g, c0).expect("bridgeless"), class);
        let order = quotient_cycle_order(&g, &class, VertexId(0)).expect("cycle");
        // Anchor component {0,1} touches e6 and e8; the smaller (e6) goes
        // first, so the walk is A → B → C with connectors e6, e7, e8.
        assert_eq!(order.connectors, vec![c0, c1, c2]);
        assert_eq!(
            order.components[1],
            [VertexId(2), VertexId(3)].into_iter().collect()
        );

        // Anchored at vertex 4 the walk starts at C over its smaller
        // connector e7, giving C → B → A with connectors e7, e6, e8.
        let order = quotient_cycle_order(&g, &class, VertexId(4)).expect("cycle");
        assert_eq!(order.connectors, vec![c1, c0, c2]);
        assert_eq!(
            order.components[0],
            [VertexId(4), VertexId(5)].into_iter().collect()
        );
    }

    #[test]
    fn quotient_rejects_non_classes() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        // {chord} alone: too small.
        let small: BTreeSet<EdgeId> = [EdgeId(4)].into_iter().collect();
        assert_eq!(
            quotient_cycle_order(&g, &small, VertexId(0)),
            Err(CutError::QuotientNotCycle)
        );
        // Three edges at one vertex of K4: deleting them isolates vertex 0,
        // giving 2 components for 3 edges — not a cycle shape.
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let star: BTreeSet<EdgeId> = [EdgeId(0), EdgeId(1), EdgeId(2)].into_iter().collect();
        assert_eq!(
            quotient_cycle_order(&k4, &star, VertexId(0)),
            Err(CutError::QuotientNotCycle)
        );
    }

    #[test]
    fn analyze_requires_connectivity() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(analyze(&g), Err(CutError::Disconnected));
    }

    #[test]
    fn two_cycle_is_a_single_class_of_two() {
        let g = graph(2, &[(0, 1), (1, 0)]);
        let class = series_class_of(&g, EdgeId(0)).expect("bridgeless");
        assert_eq!(class, ids(&[0, 1]));
        let order = quotient_cycle_order(&g, &class, VertexId(1)).expect("cycle");
        assert_eq!(order.len(), 2);
        assert_eq!(order.components[0], [VertexId(1)].into_iter().collect());
        assert_ne!(order.connectors[0], order.connectors[1]);
        // Smaller connector of the anchor component leads; both join the
        // same two components.
        assert_eq!(order.connectors, vec![EdgeId(0), EdgeId(1)]);
    }
}
