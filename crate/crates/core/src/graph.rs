//! Loopless directed multigraphs with stable vertex and edge identities.
//!
//! Every edge carries a fixed orientation (tail → head) and an id that is
//! never reused. The surgical operations (identification, contraction,
//! subdivision, deletion, induced subgraphs) return fresh graphs in which
//! surviving vertices and edges keep their ids, together with an
//! [`EdgeCorrespondence`] recording what happened to every old edge. Flow
//! values can therefore always be pulled back by name after a surgery.
//!
//! Orientations are bookkeeping only: the algorithms in this crate treat
//! graphs as undirected and use the orientation solely to give signs to
//! flow values.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

/// Identifier of a vertex.
///
/// Ids are allocated monotonically per graph and survive every surgery, so
/// a vertex of a derived graph names the same vertex of the ancestor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

/// Identifier of an edge. Same contract as [`VertexId`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Errors raised by graph construction and surgery.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    /// An edge would connect a vertex to itself.
    LoopEdge(VertexId),
    /// A vertex id that is not present in the graph.
    UnknownVertex(VertexId),
    /// An edge id that is not present in the graph.
    UnknownEdge(EdgeId),
    /// An explicit vertex id occurred twice.
    DuplicateVertex(VertexId),
    /// An explicit edge id occurred twice.
    DuplicateEdge(EdgeId),
    /// A part passed to `identify` was empty.
    EmptyPart,
    /// A vertex occurred in two different parts passed to `identify`.
    OverlappingParts(VertexId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::LoopEdge(v) => write!(f, "edge would form a loop at vertex {v}"),
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            GraphError::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            GraphError::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            GraphError::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            GraphError::EmptyPart => write!(f, "identification part is empty"),
            GraphError::OverlappingParts(v) => {
                write!(f, "vertex {v} occurs in two identification parts")
            }
        }
    }
}

/// A loopless directed multigraph.
///
/// Parallel edges are allowed (and common: contractions create them);
/// loops are rejected everywhere, and surgeries that would create one
/// delete the offending edge instead, recording that in the returned
/// correspondence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiGraph {
    /// Edge id → (tail, head).
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    /// Vertex id → ids of incident edges, sorted ascending. Every vertex of
    /// the graph has an entry, including isolated ones.
    incidence: BTreeMap<VertexId, Vec<EdgeId>>,
    next_vertex: u32,
    next_edge: u32,
}

/// Records the fate of each edge across a surgery: `Some(id)` if the edge
/// survived (always under the same id), `None` if it was deleted.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EdgeCorrespondence {
    map: BTreeMap<EdgeId, Option<EdgeId>>,
}

impl EdgeCorrespondence {
    /// Fate of edge `e` of the pre-surgery graph. `None` means `e` was not
    /// an edge of that graph at all.
    pub fn fate(&self, e: EdgeId) -> Option<Option<EdgeId>> {
        self.map.get(&e).copied()
    }

    /// True if `e` was an edge of the pre-surgery graph and survived.
    pub fn survived(&self, e: EdgeId) -> bool {
        matches!(self.map.get(&e), Some(Some(_)))
    }

    /// Edges of the pre-surgery graph that were deleted, ascending.
    pub fn deleted(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.map
            .iter()
            .filter(|(_, fate)| fate.is_none())
            .map(|(&e, _)| e)
    }

    /// All recorded (old edge, fate) entries, ascending by edge id.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Option<EdgeId>)> + '_ {
        self.map.iter().map(|(&e, &fate)| (e, fate))
    }
}

/// Result of [`MultiGraph::identify`].
#[derive(Clone, Debug)]
pub struct IdentifyOutcome {
    /// The graph after identification.
    pub graph: MultiGraph,
    /// Fate of every pre-surgery edge. Edges inside a part become loops
    /// and are deleted; all others survive under their old ids.
    pub edges: EdgeCorrespondence,
    /// The fresh vertex standing for each part, in part order.
    pub class_vertices: Vec<VertexId>,
}

/// Result of [`MultiGraph::contract_edge`].
#[derive(Clone, Debug)]
pub struct ContractOutcome {
    /// The graph after contraction.
    pub graph: MultiGraph,
    /// Fate of every pre-surgery edge: the contracted edge and everything
    /// parallel to it is deleted, the rest survives.
    pub edges: EdgeCorrespondence,
    /// The fresh vertex the two endpoints were merged into.
    pub merged: VertexId,
}

/// Result of [`MultiGraph::subdivide_edge`].
#[derive(Clone, Debug)]
pub struct SubdivideOutcome {
    /// The graph after subdivision.
    pub graph: MultiGraph,
    /// The fresh midpoint vertex.
    pub midpoint: VertexId,
    /// The two fresh halves: `halves[0]` runs tail → midpoint and
    /// `halves[1]` runs midpoint → head, preserving the old orientation.
    pub halves: [EdgeId; 2],
}

/// Result of a deletion surgery.
#[derive(Clone, Debug)]
pub struct DeleteOutcome {
    /// The graph after deletion.
    pub graph: MultiGraph,
    /// Fate of every pre-surgery edge.
    pub edges: EdgeCorrespondence,
}

impl MultiGraph {
    /// Creates an empty graph.
    pub fn new() -> Self {
        MultiGraph {
            edges: BTreeMap::new(),
            incidence: BTreeMap::new(),
            next_vertex: 0,
            next_edge: 0,
        }
    }

    /// Adds a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.incidence.insert(v, Vec::new());
        v
    }

    /// Adds `n` fresh vertices and returns their ids in creation order.
    pub fn add_vertices(&mut self, n: usize) -> Vec<VertexId> {
        (0..n).map(|_| self.add_vertex()).collect()
    }

    /// Adds a fresh edge oriented `tail` → `head` and returns its id.
    /// Fails on loops and unknown endpoints.
    pub fn add_edge(&mut self, tail: VertexId, head: VertexId) -> Result<EdgeId, GraphError> {
        if tail == head {
            return Err(GraphError::LoopEdge(tail));
        }
        if !self.incidence.contains_key(&tail) {
            return Err(GraphError::UnknownVertex(tail));
        }
        if !self.incidence.contains_key(&head) {
            return Err(GraphError::UnknownVertex(head));
        }
        let e = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(e, (tail, head));
        insert_sorted(self.incidence.get_mut(&tail).expect("tail checked"), e);
        insert_sorted(self.incidence.get_mut(&head).expect("head checked"), e);
        Ok(e)
    }

    /// Builds a graph from explicit vertex and edge ids, validating that
    /// ids are unique, endpoints exist, and no edge is a loop. Id counters
    /// resume after the largest explicit id, so later additions cannot
    /// collide.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new();
        for v in vertices {
            if g.incidence.insert(v, Vec::new()).is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
            g.next_vertex = g.next_vertex.max(v.0 + 1);
        }
        for (e, tail, head) in edges {
            if tail == head {
                return Err(GraphError::LoopEdge(tail));
            }
            if !g.incidence.contains_key(&tail) {
                return Err(GraphError::UnknownVertex(tail));
            }
            if !g.incidence.contains_key(&head) {
                return Err(GraphError::UnknownVertex(head));
            }
            if g.edges.insert(e, (tail, head)).is_some() {
                return Err(GraphError::DuplicateEdge(e));
            }
            g.next_edge = g.next_edge.max(e.0 + 1);
        }
        let mut incidence: BTreeMap<VertexId, Vec<EdgeId>> = g.incidence;
        for (&e, &(tail, head)) in &g.edges {
            incidence.get_mut(&tail).expect("validated").push(e);
            incidence.get_mut(&head).expect("validated").push(e);
        }
        for list in incidence.values_mut() {
            list.sort_unstable();
        }
        g.incidence = incidence;
        Ok(g)
    }

    /// The id the next added vertex would receive; all ids at or above
    /// this bound are unused, here and in every ancestor graph.
    pub fn vertex_id_bound(&self) -> VertexId {
        VertexId(self.next_vertex)
    }

    /// The id the next added edge would receive; all ids at or above this
    /// bound are unused, here and in every ancestor graph.
    pub fn edge_id_bound(&self) -> EdgeId {
        EdgeId(self.next_edge)
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True if the graph has no vertices.
    pub fn is_empty(&self) -> bool {
        self.incidence.is_empty()
    }

    /// Vertex ids, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence.keys().copied()
    }

    /// Edge ids, ascending.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    /// `(id, tail, head)` for every edge, ascending by id.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(t, h))| (e, t, h))
    }

    /// True if `v` is a vertex of this graph.
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.incidence.contains_key(&v)
    }

    /// True if `e` is an edge of this graph.
    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    /// `(tail, head)` of edge `e`.
    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    /// Tail (source of the stored orientation) of edge `e`.
    pub fn tail(&self, e: EdgeId) -> Option<VertexId> {
        self.edges.get(&e).map(|&(t, _)| t)
    }

    /// Head (target of the stored orientation) of edge `e`.
    pub fn head(&self, e: EdgeId) -> Option<VertexId> {
        self.edges.get(&e).map(|&(_, h)| h)
    }

    /// Ids of the edges incident to `v`, ascending. Empty for unknown `v`.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        self.incidence.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Degree of `v` (parallel edges all count; there are no loops).
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edges(v).len()
    }

    /// The endpoint of `e` other than `v`, if `v` is an endpoint of `e`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (t, h) = self.endpoints(e)?;
        if v == t {
            Some(h)
        } else if v == h {
            Some(t)
        } else {
            None
        }
    }

    /// Vertex sets of the connected components, each set ordered, the list
    /// ordered by smallest member. Isolated vertices form their own
    /// components.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::new();
            queue.push_back(v);
            seen.insert(v);
            comp.insert(v);
            while let Some(x) = queue.pop_front() {
                for &e in self.incident_edges(x) {
                    let y = self.other_end(e, x).expect("incident edge");
                    if seen.insert(y) {
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True if the graph has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced by `keep`: those vertices and every edge with
    /// both endpoints inside, all under their old ids.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<Self, GraphError> {
        for &v in keep {
            if !self.contains_vertex(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let edges = self
            .edges()
            .filter(|(_, t, h)| keep.contains(t) && keep.contains(h));
        let mut g = MultiGraph::from_parts(keep.iter().copied(), edges)?;
        g.next_vertex = g.next_vertex.max(self.next_vertex);
        g.next_edge = g.next_edge.max(self.next_edge);
        Ok(g)
    }

    /// Identifies each part to a single fresh vertex. Parts must be
    /// nonempty, pairwise disjoint sets of existing vertices; vertices
    /// outside every part are untouched. Edges inside a part become loops
    /// and are deleted; every other edge survives with its endpoints
    /// renamed and its orientation kept.
    pub fn identify(&self, parts: &[BTreeSet<VertexId>]) -> Result<IdentifyOutcome, GraphError> {
        let mut owner: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(GraphError::EmptyPart);
            }
            for &v in part {
                if !self.contains_vertex(v) {
                    return Err(GraphError::UnknownVertex(v));
                }
                if owner.insert(v, i).is_some() {
                    return Err(GraphError::OverlappingParts(v));
                }
            }
        }
        let mut next_vertex = self.next_vertex;
        let class_vertices: Vec<VertexId> = parts
            .iter()
            .map(|_| {
                let v = VertexId(next_vertex);
                next_vertex += 1;
                v
            })
            .collect();
        let rename = |v: VertexId| -> VertexId {
            match owner.get(&v) {
                Some(&i) => class_vertices[i],
                None => v,
            }
        };
        let vertices = self
            .vertices()
            .filter(|v| !owner.contains_key(v))
            .chain(class_vertices.iter().copied());
        let mut corr = BTreeMap::new();
        let mut kept = Vec::new();
        for (e, t, h) in self.edges() {
            let (t2, h2) = (rename(t), rename(h));
            if t2 == h2 {
                corr.insert(e, None);
            } else {
                corr.insert(e, Some(e));
                kept.push((e, t2, h2));
            }
        }
        let mut graph = MultiGraph::from_parts(vertices, kept)?;
        graph.next_vertex = graph.next_vertex.max(next_vertex);
        graph.next_edge = graph.next_edge.max(self.next_edge);
        Ok(IdentifyOutcome {
            graph,
            edges: EdgeCorrespondence { map: corr },
            class_vertices,
        })
    }

    /// Contracts edge `e`: merges its endpoints into a fresh vertex and
    /// deletes `e` together with everything parallel to it.
    pub fn contract_edge(&self, e: EdgeId) -> Result<ContractOutcome, GraphError> {
        let (t, h) = self.endpoints(e).ok_or(GraphError::UnknownEdge(e))?;
        let part: BTreeSet<VertexId> = [t, h].into_iter().collect();
        let outcome = self.identify(core::slice::from_ref(&part))?;
        Ok(ContractOutcome {
            graph: outcome.graph,
            edges: outcome.edges,
            merged: outcome.class_vertices[0],
        })
    }

    /// Subdivides edge `e`: replaces it by a fresh midpoint vertex and two
    /// fresh edges tail → midpoint → head.
    pub fn subdivide_edge(&self, e: EdgeId) -> Result<SubdivideOutcome, GraphError> {
        let (t, h) = self.endpoints(e).ok_or(GraphError::UnknownEdge(e))?;
        let midpoint = VertexId(self.next_vertex);
        let halves = [EdgeId(self.next_edge), EdgeId(self.next_edge + 1)];
        let vertices = self.vertices().chain([midpoint]);
        let edges = self
            .edges()
            .filter(|&(id, _, _)| id != e)
            .chain([(halves[0], t, midpoint), (halves[1], midpoint, h)]);
        let graph = MultiGraph::from_parts(vertices, edges)?;
        Ok(SubdivideOutcome {
            graph,
            midpoint,
            halves,
        })
    }

    /// Deletes the given edges, keeping all vertices.
    pub fn delete_edges(&self, drop: &BTreeSet<EdgeId>) -> Result<DeleteOutcome, GraphError> {
        for &e in drop {
            if !self.contains_edge(e) {
                return Err(GraphError::UnknownEdge(e));
            }
        }
        let corr: BTreeMap<EdgeId, Option<EdgeId>> = self
            .edge_ids()
            .map(|e| (e, if drop.contains(&e) { None } else { Some(e) }))
            .collect();
        let edges = self.edges().filter(|(e, _, _)| !drop.contains(e));
        let mut graph = MultiGraph::from_parts(self.vertices(), edges)?;
        graph.next_vertex = graph.next_vertex.max(self.next_vertex);
        graph.next_edge = graph.next_edge.max(self.next_edge);
        Ok(DeleteOutcome {
            graph,
            edges: EdgeCorrespondence { map: corr },
        })
    }

    /// Deletes one edge, keeping all vertices.
    pub fn delete_edge(&self, e: EdgeId) -> Result<DeleteOutcome, GraphError> {
        self.delete_edges(&[e].into_iter().collect())
    }

    /// Deletes vertex `v` and every edge incident to it.
    pub fn delete_vertex(&self, v: VertexId) -> Result<DeleteOutcome, GraphError> {
        if !self.contains_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let corr: BTreeMap<EdgeId, Option<EdgeId>> = self
            .edges()
            .map(|(e, t, h)| (e, if t == v || h == v { None } else { Some(e) }))
            .collect();
        let vertices = self.vertices().filter(|&x| x != v);
        let edges = self.edges().filter(|&(_, t, h)| t != v && h != v);
        let mut graph = MultiGraph::from_parts(vertices, edges)?;
        graph.next_vertex = graph.next_vertex.max(self.next_vertex);
        graph.next_edge = graph.next_edge.max(self.next_edge);
        Ok(DeleteOutcome {
            graph,
            edges: EdgeCorrespondence { map: corr },
        })
    }
}

impl Default for MultiGraph {
    fn default() -> Self {
        MultiGraph::new()
    }
}

fn insert_sorted(list: &mut Vec<EdgeId>, e: EdgeId) {
    match list.binary_search(&e) {
        Ok(_) => {}
        Err(pos) => list.insert(pos, e),
    }
}
