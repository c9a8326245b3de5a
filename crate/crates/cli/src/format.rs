//! Text formats for graphs and flows.
//!
//! A graph document looks like
//!
//! ```text
//! nzflow 4 6
//! e 0 1 2
//! e 1 1 3
//! ...
//! ```
//!
//! with a header naming the vertex and edge counts, then one `e` line per
//! edge carrying its id and its tail and head as 1-based vertex labels.
//! Edge ids are arbitrary distinct numbers and survive round trips
//! exactly; vertex labels are positional (label k parses to the graph's
//! k-th vertex, and serialization renumbers vertices into 1..n by sorted
//! order).
//!
//! A flow document looks like
//!
//! ```text
//! flow 6
//! f 0 1 1 1 1
//! ...
//! ```
//!
//! with one `f` line per edge: id, the parity value (mod 2), the ternary
//! value (mod 3), their combination (mod 6), and a nonzero integer of
//! magnitude below 6. Each line must be arithmetically consistent — the
//! mod-6 value must reduce to the parity and ternary values, and the
//! integer must reduce to the mod-6 value — so a well-formed document
//! always describes a nowhere-zero assignment. Whether that assignment
//! is a flow on a particular graph is a separate check.
//!
//! Both serializers emit lines sorted by id with exactly one `\n` after
//! every line, so equal data serializes to equal bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use nzflow_core::flow::{EdgeFunction, IntegerFlow};
use nzflow_core::{EdgeId, MultiGraph, VertexId};

/// A parse failure, pointing at the offending 1-based line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// What went wrong.
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// One row of a flow document.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FlowEntry {
    /// The edge the values sit on.
    pub edge: EdgeId,
    /// Value mod 2.
    pub mod2: u8,
    /// Value mod 3.
    pub mod3: u8,
    /// Combined value mod 6.
    pub mod6: u8,
    /// Integer representative, nonzero with |value| < 6.
    pub integer: i64,
}

/// A parsed flow document: rows sorted by edge id.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FlowDocument {
    /// The rows, in ascending edge order.
    pub entries: Vec<FlowEntry>,
}

impl FlowDocument {
    /// The parity column as an edge function.
    pub fn mod2(&self) -> EdgeFunction {
        let mut f = EdgeFunction::new(2);
        for entry in &self.entries {
            f.set(entry.edge, entry.mod2);
        }
        f
    }

    /// The ternary column as an edge function.
    pub fn mod3(&self) -> EdgeFunction {
        let mut f = EdgeFunction::new(3);
        for entry in &self.entries {
            f.set(entry.edge, entry.mod3);
        }
        f
    }

    /// The mod-6 column as an edge function.
    pub fn mod6(&self) -> EdgeFunction {
        let mut f = EdgeFunction::new(6);
        for entry in &self.entries {
            f.set(entry.edge, entry.mod6);
        }
        f
    }

    /// The integer column as an integer flow.
    pub fn integer(&self) -> IntegerFlow {
        let mut f = IntegerFlow::new();
        for entry in &self.entries {
            f.set(entry.edge, entry.integer);
        }
        f
    }
}

/// Parses a graph document.
pub fn parse_graph(text: &str) -> Result<MultiGraph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty document"))?;
    let mut tokens = header.split(' ');
    if tokens.next() != Some("nzflow") {
        return Err(err(1, "expected header `nzflow <vertices> <edges>`"));
    }
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(1, "bad vertex count"))?;
    let m: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(1, "bad edge count"))?;
    if tokens.next().is_some() {
        return Err(err(1, "trailing tokens after header"));
    }

    let mut g = MultiGraph::new();
    let vertices = g.add_vertices(n);
    let mut edges: BTreeMap<EdgeId, (VertexId, VertexId)> = BTreeMap::new();
    let mut count = 0usize;
    for (index, line) in lines {
        let lineno = index + 1;
        if line.is_empty() {
            return Err(err(lineno, "blank line"));
        }
        let mut tokens = line.split(' ');
        if tokens.next() != Some("e") {
            return Err(err(lineno, "expected an edge line `e <id> <tail> <head>`"));
        }
        let id: u32 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad edge id"))?;
        let tail: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad tail label"))?;
        let head: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad head label"))?;
        if tokens.next().is_some() {
            return Err(err(lineno, "trailing tokens after edge"));
        }
        if tail == 0 || tail > n || head == 0 || head > n {
            return Err(err(lineno, format!("vertex label out of range 1..={n}")));
        }
        if tail == head {
            return Err(err(lineno, "loop edges are not allowed"));
        }
        if edges
            .insert(EdgeId(id), (vertices[tail - 1], vertices[head - 1]))
            .is_some()
        {
            return Err(err(lineno, format!("duplicate edge id {id}")));
        }
        count += 1;
        if count > m {
            return Err(err(lineno, format!("more than {m} edges")));
        }
    }
    if count < m {
        return Err(err(count + 1, format!("expected {m} edges, found {count}")));
    }
    MultiGraph::from_parts(vertices, edges.iter().map(|(&e, &(t, h))| (e, t, h)))
        .map_err(|e| err(1, format!("inconsistent graph: {e:?}")))
}

/// 1-based positional labels for the graph's vertices, in sorted order.
pub fn vertex_labels(g: &MultiGraph) -> BTreeMap<VertexId, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect()
}

/// Serializes a graph document; the inverse of [`parse_graph`] up to
/// vertex renumbering (edge ids are preserved exactly).
pub fn serialize_graph(g: &MultiGraph) -> String {
    let labels = vertex_labels(g);
    let mut out = format!("nzflow {} {}\n", g.vertex_count(), g.edge_count());
    for (e, t, h) in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e, labels[&t], labels[&h]));
    }
    out
}

/// Parses a flow document.
pub fn parse_flow(text: &str) -> Result<FlowDocument, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty document"))?;
    let mut tokens = header.split(' ');
    if tokens.next() != Some("flow") {
        return Err(err(1, "expected header `flow <edges>`"));
    }
    let m: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(1, "bad edge count"))?;
    if tokens.next().is_some() {
        return Err(err(1, "trailing tokens after header"));
    }

    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut entries = Vec::new();
    for (index, line) in lines {
        let lineno = index + 1;
        if line.is_empty() {
            return Err(err(lineno, "blank line"));
        }
        let mut tokens = line.split(' ');
        if tokens.next() != Some("f") {
            return Err(err(
                lineno,
                "expected a value line `f <id> <mod2> <mod3> <mod6> <int>`",
            ));
        }
        let id: u32 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad edge id"))?;
        let mod2: u8 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad parity value"))?;
        let mod3: u8 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad ternary value"))?;
        let mod6: u8 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad mod-6 value"))?;
        let integer: i64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad integer value"))?;
        if tokens.next().is_some() {
            return Err(err(lineno, "trailing tokens after values"));
        }
        if mod2 > 1 {
            return Err(err(lineno, "parity value must be 0 or 1"));
        }
        if mod3 > 2 {
            return Err(err(lineno, "ternary value must be 0, 1 or 2"));
        }
        if mod6 > 5 {
            return Err(err(lineno, "mod-6 value must be below 6"));
        }
        if mod6 % 2 != mod2 || mod6 % 3 != mod3 {
            return Err(err(
                lineno,
                "mod-6 value does not reduce to the parity and ternary values",
            ));
        }
        if integer == 0 || integer.unsigned_abs() >= 6 {
            return Err(err(
                lineno,
                "integer value must be nonzero with magnitude below 6",
            ));
        }
        if integer.rem_euclid(6) as u8 != mod6 {
            return Err(err(
                lineno,
                "integer value does not reduce to the mod-6 value",
            ));
        }
        if !seen.insert(EdgeId(id)) {
            return Err(err(lineno, format!("duplicate edge id {id}")));
        }
        entries.push(FlowEntry {
            edge: EdgeId(id),
            mod2,
            mod3,
            mod6,
            integer,
        });
        if entries.len() > m {
            return Err(err(lineno, format!("more than {m} values")));
        }
    }
    if entries.len() < m {
        return Err(err(
            entries.len() + 1,
            format!("expected {m} values, found {}", entries.len()),
        ));
    }
    entries.sort_by_key(|entry| entry.edge);
    Ok(FlowDocument { entries })
}

/// Serializes a flow document from its three verified forms.
pub fn serialize_flow(
    g: &MultiGraph,
    mod2: &EdgeFunction,
    mod3: &EdgeFunction,
    mod6: &EdgeFunction,
    integer: &IntegerFlow,
) -> String {
    let mut out = format!("flow {}\n", g.edge_count());
    for e in g.edge_ids() {
        out.push_str(&format!(
            "f {} {} {} {} {}\n",
            e,
            mod2.get_or_zero(e),
            mod3.get_or_zero(e),
            mod6.get_or_zero(e),
            integer.get(e).unwrap_or(0),
        ));
    }
    out
}

/// Serializes the graph as Graphviz dot, with the same 1-based vertex
/// labels as the graph document and one arrow per edge, labelled with the
/// edge id and its integer flow value when one is given.
pub fn serialize_dot(g: &MultiGraph, integer: Option<&IntegerFlow>) -> String {
    let labels = vertex_labels(g);
    let mut out = String::from("digraph nzflow {\n");
    for &label in labels.values() {
        out.push_str(&format!("  {label};\n"));
    }
    for (e, t, h) in g.edges() {
        let annotation = match integer.and_then(|f| f.get(e)) {
            Some(value) => format!("e{e}: {value:+}"),
            None => format!("e{e}"),
        };
        out.push_str(&format!(
            "  {} -> {} [label=\"{}\"];\n",
            labels[&t], labels[&h], annotation
        ));
    }
    out.push_str("}\n");
    out
}
