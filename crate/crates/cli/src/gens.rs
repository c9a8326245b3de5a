//! Graph generators: named families and seeded random constructions.
//!
//! Every generator is deterministic — the random families draw from a
//! ChaCha stream seeded with the caller's seed, so the same parameters
//! always produce the same graph.

use std::fmt;

use nzflow_core::cuts;
use nzflow_core::MultiGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Why a generator refused or gave up.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenError {
    /// The parameters are outside the family's range.
    Parameter(&'static str),
    /// Random search did not find a valid graph within the attempt budget.
    Exhausted,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::Parameter(what) => write!(f, "{what}"),
            GenError::Exhausted => write!(f, "random search exhausted its attempt budget"),
        }
    }
}

/// The complete graph on four vertices.
pub fn k4() -> MultiGraph {
    complete(4)
}

/// The complete graph on five vertices.
pub fn k5() -> MultiGraph {
    complete(5)
}

fn complete(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    let vs = g.add_vertices(n);
    for i in 0..n {
        for j in (i + 1)..n {
            g.add_edge(vs[i], vs[j]).expect("distinct endpoints");
        }
    }
    g
}

/// The Petersen graph: an outer pentagon, an inner pentagram, and five
/// spokes between them.
pub fn petersen() -> MultiGraph {
    let mut g = MultiGraph::new();
    let vs = g.add_vertices(10);
    for i in 0..5 {
        g.add_edge(vs[i], vs[(i + 1) % 5]).expect("outer cycle");
    }
    for i in 0..5 {
        g.add_edge(vs[i], vs[i + 5]).expect("spoke");
    }
    for i in 0..5 {
        g.add_edge(vs[5 + i], vs[5 + (i + 2) % 5])
            .expect("inner star");
    }
    g
}

/// The cycle on `n ≥ 2` vertices; `cycle(2)` is a doubled edge.
pub fn cycle(n: usize) -> Result<MultiGraph, GenError> {
    if n < 2 {
        return Err(GenError::Parameter("a cycle needs at least 2 vertices"));
    }
    let mut g = MultiGraph::new();
    let vs = g.add_vertices(n);
    for i in 0..n {
        g.add_edge(vs[i], vs[(i + 1) % n]).expect("cycle edge");
    }
    Ok(g)
}

/// Two vertices joined by `m ≥ 2` parallel edges.
pub fn theta(m: usize) -> Result<MultiGraph, GenError> {
    if m < 2 {
        return Err(GenError::Parameter(
            "a theta needs at least 2 parallel edges",
        ));
    }
    let mut g = MultiGraph::new();
    let vs = g.add_vertices(2);
    for _ in 0..m {
        g.add_edge(vs[0], vs[1]).expect("parallel edge");
    }
    Ok(g)
}

/// The prism over an `n ≥ 3` cycle: two concentric cycles joined by a
/// perfect matching. Cubic and 3-edge-connected.
pub fn prism(n: usize) -> Result<MultiGraph, GenError> {
    if n < 3 {
        return Err(GenError::Parameter(
            "a prism needs cycles of length at least 3",
        ));
    }
    let mut g = MultiGraph::new();
    let vs = g.add_vertices(2 * n);
    for i in 0..n {
        g.add_edge(vs[i], vs[(i + 1) % n]).expect("outer cycle");
    }
    for i in 0..n {
        g.add_edge(vs[n + i], vs[n + (i + 1) % n])
            .expect("inner cycle");
    }
    for i in 0..n {
        g.add_edge(vs[i], vs[n + i]).expect("rung");
    }
    Ok(g)
}

/// The Möbius ladder on `2n` vertices, `n ≥ 3`: a `2n`-cycle plus its `n`
/// diameters. Cubic and 3-edge-connected.
pub fn moebius_ladder(n: usize) -> Result<MultiGraph, GenError> {
    if n < 3 {
        return Err(GenError::Parameter(
            "a Möbius ladder needs at least 3 rungs",
        ));
    }
    let mut g = MultiGraph::new();
    let vs = g.add_vertices(2 * n);
    for i in 0..(2 * n) {
        g.add_edge(vs[i], vs[(i + 1) % (2 * n)]).expect("rim");
    }
    for i in 0..n {
        g.add_edge(vs[i], vs[i + n]).expect("diameter");
    }
    Ok(g)
}

/// A random simple cubic 3-edge-connected graph on `n` vertices (`n` even,
/// `n ≥ 4`): a shuffled Hamiltonian cycle plus a random perfect matching
/// that avoids cycle-adjacent pairs, rejection-sampled until the result is
/// 3-edge-connected.
pub fn random_cubic_3ec(n: usize, seed: u64) -> Result<MultiGraph, GenError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(GenError::Parameter(
            "a cubic graph needs an even vertex count of at least 4",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..200 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);

        // Match cycle positions, never pairing neighbours on the cycle.
        let mut unmatched: Vec<usize> = (0..n).collect();
        unmatched.shuffle(&mut rng);
        let mut chords: Vec<(usize, usize)> = Vec::with_capacity(n / 2);
        while let Some(p) = unmatched.pop() {
            let candidates: Vec<usize> = unmatched
                .iter()
                .copied()
                .filter(|&q| {
                    let gap = (p + n - q) % n;
                    gap != 1 && gap != n - 1
                })
                .collect();
            let Some(&q) = candidates.as_slice().choose(&mut rng) else {
                continue 'attempt;
            };
            unmatched.retain(|&r| r != q);
            chords.push((p, q));
        }

        let mut g = MultiGraph::new();
        let vs = g.add_vertices(n);
        for i in 0..n {
            g.add_edge(vs[order[i]], vs[order[(i + 1) % n]])
                .expect("cycle edge");
        }
        for (p, q) in chords {
            g.add_edge(vs[order[p]], vs[order[q]]).expect("chord");
        }
        if cuts::is_k_edge_connected(&g, 3).expect("k in range") {
            return Ok(g);
        }
    }
    Err(GenError::Exhausted)
}

/// A random bridgeless connected graph with exactly `n ≥ 2` vertices and
/// `m ≥ n` edges, built as a cycle plus `m − n` ears. Ears may share both
/// endpoints (creating cut vertices) and single-edge ears may double
/// existing edges, so the output exercises multigraph structure.
pub fn random_2ec(n: usize, m: usize, seed: u64) -> Result<MultiGraph, GenError> {
    if n < 2 {
        return Err(GenError::Parameter(
            "a bridgeless graph needs at least 2 vertices",
        ));
    }
    if m < n {
        return Err(GenError::Parameter(
            "a bridgeless graph needs at least as many edges as vertices",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ears = m - n;
    let base = if ears == 0 { n } else { rng.gen_range(2..=n) };

    let mut g = MultiGraph::new();
    let mut vs = g.add_vertices(base);
    for i in 0..base {
        g.add_edge(vs[i], vs[(i + 1) % base]).expect("base cycle");
    }

    // Distribute the remaining vertices over the ears.
    let mut interior = vec![0usize; ears];
    for _ in 0..(n - base) {
        let i = rng.gen_range(0..ears);
        interior[i] += 1;
    }

    for k in interior {
        let a = vs[rng.gen_range(0..vs.len())];
        let b = if k == 0 {
            // A single-edge ear must not be a loop.
            loop {
                let b = vs[rng.gen_range(0..vs.len())];
                if b != a {
                    break b;
                }
            }
        } else {
            // A longer ear may close on its own start, making a cut vertex.
            vs[rng.gen_range(0..vs.len())]
        };
        let mut prev = a;
        for _ in 0..k {
            let w = g.add_vertex();
            vs.push(w);
            g.add_edge(prev, w).expect("ear edge");
            prev = w;
        }
        g.add_edge(prev, b).expect("ear edge");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nzflow_core::VertexId;
    use std::collections::BTreeSet;

    fn assert_cubic_3ec(g: &MultiGraph) {
        for v in g.vertices() {
            assert_eq!(g.degree(v), 3, "degree at {v}");
        }
        assert!(cuts::is_k_edge_connected(g, 3).expect("k in range"));
    }

    #[test]
    fn named_families_have_the_right_shape() {
        assert_eq!((k4().vertex_count(), k4().edge_count()), (4, 6));
        assert_eq!((k5().vertex_count(), k5().edge_count()), (5, 10));
        assert_cubic_3ec(&k4());
        assert_cubic_3ec(&petersen());
        assert_eq!(petersen().edge_count(), 15);

        let c2 = cycle(2).expect("cycle");
        assert_eq!((c2.vertex_count(), c2.edge_count()), (2, 2));
        let c7 = cycle(7).expect("cycle");
        assert!(c7.vertices().all(|v| c7.degree(v) == 2));

        let t4 = theta(4).expect("theta");
        assert_eq!((t4.vertex_count(), t4.edge_count()), (2, 4));

        let p5 = prism(5).expect("prism");
        assert_eq!((p5.vertex_count(), p5.edge_count()), (10, 15));
        assert_cubic_3ec(&p5);

        let m3 = moebius_ladder(3).expect("ladder");
        assert_eq!((m3.vertex_count(), m3.edge_count()), (6, 9));
        assert_cubic_3ec(&m3);
        assert_cubic_3ec(&moebius_ladder(6).expect("ladder"));
    }

    #[test]
    fn parameter_errors_are_reported() {
        assert!(matches!(cycle(1), Err(GenError::Parameter(_))));
        assert!(matches!(theta(1), Err(GenError::Parameter(_))));
        assert!(matches!(prism(2), Err(GenError::Parameter(_))));
        assert!(matches!(moebius_ladder(2), Err(GenError::Parameter(_))));
        assert!(matches!(
            random_cubic_3ec(5, 0),
            Err(GenError::Parameter(_))
        ));
        assert!(matches!(
            random_cubic_3ec(2, 0),
            Err(GenError::Parameter(_))
        ));
        assert!(matches!(random_2ec(1, 5, 0), Err(GenError::Parameter(_))));
        assert!(matches!(random_2ec(5, 4, 0), Err(GenError::Parameter(_))));
    }

    #[test]
    fn random_cubic_graphs_are_simple_cubic_and_3ec() {
        for seed in 0..8 {
            for n in [4usize, 6, 10, 14] {
                let g = random_cubic_3ec(n, seed).expect("generate");
                assert_eq!(g.vertex_count(), n);
                assert_eq!(g.edge_count(), 3 * n / 2);
                assert_cubic_3ec(&g);
                let pairs: BTreeSet<(VertexId, VertexId)> = g
                    .edges()
                    .map(|(_, t, h)| if t < h { (t, h) } else { (h, t) })
                    .collect();
                assert_eq!(pairs.len(), g.edge_count(), "parallel edges in seed {seed}");
            }
        }
    }

    #[test]
    fn random_bridgeless_graphs_have_exact_counts_and_no_bridges() {
        for seed in 0..12 {
            for &(n, m) in &[(2usize, 5usize), (5, 5), (6, 9), (12, 18), (20, 24)] {
                let g = random_2ec(n, m, seed).expect("generate");
                assert_eq!(g.vertex_count(), n, "seed {seed}");
                assert_eq!(g.edge_count(), m, "seed {seed}");
                assert!(g.is_connected(), "seed {seed}");
                assert!(cuts::bridges(&g).is_empty(), "seed {seed}");
            }
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a = random_cubic_3ec(12, 99).expect("generate");
        let b = random_cubic_3ec(12, 99).expect("generate");
        let same: Vec<_> = a.edges().collect();
        let again: Vec<_> = b.edges().collect();
        assert_eq!(same, again);

        let a = random_2ec(9, 14, 5).expect("generate");
        let b = random_2ec(9, 14, 5).expect("generate");
        let same: Vec<_> = a.edges().collect();
        let again: Vec<_> = b.edges().collect();
        assert_eq!(same, again);

        let other = random_2ec(9, 14, 6).expect("generate");
        let differs: Vec<_> = other.edges().collect();
        assert_ne!(same, differs, "different seeds should usually differ");
    }

    #[test]
    fn random_bridgeless_corpus_shows_multigraph_structure() {
        // Across a modest seed range the ear construction must exhibit
        // parallel edges, cut vertices, and vertices of degree above 3 —
        // the shapes the solvers' preprocessing exists to remove.
        let mut saw_parallel = false;
        let mut saw_cut_vertex = false;
        let mut saw_high_degree = false;
        for seed in 0..40 {
            let g = random_2ec(8, 14, seed).expect("generate");
            let pairs: BTreeSet<(VertexId, VertexId)> = g
                .edges()
                .map(|(_, t, h)| if t < h { (t, h) } else { (h, t) })
                .collect();
            saw_parallel |= pairs.len() < g.edge_count();
            saw_cut_vertex |= !cuts::cut_vertices(&g).is_empty();
            saw_high_degree |= g.vertices().any(|v| g.degree(v) > 3);
        }
        assert!(saw_parallel, "no seed produced a parallel edge");
        assert!(saw_cut_vertex, "no seed produced a cut vertex");
        assert!(
            saw_high_degree,
            "no seed produced a vertex of degree above 3"
        );
    }
}
