//! Randomized end-to-end checks: random bridgeless multigraphs are fed
//! through both solving algorithms, and every output form — the
//! parity/ternary pair, the combined mod-6 function, and the bounded
//! integer flow — is verified independently, including against the
//! exhaustive enumeration oracle where the cycle space is small enough.

use nzflow_core::pipeline::{solve_pipeline, Backend};
use nzflow_core::{flow, oracle, MultiGraph};
use proptest::prelude::*;

/// One 2-edge-connected building block: a cycle of the given length,
/// plus chords and doubled cycle edges (indices reduced mod the length).
type Block = (usize, Vec<(usize, usize)>, Vec<usize>);

/// Builds a chain of blocks glued at single shared vertices. Every block
/// is bridgeless, and gluing at vertices preserves that while introducing
/// cut vertices, parallel edges, and degrees above 3.
fn build_chain(blocks: &[Block]) -> MultiGraph {
    let mut g = MultiGraph::new();
    let mut shared = None;
    for (len, chords, doubles) in blocks {
        let len = *len;
        let mut ring = Vec::with_capacity(len);
        if let Some(s) = shared {
            ring.push(s);
        }
        ring.extend(g.add_vertices(len - ring.len()));
        for i in 0..len {
            g.add_edge(ring[i], ring[(i + 1) % len])
                .expect("cycle edge");
        }
        for &(a, b) in chords {
            let (x, y) = (a % len, b % len);
            if x != y {
                g.add_edge(ring[x], ring[y]).expect("chord");
            }
        }
        for &d in doubles {
            let i = d % len;
            g.add_edge(ring[i], ring[(i + 1) % len])
                .expect("doubled edge");
        }
        shared = Some(ring[len / 2]);
    }
    g
}

fn blocks() -> impl Strategy<Value = Vec<Block>> {
    prop::collection::vec(
        (
            3usize..8,
            prop::collection::vec((0usize..8, 0usize..8), 0..4),
            prop::collection::vec(0usize..8, 0..3),
        ),
        1..4,
    )
}

fn small_blocks() -> impl Strategy<Value = Vec<Block>> {
    prop::collection::vec(
        (
            3usize..6,
            prop::collection::vec((0usize..6, 0usize..6), 0..2),
            prop::collection::vec(0usize..6, 0..2),
        ),
        1..2,
    )
}

proptest! {
    /// Both algorithms solve every random bridgeless graph, and the
    /// three output forms pass their independent verifiers and agree
    /// with one another.
    #[test]
    fn random_graphs_solve_and_verify(blocks in blocks()) {
        let g = build_chain(&blocks);
        for backend in [Backend::One, Backend::Two] {
            let solution = solve_pipeline(&g, backend)
                .unwrap_or_else(|err| panic!("{backend:?} failed: {err}"));
            let report = flow::verify_pair(&g, &solution.pair).expect("total");
            prop_assert!(report.passed(), "pair violations: {report:?}");
            prop_assert!(oracle::is_nowhere_zero_mod_flow(&g, &solution.mod6, 6));
            let (mod2, mod3) = flow::split_mod6(&solution.mod6).expect("nowhere-zero");
            prop_assert_eq!(&mod2, &solution.pair.mod2);
            prop_assert_eq!(&mod3, &solution.pair.mod3);
            let integer = flow::verify_integer_flow(&g, &solution.integer, 6);
            prop_assert!(integer.passed(), "integer violations: {integer:?}");
            prop_assert_eq!(solution.integer.residues(6), solution.mod6);
        }
    }

    /// Solving the same graph twice gives byte-identical results.
    #[test]
    fn pipeline_is_deterministic(blocks in blocks()) {
        let g = build_chain(&blocks);
        for backend in [Backend::One, Backend::Two] {
            let a = solve_pipeline(&g, backend).expect("first solve");
            let b = solve_pipeline(&g, backend).expect("second solve");
            prop_assert_eq!(&a.pair.mod2, &b.pair.mod2);
            prop_assert_eq!(&a.pair.mod3, &b.pair.mod3);
            prop_assert_eq!(&a.mod6, &b.mod6);
            let av: Vec<_> = a.integer.iter().collect();
            let bv: Vec<_> = b.integer.iter().collect();
            prop_assert_eq!(av, bv);
        }
    }

    /// On graphs with a small cycle space the exhaustive enumerator
    /// independently finds a 6-flow, and its checker accepts both
    /// constructive solutions.
    #[test]
    fn enumeration_oracle_agrees(blocks in small_blocks()) {
        let g = build_chain(&blocks);
        let witness = oracle::find_nowhere_zero_mod_flow(&g, 6)
            .expect("dimension in range");
        prop_assert!(witness.is_some(), "a bridgeless graph must carry a 6-flow");
        for backend in [Backend::One, Backend::Two] {
            let solution = solve_pipeline(&g, backend).expect("solve");
            prop_assert!(oracle::is_nowhere_zero_mod_flow(&g, &solution.mod6, 6));
        }
    }
}
