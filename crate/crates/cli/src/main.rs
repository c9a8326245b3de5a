//! Command-line front end: solve, verify, convert, enumerate, generate,
//! and trace the reduction of bridgeless multigraphs.
//!
//! Exit codes are uniform across subcommands: 0 when the requested work
//! succeeded (including the oracle deciding `none`), 1 when the input was
//! understood but the property fails (no flow on a bridged graph, failed
//! verification), and 2 for usage, parse, and IO problems.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nzflow::format;
use nzflow::gens;
use nzflow_core::flow::{self, FlowPair};
use nzflow_core::oracle;
use nzflow_core::pipeline::{self, Backend, Solution};
use nzflow_core::reduce::{self, LeafKind, TraceEvent};
use nzflow_core::{EdgeId, MultiGraph};

#[derive(Parser)]
#[command(
    name = "nzflow",
    version,
    about = "Nowhere-zero 6-flows on bridgeless multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// The even-subgraph construction.
    One,
    /// The charged-demand construction.
    Two,
    /// Run both and check they agree with the verifier.
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a nowhere-zero 6-flow for the graph in FILE.
    Solve {
        /// Graph document to solve.
        file: PathBuf,
        /// Which construction drives the cubic leaf instances.
        #[arg(long, value_enum, default_value_t = Algo::One)]
        algo: Algo,
        /// Also write a Graphviz rendering with integer flow labels.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a flow document against a graph document.
    Verify {
        /// Graph document.
        graph: PathBuf,
        /// Flow document to check.
        flow: PathBuf,
    },
    /// Rebuild the combined and integer columns from the parity and
    /// ternary columns of a flow document.
    Convert {
        /// Graph document.
        graph: PathBuf,
        /// Flow document whose parity and ternary columns to keep.
        flow: PathBuf,
    },
    /// Exhaustively decide whether a nowhere-zero mod-k flow exists.
    /// Prints `exists` or `none`; both are successful decisions.
    Oracle {
        /// Modulus, between 2 and 6.
        #[arg(long)]
        k: u8,
        /// Graph document to search.
        file: PathBuf,
    },
    /// Print a generated graph document.
    Gen {
        /// Family: petersen, k4, k5, cycle, theta, prism, moebius,
        /// random-cubic, or random-2ec.
        name: String,
        /// Vertex count (cycle, prism, moebius, random-cubic, random-2ec).
        #[arg(long)]
        n: Option<usize>,
        /// Edge count (theta, random-2ec).
        #[arg(long)]
        m: Option<usize>,
        /// Random seed (random-cubic, random-2ec).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Show how a graph decomposes into directly solvable leaves.
    Reduce {
        /// Graph document to decompose.
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { file, algo, dot } => cmd_solve(&file, algo, dot.as_deref()),
        Command::Verify { graph, flow } => cmd_verify(&graph, &flow),
        Command::Convert { graph, flow } => cmd_convert(&graph, &flow),
        Command::Oracle { k, file } => cmd_oracle(k, &file),
        Command::Gen { name, n, m, seed } => cmd_gen(&name, n, m, seed),
        Command::Reduce { file } => cmd_reduce(&file),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<MultiGraph, String> {
    format::parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_flow(path: &Path) -> Result<format::FlowDocument, String> {
    format::parse_flow(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_solve(file: &Path, algo: Algo, dot: Option<&Path>) -> Result<ExitCode, String> {
    let g = load_graph(file)?;
    let backends: &[Backend] = match algo {
        Algo::One => &[Backend::One],
        Algo::Two => &[Backend::Two],
        Algo::Both => &[Backend::One, Backend::Two],
    };
    let mut solutions: Vec<Solution> = Vec::new();
    for &backend in backends {
        match pipeline::solve_pipeline(&g, backend) {
            Ok(solution) => solutions.push(solution),
            Err(e) => {
                eprintln!("cannot solve: {e}");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    let solution = &solutions[0];
    print!(
        "{}",
        format::serialize_flow(
            &g,
            &solution.pair.mod2,
            &solution.pair.mod3,
            &solution.mod6,
            &solution.integer,
        )
    );
    if solutions.len() == 2 {
        eprintln!("note: both constructions produced verified flows; printing the first");
    }
    if let Some(path) = dot {
        fs::write(path, format::serialize_dot(&g, Some(&solution.integer)))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(graph: &Path, flow_path: &Path) -> Result<ExitCode, String> {
    let g = load_graph(graph)?;
    let doc = load_flow(flow_path)?;
    let labels = format::vertex_labels(&g);
    let mut failures: Vec<String> = Vec::new();

    let graph_edges: BTreeSet<EdgeId> = g.edge_ids().collect();
    let doc_edges: BTreeSet<EdgeId> = doc.entries.iter().map(|entry| entry.edge).collect();
    for &e in graph_edges.difference(&doc_edges) {
        failures.push(format!("edge {e}: no value"));
    }
    for &e in doc_edges.difference(&graph_edges) {
        failures.push(format!("edge {e}: not in the graph"));
    }

    if failures.is_empty() {
        let pair =
            FlowPair::new(&g, doc.mod2(), doc.mod3()).map_err(|e| format!("internal: {e}"))?;
        let report = flow::verify_pair(&g, &pair).map_err(|e| format!("internal: {e}"))?;
        for &v in &report.mod2_violations {
            failures.push(format!(
                "vertex {}: parity boundary {}",
                labels[&v],
                flow::boundary_at(&g, &pair.mod2, v)
            ));
        }
        for &v in &report.mod3_violations {
            failures.push(format!(
                "vertex {}: ternary boundary {}",
                labels[&v],
                flow::boundary_at(&g, &pair.mod3, v)
            ));
        }
        for &e in &report.zero_pair_edges {
            failures.push(format!("edge {e}: zero value"));
        }
        let integers = flow::verify_integer_flow(&g, &doc.integer(), 6);
        for &v in &integers.kirchhoff_violations {
            failures.push(format!(
                "vertex {}: integer values do not balance",
                labels[&v]
            ));
        }
        for &e in &integers.range_violations {
            failures.push(format!("edge {e}: integer value out of range"));
        }
        for &e in &integers.missing_edges {
            failures.push(format!("edge {e}: no integer value"));
        }
    }

    if failures.is_empty() {
        println!("ok");
        Ok(ExitCode::SUCCESS)
    } else {
        for line in failures {
            println!("{line}");
        }
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_convert(graph: &Path, flow_path: &Path) -> Result<ExitCode, String> {
    let g = load_graph(graph)?;
    let doc = load_flow(flow_path)?;
    let pair = match FlowPair::new(&g, doc.mod2(), doc.mod3()) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("cannot convert: {e}");
            return Ok(ExitCode::FAILURE);
        }
    };
    match flow::verify_pair(&g, &pair) {
        Ok(report) if report.passed() => {}
        Ok(_) => {
            eprintln!("cannot convert: the parity and ternary columns are not a nowhere-zero flow");
            return Ok(ExitCode::FAILURE);
        }
        Err(e) => {
            eprintln!("cannot convert: {e}");
            return Ok(ExitCode::FAILURE);
        }
    }
    let mod6 = flow::crt_combine(&pair);
    let integer = flow::to_integer_flow(&g, &mod6).map_err(|e| format!("internal: {e}"))?;
    print!(
        "{}",
        format::serialize_flow(&g, &pair.mod2, &pair.mod3, &mod6, &integer)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(k: u8, file: &Path) -> Result<ExitCode, String> {
    let g = load_graph(file)?;
    match oracle::find_nowhere_zero_mod_flow(&g, k) {
        Ok(Some(witness)) => {
            println!("exists");
            for (e, value) in witness.iter() {
                println!("f {e} {value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Ok(None) => {
            println!("none");
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_gen(name: &str, n: Option<usize>, m: Option<usize>, seed: u64) -> Result<ExitCode, String> {
    fn need(value: Option<usize>, what: &str, family: &str) -> Result<usize, String> {
        value.ok_or_else(|| format!("{family} needs --{what}"))
    }
    let g = match name {
        "petersen" => gens::petersen(),
        "k4" => gens::k4(),
        "k5" => gens::k5(),
        "cycle" => gens::cycle(need(n, "n", name)?).map_err(|e| e.to_string())?,
        "theta" => gens::theta(need(m, "m", name)?).map_err(|e| e.to_string())?,
        "prism" => gens::prism(need(n, "n", name)?).map_err(|e| e.to_string())?,
        "moebius" => gens::moebius_ladder(need(n, "n", name)?).map_err(|e| e.to_string())?,
        "random-cubic" => match gens::random_cubic_3ec(need(n, "n", name)?, seed) {
            Ok(g) => g,
            Err(gens::GenError::Exhausted) => {
                eprintln!("cannot generate: {}", gens::GenError::Exhausted);
                return Ok(ExitCode::FAILURE);
            }
            Err(e) => return Err(e.to_string()),
        },
        "random-2ec" => match gens::random_2ec(need(n, "n", name)?, need(m, "m", name)?, seed) {
            Ok(g) => g,
            Err(gens::GenError::Exhausted) => {
                eprintln!("cannot generate: {}", gens::GenError::Exhausted);
                return Ok(ExitCode::FAILURE);
            }
            Err(e) => return Err(e.to_string()),
        },
        other => return Err(format!("unknown family {other:?}")),
    };
    print!("{}", format::serialize_graph(&g));
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(file: &Path) -> Result<ExitCode, String> {
    let g = load_graph(file)?;
    let trace = match reduce::reduce(&g) {
        Ok(trace) => trace,
        Err(e) => {
            eprintln!("cannot reduce: {e}");
            return Ok(ExitCode::FAILURE);
        }
    };
    println!("reduce {} {}", g.vertex_count(), g.edge_count());
    let mut steps = 0usize;
    for event in trace.events() {
        match event {
            TraceEvent::Split { cut_vertex, .. } => {
                steps += 1;
                println!("step split v={cut_vertex}");
            }
            TraceEvent::Contract {
                contracted,
                partner,
                ..
            } => {
                steps += 1;
                println!("step contract e={contracted} partner={partner}");
            }
            TraceEvent::Expand { hub, ring, .. } => {
                steps += 1;
                println!("step expand v={hub} k={}", ring.len());
            }
            TraceEvent::Leaf { graph, kind, .. } => {
                let tag = match kind {
                    LeafKind::Small => "small",
                    LeafKind::Cubic => "cubic3ec",
                };
                println!(
                    "leaf {tag} n={} m={}",
                    graph.vertex_count(),
                    graph.edge_count()
                );
            }
        }
    }
    println!("steps {steps} leaves {}", trace.leaf_count());
    Ok(ExitCode::SUCCESS)
}
