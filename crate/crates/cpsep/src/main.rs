//! Command-line front end: minimum cuts, separator enumeration, multiway
//! cut-uncut and separator checking over graph files and JSON instances.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit codes: 0 on success
//! (including infeasible answers), 2 on input errors, 3 on internal
//! contract violations.

use clap::{Parser, Subcommand};
use cpsep::enumerate;
use cpsep::error::Error;
use cpsep::flow;
use cpsep::graph::VertexSet;
use cpsep::nmwcu;
use cpsep::septools;
use cpsep::textio;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cpsep",
    about = "Connectivity-preserving separators and node multiway cut-uncut"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum A,B-separator of a graph file
    Mincut {
        /// Graph in text format (n m, edge lines, optional weights)
        graph: PathBuf,
        /// Source terminals, comma separated (e.g. "0" or "0,4")
        #[arg(short = 'A', long, value_delimiter = ',', required = true)]
        source: Vec<usize>,
        /// Sink terminals, comma separated
        #[arg(short = 'B', long, value_delimiter = ',', required = true)]
        sink: Vec<usize>,
        /// Minimize total vertex weight instead of cardinality
        #[arg(long)]
        weighted: bool,
    },
    /// Enumerate all constraint-preserving important separators (JSON instance)
    Enumerate {
        /// Instance file: {"graph", "s", "t", "A", "parts", "Q", "k"}
        instance: PathBuf,
        /// Include run statistics in the output
        #[arg(long)]
        stats: bool,
    },
    /// Solve a node multiway cut-uncut instance (JSON)
    Nmwcu {
        /// Instance file: {"graph", "parts", "k"}
        instance: PathBuf,
    },
    /// Check a vertex set against a constraint spec and emit a certificate
    Check {
        /// Graph in text format
        graph: PathBuf,
        /// Constraint spec JSON: {"parts", "Q", "B", "A"?}
        #[arg(long)]
        spec: PathBuf,
        /// The vertex set to check, comma separated
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
}

fn run(cli: Cli) -> cpsep::Result<()> {
    match cli.command {
        Command::Mincut {
            graph,
            source,
            sink,
            weighted,
        } => {
            let g = textio::load_graph_file(&graph)?;
            let a = VertexSet::new(source);
            let b = VertexSet::new(sink);
            let r = flow::min_separator(&g, &a, &b, weighted)?;
            let kappa = if r.kappa_is_infinite {
                json!("inf")
            } else {
                json!(r.size)
            };
            println!(
                "{}",
                json!({
                    "kappa": kappa,
                    "separator": r.separator.as_slice(),
                    "weight": r.weight,
                })
            );
        }
        Command::Enumerate { instance, stats } => {
            let base = parent_dir(&instance);
            let j: textio::EnumInstanceJson = textio::load_json(&instance)?;
            let ctx = j.to_context(&base)?;
            let (seps, run_stats) = enumerate::gen_seps(&ctx)?;
            let seps_json: Vec<&[usize]> = seps.iter().map(|s| s.as_slice()).collect();
            let out = if stats {
                json!({"separators": seps_json, "stats": run_stats})
            } else {
                json!({"separators": seps_json})
            };
            println!("{}", out);
        }
        Command::Nmwcu { instance } => {
            let base = parent_dir(&instance);
            let j: textio::NmwcuInstanceJson = textio::load_json(&instance)?;
            let inst = j.to_instance(&base)?;
            let sol = nmwcu::solve(&inst)?;
            println!(
                "{}",
                json!({
                    "feasible": sol.feasible,
                    "cut": sol.cut.as_slice(),
                    "weight": sol.total_weight,
                    "pairs_processed": sol.pairs_processed,
                })
            );
        }
        Command::Check { graph, spec, set } => {
            let g = textio::load_graph_file(&graph)?;
            let spec = textio::load_constraint_spec(&spec)?;
            let s = VertexSet::new(set);
            let cert = septools::certify(&g, &spec, spec.a(), spec.b(), &s)?;
            println!("{}", serde_json::to_string(&cert).expect("serializable"));
        }
    }
    Ok(())
}

fn parent_dir(path: &Path) -> PathBuf {
    path.parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::ContractViolation(_)) => {
            eprintln!("error: {}", e);
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
