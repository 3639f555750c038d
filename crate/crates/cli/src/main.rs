//! `kneserb`: build, verify, and bound b-colorings of Kneser graphs.
//!
//! Exit codes: 0 success/certified, 1 semantic failure (a checked coloring
//! is not a b-coloring), 2 input or usage error.

use kneser_b_cli::format;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use kneser_b::kneser::{self, KneserParams};
use kneser_b::solver::{self, SearchBudget, SearchResult};
use kneser_b::{construction, verify};

/// Refuse to materialize colorings beyond this many vertices.
const MAX_COLORING_VERTICES: u64 = 10_000_000;
/// DOT export is for eyeballing only.
const MAX_DOT_VERTICES: u64 = 64;

#[derive(Parser)]
#[command(name = "kneserb", version, about = "b-colorings of Kneser graphs KG(m,n)")]
struct Cli {
    /// Worker threads (default: all cores, or $KNESERB_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the b-coloring of KG(m,n) and write it as JSON lines
    Color {
        m: u32,
        n: u32,
        /// Output file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring file and print the verification report as JSON
    Verify {
        /// Coloring file, or "-" for stdin
        input: PathBuf,
    },
    /// Print certified lower/upper bounds for the b-chromatic number
    Bounds { m: u32, n: u32 },
    /// Exact b-chromatic number by pruned backtracking (desk scale)
    Brute {
        m: u32,
        n: u32,
        /// Wall-clock budget in seconds
        #[arg(long)]
        budget: Option<f64>,
        /// Search node budget
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Refuse instances with more vertices than this
        #[arg(long, default_value_t = 30)]
        cap: u64,
    },
    /// Emit the graph in DOT format (refused above 64 vertices)
    ExportDot { m: u32, n: u32 },
}

fn main() {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("KNESERB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        // Ignore failure: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut stdout = io::stdout().lock();
    serde_json::to_writer(&mut stdout, value)?;
    stdout.write_all(b"\n")?;
    Ok(())
}

fn parse_params(m: u32, n: u32) -> Result<KneserParams> {
    KneserParams::new(m, n).map_err(Into::into)
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Color { m, n, output } => cmd_color(m, n, output),
        Cmd::Verify { input } => cmd_verify(input),
        Cmd::Bounds { m, n } => cmd_bounds(m, n),
        Cmd::Brute {
            m,
            n,
            budget,
            max_nodes,
            cap,
        } => cmd_brute(m, n, budget, max_nodes, cap),
        Cmd::ExportDot { m, n } => cmd_export_dot(m, n),
    }
}

fn cmd_color(m: u32, n: u32, output: Option<PathBuf>) -> Result<i32> {
    let p = parse_params(m, n)?;
    if p.vertex_count() > MAX_COLORING_VERTICES {
        bail!(
            "KG({m},{n}) has {} vertices; refusing to materialize more than {}",
            p.vertex_count(),
            MAX_COLORING_VERTICES
        );
    }
    let kind = construction::kind(p)?;
    let coloring = construction::build(p)?;
    match output {
        Some(path) => {
            let file = File::create(&path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            format::write_coloring(BufWriter::new(file), &coloring, kind.wire_tag())?;
        }
        None => {
            let stdout = io::stdout().lock();
            format::write_coloring(BufWriter::new(stdout), &coloring, kind.wire_tag())?;
        }
    }
    Ok(0)
}

fn cmd_verify(input: PathBuf) -> Result<i32> {
    let coloring = if input.as_os_str() == "-" {
        format::read_coloring(io::stdin().lock())?
    } else {
        let file = File::open(&input)
            .with_context(|| format!("cannot open {}", input.display()))?;
        format::read_coloring(BufReader::new(file))?
    };
    let report = verify::is_b_coloring(&coloring);
    print_json(&format::report_json(coloring.params(), &report))?;
    Ok(if report.is_b { 0 } else { 1 })
}

#[derive(Serialize)]
struct BoundsJson {
    lower: u64,
    upper: u64,
}

fn cmd_bounds(m: u32, n: u32) -> Result<i32> {
    let p = parse_params(m, n)?;
    let (lower, upper) = solver::bounds(p);
    print_json(&BoundsJson { lower, upper })?;
    Ok(0)
}

#[derive(Serialize)]
struct BruteJson {
    lower: u64,
    upper: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<[u64; 2]>,
}

fn cmd_brute(
    m: u32,
    n: u32,
    budget_secs: Option<f64>,
    max_nodes: Option<u64>,
    cap: u64,
) -> Result<i32> {
    let p = parse_params(m, n)?;
    let budget = SearchBudget {
        max_nodes,
        time_limit: budget_secs.map(Duration::from_secs_f64),
        vertex_cap: cap,
    };
    let (lower, upper) = solver::bounds(p);
    let result = solver::exact_b_chromatic(p, &budget)?;
    let json = match result {
        SearchResult::Exact { value, .. } => BruteJson {
            lower,
            upper,
            exact: Some(value),
            interval: None,
        },
        SearchResult::Interval {
            lower: ilo,
            upper: ihi,
        } => BruteJson {
            lower,
            upper,
            exact: None,
            interval: Some([ilo, ihi]),
        },
    };
    print_json(&json)?;
    Ok(0)
}

fn cmd_export_dot(m: u32, n: u32) -> Result<i32> {
    let p = parse_params(m, n)?;
    if p.vertex_count() > MAX_DOT_VERTICES {
        bail!(
            "KG({m},{n}) has {} vertices; DOT export is capped at {} (the explicit edge list explodes)",
            p.vertex_count(),
            MAX_DOT_VERTICES
        );
    }
    let name = |v: kneser_b::VertexSet| {
        v.elements()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::new();
    out.push_str(&format!("graph kneser_{m}_{n} {{\n"));
    let verts: Vec<_> = kneser::vertices(p).collect();
    for &v in &verts {
        out.push_str(&format!("  \"{}\";\n", name(v)));
    }
    for &a in &verts {
        for &b in &verts {
            if a < b && kneser::adjacent(a, b) {
                out.push_str(&format!("  \"{}\" -- \"{}\";\n", name(a), name(b)));
            }
        }
    }
    out.push_str("}\n");
    print!("{out}");
    Ok(0)
}
