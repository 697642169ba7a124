//! `vcsim` — generate topologies, run the distributed vertex cover
//! algorithms on the round-synchronous kernel, query the exact oracle, and
//! produce comparison reports.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use vcsim_core::{
    compare, generate, load_edge_list, min_vertex_cover_bnb, min_vertex_cover_enumerate, report,
    run, save_edge_list, BfsProgram, Graph, GreedyMode, GreedyProgram, MatchingProgram, NodeId,
    SimConfig, SimResult, TopologySpec, TraceLevel,
};

#[derive(Parser)]
#[command(name = "vcsim", version, about = "Distributed vertex cover simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a topology and write it as an edge-list file.
    Gen(GenArgs),
    /// Run one algorithm on a graph and print the result as JSON.
    Run(RunArgs),
    /// Compute an exact minimum vertex cover and print it as JSON.
    Oracle(OracleArgs),
    /// Run the oracle plus all three algorithms and emit a comparison report.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Path,
    Cycle,
    Star,
    Complete,
    RandomGeometric,
    RandomGnp,
}

#[derive(Args)]
struct GenArgs {
    /// Topology family.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Node count.
    #[arg(long)]
    n: u64,
    /// Connection radius (random-geometric only).
    #[arg(long)]
    radius: Option<f64>,
    /// Edge probability (random-gnp only).
    #[arg(long)]
    edge_prob: Option<f64>,
    /// PRNG seed for the random families.
    #[arg(long, env = "VCSIM_SEED", default_value_t = 0)]
    seed: u64,
    /// Output edge-list file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Greedy,
    Matching,
    Bfs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GreedyModeArg {
    Faithful,
    Safe,
}

impl From<GreedyModeArg> for GreedyMode {
    fn from(m: GreedyModeArg) -> Self {
        match m {
            GreedyModeArg::Faithful => GreedyMode::Faithful,
            GreedyModeArg::Safe => GreedyMode::Safe,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TraceArg {
    Off,
    Counts,
    Full,
}

impl From<TraceArg> for TraceLevel {
    fn from(t: TraceArg) -> Self {
        match t {
            TraceArg::Off => TraceLevel::Off,
            TraceArg::Counts => TraceLevel::Counts,
            TraceArg::Full => TraceLevel::Full,
        }
    }
}

#[derive(Args)]
struct SimArgs {
    /// Edge-list file to simulate on.
    #[arg(long)]
    graph: PathBuf,
    /// BFS sink node (defaults to the minimum node ID).
    #[arg(long)]
    sink: Option<NodeId>,
    /// Greedy threshold discipline.
    #[arg(long, value_enum, default_value_t = GreedyModeArg::Faithful)]
    greedy_mode: GreedyModeArg,
    /// Round guard (defaults to 4x the node count).
    #[arg(long)]
    max_rounds: Option<u64>,
}

impl SimArgs {
    fn load(&self) -> Result<(Graph, SimConfig)> {
        let g = load_edge_list(&self.graph)
            .with_context(|| format!("cannot load graph {}", self.graph.display()))?;
        let mut cfg = SimConfig::for_graph(&g);
        cfg.sink = self.sink;
        cfg.greedy_mode = self.greedy_mode.into();
        if let Some(max_rounds) = self.max_rounds {
            cfg.max_rounds = max_rounds;
        }
        Ok((g, cfg))
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    sim: SimArgs,
    /// Algorithm to run.
    #[arg(long, value_enum)]
    algo: AlgoArg,
    /// Trace detail carried in the result.
    #[arg(long, value_enum, default_value_t = TraceArg::Off)]
    trace: TraceArg,
    /// Write the full trace as JSON lines to this file (requires --trace full).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Enumerate,
    Bnb,
}

#[derive(Args)]
struct OracleArgs {
    /// Edge-list file to solve.
    #[arg(long)]
    graph: PathBuf,
    /// Solver to use.
    #[arg(long, value_enum, default_value_t = MethodArg::Enumerate)]
    method: MethodArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Table,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    sim: SimArgs,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let spec = match args.kind {
        KindArg::Path => TopologySpec::Path { n: args.n },
        KindArg::Cycle => TopologySpec::Cycle { n: args.n },
        KindArg::Star => TopologySpec::Star { n: args.n },
        KindArg::Complete => TopologySpec::Complete { n: args.n },
        KindArg::RandomGeometric => {
            let radius = args
                .radius
                .context("--radius is required for random-geometric")?;
            TopologySpec::RandomGeometric {
                n: args.n,
                radius,
                seed: args.seed,
            }
        }
        KindArg::RandomGnp => {
            let edge_prob = args
                .edge_prob
                .context("--edge-prob is required for random-gnp")?;
            TopologySpec::RandomGnp {
                n: args.n,
                edge_prob,
                seed: args.seed,
            }
        }
    };
    let g = generate(&spec)?;
    save_edge_list(&g, &args.out)
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    println!("{}", serde_json::to_string_pretty(&g.stats())?);
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let (g, mut cfg) = args.sim.load()?;
    cfg.trace_level = args.trace.into();
    let result: SimResult = match args.algo {
        AlgoArg::Greedy => run(&g, &GreedyProgram::from_config(&cfg), &cfg)?,
        AlgoArg::Matching => run(&g, &MatchingProgram::new(), &cfg)?,
        AlgoArg::Bfs => {
            if !g.is_connected() {
                bail!("bfs requires a connected graph");
            }
            let program = BfsProgram::from_config(&g, &cfg)?;
            run(&g, &program, &cfg)?
        }
    };
    if let Some(out) = &args.out {
        if cfg.trace_level != TraceLevel::Full {
            bail!("--out needs --trace full to have a trace to write");
        }
        std::fs::write(out, result.trace_jsonl())
            .with_context(|| format!("cannot write {}", out.display()))?;
    }
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let g = load_edge_list(&args.graph)
        .with_context(|| format!("cannot load graph {}", args.graph.display()))?;
    let result = match args.method {
        MethodArg::Enumerate => min_vertex_cover_enumerate(&g)?,
        MethodArg::Bnb => min_vertex_cover_bnb(&g)?,
    };
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let (g, cfg) = args.sim.load()?;
    let rows = compare(&g, &cfg)?;
    let rendered = match args.format {
        FormatArg::Csv => report::to_csv(&rows),
        FormatArg::Json => {
            let mut s = report::to_json(&rows);
            s.push('\n');
            s
        }
        FormatArg::Table => report::render_table(&rows),
    };
    match &args.out {
        Some(out) => std::fs::write(out, rendered)
            .with_context(|| format!("cannot write {}", out.display()))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Compare(args) => cmd_compare(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
