use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use edgecolor::bench::{scaling, update_workload, ScalingAlgorithm};
use edgecolor::edge::{approx_edge_coloring, edge_coloring, epsilon_coloring, EdgeError};
use edgecolor::engine::{Engine, Mode};
use edgecolor::gen::GenSpec;
use edgecolor::graph::Graph;
use edgecolor::verify::{check_palette, check_proper_edge_coloring, distinct_colors};
use edgecolor::vertex::IsStrategy;

#[derive(Parser)]
#[command(name = "edgecolor", version, about = "Parallel (Δ+1)-edge-coloring with work/depth accounting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color one graph and print a JSON report.
    Color(ColorArgs),
    /// Random insert/delete workload on a dynamic coloring.
    UpdateBench(UpdateArgs),
    /// Depth and work over a sweep of sizes, one JSON row per line.
    Scaling(ScalingArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Edge-list file.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Generator: k<n>, c<n>, petersen, grid<W>x<H>, gnp:<n>:<p>, regular:<n>:<d>.
    #[arg(long, group = "source")]
    gen: Option<String>,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "delta1")]
    strategy: IsStrategy,
    #[arg(long, default_value = "faithful")]
    mode: Mode,
    /// `(1 + ε)Δ` colors.
    #[arg(long, conflicts_with = "h")]
    epsilon: Option<f64>,
    /// `Δ + 3·2^h` colors.
    #[arg(long)]
    h: Option<u32>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct UpdateArgs {
    #[arg(long, default_value_t = 512)]
    n: usize,
    #[arg(long, default_value_t = 16)]
    delta_max: usize,
    #[arg(long, default_value_t = 10_000)]
    ops: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "faithful")]
    mode: Mode,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ScalingArgs {
    /// maximal-path, edge-coloring or update.
    #[arg(long)]
    algorithm: ScalingAlgorithm,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Regular degree, or the degree cap for updates.
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "faithful")]
    mode: Mode,
}

#[derive(Serialize)]
struct RunReport {
    schema: u32,
    algorithm: String,
    strategy: IsStrategy,
    mode: Mode,
    n: usize,
    m: usize,
    delta: usize,
    arboricity_bound: usize,
    colors_used: usize,
    palette: u32,
    proper: bool,
    depth: u64,
    work: u64,
    peak_processors: u64,
    wall_ms: f64,
    seed: Option<u64>,
}

enum Failure {
    Usage(String),
    Verification(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Color(a) => cmd_color(a),
        Command::UpdateBench(a) => cmd_update_bench(a),
        Command::Scaling(a) => cmd_scaling(a),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(source: &Source, seed: Option<u64>) -> Result<Graph, Failure> {
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path).map_err(|e| usage(&format!("{}: {e}", path.display())))?;
        return Graph::parse_edge_list(&text).map_err(|e| usage(&e));
    }
    let spec: GenSpec = source.gen.as_deref().unwrap_or_default().parse().map_err(|e| usage(&e))?;
    spec.generate(seed).map_err(|e| usage(&e))
}

fn emit<T: Serialize>(value: &T, path: Option<&PathBuf>) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(value).expect("reports serialize");
    println!("{json}");
    if let Some(p) = path {
        std::fs::write(p, json + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn cmd_color(a: ColorArgs) -> Result<(), Failure> {
    let g = load(&a.source, a.seed)?;
    let mut eng = Engine::new(a.mode);
    let start = Instant::now();
    let (algorithm, result) = match (a.epsilon, a.h) {
        (Some(eps), _) => ("epsilon-coloring", epsilon_coloring(&mut eng, &g, eps, a.strategy).map(|o| o.coloring)),
        (_, Some(h)) => ("approx-coloring", approx_edge_coloring(&mut eng, &g, h, a.strategy).map(|o| o.coloring)),
        _ => ("edge-coloring", edge_coloring(&mut eng, &g, a.strategy).map(|o| o.coloring)),
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let coloring = result.map_err(|e| match e {
        EdgeError::EpsilonOutOfRange { .. } | EdgeError::HTooLarge { .. } => Failure::Usage(e.to_string()),
        other => Failure::Verification(other.to_string()),
    })?;
    let colors = coloring.to_vec();
    let proper = check_proper_edge_coloring(g.n(), g.edges(), &colors);
    let in_palette = check_palette(&colors, coloring.palette());
    let meter = eng.meter();
    let report = RunReport {
        schema: 1,
        algorithm: algorithm.into(),
        strategy: a.strategy,
        mode: a.mode,
        n: g.n(),
        m: g.m(),
        delta: g.max_degree(),
        arboricity_bound: g.degeneracy(),
        colors_used: distinct_colors(&colors),
        palette: coloring.palette(),
        proper: proper.pass && in_palette.pass,
        depth: meter.depth,
        work: meter.work,
        peak_processors: meter.peak_processors,
        wall_ms,
        seed: a.seed,
    };
    emit(&report, a.report.as_ref())?;
    if !report.proper {
        let w = if proper.pass { in_palette } else { proper };
        return Err(Failure::Verification(format!("{} {:?}", w.check, w.witness)));
    }
    Ok(())
}

fn cmd_update_bench(a: UpdateArgs) -> Result<(), Failure> {
    if a.n < 2 {
        return Err(Failure::Usage("n must be at least 2".into()));
    }
    let stats = update_workload(a.mode, a.n, a.delta_max, a.ops, a.seed)
        .map_err(|e| Failure::Verification(e.to_string()))?;
    emit(&stats, a.report.as_ref())?;
    if !stats.all_proper {
        return Err(Failure::Verification(format!("after op {:?}", stats.first_violation)));
    }
    Ok(())
}

fn cmd_scaling(a: ScalingArgs) -> Result<(), Failure> {
    let rows = scaling(a.algorithm, &a.sizes, a.degree, a.mode, a.seed).map_err(|e| Failure::Usage(e.to_string()))?;
    for r in rows {
        println!("{}", serde_json::to_string(&r).expect("rows serialize"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("edgecolor").chain(args.iter().copied()))
    }

    #[test]
    fn source_is_required_and_exclusive() {
        assert!(parse(&["color"]).is_err());
        assert!(parse(&["color", "--gen", "k4", "--input", "x.txt"]).is_err());
        assert!(parse(&["color", "--gen", "k4"]).is_ok());
    }

    #[test]
    fn epsilon_conflicts_with_h() {
        assert!(parse(&["color", "--gen", "k4", "--epsilon", "0.5", "--h", "1"]).is_err());
    }

    #[test]
    fn bad_input_is_a_usage_error() {
        let src = Source { input: None, gen: Some("gnp:10:0.5".into()) };
        assert!(matches!(load(&src, None), Err(Failure::Usage(_))));
        let src = Source { input: None, gen: Some("nonsense".into()) };
        assert!(matches!(load(&src, None), Err(Failure::Usage(_))));
    }

    #[test]
    fn epsilon_out_of_range_is_a_usage_error() {
        let a = parse(&["color", "--gen", "k4", "--epsilon", "0.1", "--mode", "fast"]).unwrap();
        let Command::Color(a) = a.command else { unreachable!() };
        assert!(matches!(cmd_color(a), Err(Failure::Usage(_))));
    }

    #[test]
    fn scaling_needs_sizes() {
        assert!(parse(&["scaling", "--algorithm", "maximal-path"]).is_err());
        assert!(parse(&["scaling", "--algorithm", "bogus", "--sizes", "8"]).is_err());
    }
}
