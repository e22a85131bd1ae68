//! `secroute` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{self, ExperimentConfig, GraphKind};
use crate::game::{
    analytic_value, approx_value, approximation_error, simulate_rollouts, solve_edge_game,
    StageCostMatrix,
};
use crate::meta::{
    meta_game_csv, sensitivity_sweep_costs, sensitivity_sweep_stages, shortest_path_edge_attack,
    solve_meta_game,
};
use crate::roadmap::{
    generate_complete_dag, generate_sparse_graph, load_roadmap, to_json_string, Roadmap,
    SparseGraphParams, DEFAULT_STAGE_SCALE,
};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "secroute",
    version,
    about = "Secure routes from edge-games with a stopping state"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one edge-game by backward induction.
    EdgeGame(EdgeGameArgs),
    /// Continuum approximation of the edge value against the recursion.
    Analytic(AnalyticArgs),
    /// Build and solve the path-vs-edge meta-game of a roadmap.
    MetaGame(GraphArgs),
    /// Shortest path under edge-game weights and its worst single attack.
    Heuristic(GraphArgs),
    /// Equilibrium mass on the baseline's choices over a grid of cost ratios.
    SweepCosts(SweepCostsArgs),
    /// Equilibrium mass on the three-vertex network over stage counts.
    SweepStages(SweepStagesArgs),
    /// Generate a random roadmap.
    Generate(GenerateArgs),
    /// Meta-game against the heuristic on random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    /// Stage cost matrix, row-major.
    #[arg(long, value_name = "S11,S12,S21,S22", value_parser = parse_matrix, conflicts_with_all = ["r1", "r2", "s11"])]
    pub s: Option<StageCostMatrix>,
    /// Detection ratio s21/s11 (>= 1); builds s11 * [[1, 1], [r1, r2]].
    #[arg(long, requires = "r2")]
    pub r1: Option<f64>,
    /// Mobility ratio s22/s11 (< 1).
    #[arg(long, requires = "r1")]
    pub r2: Option<f64>,
    /// Scale of the ratio form.
    #[arg(long, requires = "r1")]
    pub s11: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write machine-readable results here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EdgeGameArgs {
    #[command(flatten)]
    pub cost: CostArgs,
    #[arg(long, value_parser = positive)]
    pub stages: usize,
    /// Monte-Carlo rollouts of the equilibrium policies (0 to skip).
    #[arg(long, default_value_t = 0)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(long)]
    pub r1: f64,
    #[arg(long)]
    pub r2: f64,
    #[arg(long, value_parser = positive)]
    pub stages: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Roadmap JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    /// Defaults to the last vertex.
    #[arg(long)]
    pub target: Option<usize>,
    /// Replace the stage cost of every edge.
    #[command(flatten)]
    pub cost: CostArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct SweepCostsArgs {
    /// Roadmap JSON file; the three-vertex network when omitted.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,1.5,2,3,5,8")]
    pub r1: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0,0.2,0.4,0.6,0.8")]
    pub r2: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub s11: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct SweepStagesArgs {
    #[command(flatten)]
    pub cost: CostArgs,
    /// Stage counts of the direct edge.
    #[arg(long, value_delimiter = ',', value_parser = positive, default_value = "6")]
    pub stages: Vec<usize>,
    /// Stage counts of each detour leg.
    #[arg(long, value_delimiter = ',', value_parser = positive, default_value = "1,2,3,4,5,6,8,10")]
    pub alt_stages: Vec<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct GraphGenArgs {
    #[arg(long, value_parser = parse_kind, default_value = "sparse")]
    pub kind: GraphKind,
    #[arg(long, default_value_t = 2.0)]
    pub degree_lo: f64,
    #[arg(long, default_value_t = 3.0)]
    pub degree_hi: f64,
    #[arg(long, default_value_t = DEFAULT_STAGE_SCALE)]
    pub stage_scale: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub cost: CostArgs,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Number of vertices.
    #[arg(long)]
    pub sizes: usize,
    #[command(flatten)]
    pub graph: GraphGenArgs,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "4,6,8,10,12,14")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub runs: usize,
    #[command(flatten)]
    pub graph: GraphGenArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_matrix(s: &str) -> Result<StageCostMatrix, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c, d] => StageCostMatrix::new(a, b, c, d).map_err(|e| e.to_string()),
        _ => Err(format!(
            "expected 4 comma-separated numbers, got {}",
            v.len()
        )),
    }
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

impl CostArgs {
    fn resolve(&self) -> Result<Option<StageCostMatrix>, Error> {
        match (self.s, self.r1, self.r2) {
            (Some(s), _, _) => Ok(Some(s)),
            (None, Some(r1), Some(r2)) => {
                StageCostMatrix::parameterized(self.s11.unwrap_or(1.0), r1, r2).map(Some)
            }
            _ => Ok(None),
        }
    }

    fn resolve_or_reference(&self) -> Result<StageCostMatrix, Error> {
        Ok(self.resolve()?.unwrap_or_else(StageCostMatrix::reference))
    }
}

fn matrix_str(s: &StageCostMatrix) -> String {
    let [a, b, c, d] = s.entries();
    format!("{a},{b},{c},{d}")
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn config_lines(command: &str, fields: &[(&str, String)]) -> String {
    let mut out = format!("# command={command}\n");
    for (k, v) in fields {
        writeln!(out, "# {k}={v}").unwrap();
    }
    out
}

fn print_config(command: &str, fields: &[(&str, String)]) {
    print!("{}", config_lines(command, fields));
}

fn write_out(path: &FsPath, text: &str) -> Result<(), Error> {
    std::fs::write(path, text)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn emit<T: Serialize>(out: &OutArgs, value: &T, csv: impl FnOnce() -> String) -> Result<(), Error> {
    let Some(path) = &out.out else { return Ok(()) };
    let text = match out.format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Csv => csv(),
    };
    write_out(path, &text)
}

fn rows_csv<T: Serialize>(rows: &[T]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::InvariantViolation(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvariantViolation(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn edge_game(a: &EdgeGameArgs) -> Outcome {
    let s = a.cost.resolve_or_reference()?;
    print_config(
        "edge-game",
        &[
            ("s", matrix_str(&s)),
            ("stages", a.stages.to_string()),
            ("runs", a.runs.to_string()),
            ("seed", a.seed.to_string()),
        ],
    );
    let sol = solve_edge_game(&s, a.stages)?;
    println!("V_0 = {:.6}", sol.value());
    println!(
        "{:>6} {:>14} {:>10} {:>10}",
        "stage", "value", "y_active", "z_active"
    );
    for k in 1..=sol.num_stages {
        let (y, z) = (sol.defender_policies[k - 1], sol.attacker_policies[k - 1]);
        println!(
            "{k:>6} {:>14.6} {:>10.6} {:>10.6}",
            sol.values[k - 1],
            y.active,
            z.active
        );
    }
    if a.runs > 0 {
        let stats = simulate_rollouts(
            &s,
            &sol.defender_policies,
            &sol.attacker_policies,
            a.runs,
            a.seed,
        )?;
        println!(
            "rollouts: mean = {:.6}, std_error = {:.6}, n = {}",
            stats.mean_payoff, stats.std_error, stats.num_rollouts
        );
    }
    emit(&a.out, &sol, || {
        let mut t = String::from("stage,value,y_active,z_active\n");
        for k in 1..=sol.num_stages {
            let (y, z) = (sol.defender_policies[k - 1], sol.attacker_policies[k - 1]);
            writeln!(t, "{k},{},{},{}", sol.values[k - 1], y.active, z.active).unwrap();
        }
        t
    })?;
    Ok(())
}

#[derive(Serialize)]
struct AnalyticRow {
    stage: usize,
    recursion: f64,
    analytic: f64,
    approx: f64,
}

fn analytic(a: &AnalyticArgs) -> Outcome {
    print_config(
        "analytic",
        &[
            ("r1", a.r1.to_string()),
            ("r2", a.r2.to_string()),
            ("stages", a.stages.to_string()),
        ],
    );
    let s = StageCostMatrix::parameterized(1.0, a.r1, a.r2)?;
    let sol = solve_edge_game(&s, a.stages)?;
    let rows = (1..=a.stages)
        .map(|k| {
            Ok(AnalyticRow {
                stage: k,
                recursion: sol.values[k - 1],
                analytic: analytic_value(a.r1, a.r2, a.stages, k)?,
                approx: approx_value(a.r1, a.r2, a.stages, k),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let first = &rows[0];
    println!("V_0 (recursion)   = {:.6}", first.recursion);
    println!("V(1) (continuum)  = {:.6}", first.analytic);
    println!("V(1) (approx)     = {:.6}", first.approx);
    println!(
        "approx error      = {:.4}%",
        approximation_error(a.r1, a.r2, a.stages)?
    );
    emit(&a.out, &rows, || {
        rows_csv(&rows).expect("flat rows serialize")
    })?;
    Ok(())
}

fn load_graph(path: &FsPath, cost: &CostArgs) -> Result<Roadmap, Error> {
    let g = load_roadmap(path)?;
    Ok(match cost.resolve()? {
        Some(s) => g.with_stage_cost(s),
        None => g,
    })
}

fn target_or_last(g: &Roadmap, target: Option<usize>) -> usize {
    target.unwrap_or(g.num_vertices() - 1)
}

fn graph_config(command: &str, a: &GraphArgs, g: &Roadmap, target: usize) -> Result<(), Error> {
    let mut fields = vec![
        ("graph", a.graph.display().to_string()),
        ("source", a.source.to_string()),
        ("target", target.to_string()),
    ];
    if let Some(s) = a.cost.resolve()? {
        fields.push(("s", matrix_str(&s)));
    }
    fields.push(("vertices", g.num_vertices().to_string()));
    fields.push(("edges", g.edges.len().to_string()));
    print_config(command, &fields);
    Ok(())
}

fn meta_game(a: &GraphArgs) -> Outcome {
    let g = load_graph(&a.graph, &a.cost)?;
    let t = target_or_last(&g, a.target);
    graph_config("meta-game", a, &g, t)?;
    let meta = solve_meta_game(&g, a.source, t)?;
    let dump = meta_game_csv(&g, &meta);
    print!("{dump}");
    println!("duality_gap,{:e}", meta.duality_gap);
    emit(&a.out, &meta, || dump.clone())?;
    Ok(())
}

fn heuristic(a: &GraphArgs) -> Outcome {
    let g = load_graph(&a.graph, &a.cost)?;
    let t = target_or_last(&g, a.target);
    graph_config("heuristic", a, &g, t)?;
    let h = shortest_path_edge_attack(&g, a.source, t)?;
    let worst = &g.edges[h.worst_edge];
    println!("shortest_path = {}", h.shortest_path.label());
    println!("attacked_length = {:.6}", h.attacked_length);
    println!("L_SEA = {:.6}", h.length_under_attack);
    println!(
        "worst_edge = {} ({}->{})",
        h.worst_edge, worst.from, worst.to
    );
    emit(&a.out, &h, || {
        format!(
            "shortest_path,attacked_length,L_SEA,worst_edge\n{},{},{},{}\n",
            h.shortest_path.label(),
            h.attacked_length,
            h.length_under_attack,
            h.worst_edge
        )
    })?;
    Ok(())
}

fn sweep_costs(a: &SweepCostsArgs) -> Outcome {
    let g = match &a.graph {
        Some(p) => load_roadmap(p)?,
        None => crate::roadmap::three_vertex_roadmap(StageCostMatrix::reference(), 6, 3)?,
    };
    let t = target_or_last(&g, a.target);
    let graph = a
        .graph
        .as_ref()
        .map_or("three-vertex".into(), |p| p.display().to_string());
    print_config(
        "sweep-costs",
        &[
            ("graph", graph),
            ("source", a.source.to_string()),
            ("target", t.to_string()),
            ("r1", list(&a.r1)),
            ("r2", list(&a.r2)),
            ("s11", a.s11.to_string()),
        ],
    );
    let pts = sensitivity_sweep_costs(&g, a.source, t, &a.r1, &a.r2, a.s11)?;
    println!(
        "{:>8} {:>8} {:>16} {:>16}",
        "r1", "r2", "p_shortest_path", "p_shortest_edge"
    );
    for p in &pts {
        println!(
            "{:>8} {:>8} {:>16.6} {:>16.6}",
            p.r1, p.r2, p.p_shortest_path, p.p_shortest_edge
        );
    }
    emit(&a.out, &pts, || {
        rows_csv(&pts).expect("flat rows serialize")
    })?;
    Ok(())
}

fn sweep_stages(a: &SweepStagesArgs) -> Outcome {
    let s = a.cost.resolve_or_reference()?;
    print_config(
        "sweep-stages",
        &[
            ("s", matrix_str(&s)),
            ("stages", list(&a.stages)),
            ("alt_stages", list(&a.alt_stages)),
        ],
    );
    let pts = sensitivity_sweep_stages(s, &a.stages, &a.alt_stages)?;
    println!(
        "{:>7} {:>7} {:>16} {:>16} {:>14} {:>14}",
        "direct", "alt", "p_shortest_path", "p_shortest_edge", "p_direct_path", "p_direct_edge"
    );
    for p in &pts {
        println!(
            "{:>7} {:>7} {:>16.6} {:>16.6} {:>14.6} {:>14.6}",
            p.stages_direct,
            p.stages_alt,
            p.p_shortest_path,
            p.p_shortest_edge,
            p.p_direct_path,
            p.p_direct_edge
        );
    }
    emit(&a.out, &pts, || {
        rows_csv(&pts).expect("flat rows serialize")
    })?;
    Ok(())
}

fn graph_fields(g: &GraphGenArgs, s: &StageCostMatrix) -> Vec<(&'static str, String)> {
    let mut f = vec![("kind", g.kind.to_string())];
    if g.kind == GraphKind::Sparse {
        f.push(("degree", format!("{},{}", g.degree_lo, g.degree_hi)));
    }
    f.push(("stage_scale", g.stage_scale.to_string()));
    f.push(("s", matrix_str(s)));
    f.push(("seed", g.seed.to_string()));
    f
}

fn generate(a: &GenerateArgs) -> Outcome {
    let s = a.graph.cost.resolve_or_reference()?;
    let mut fields = vec![("vertices", a.sizes.to_string())];
    fields.extend(graph_fields(&a.graph, &s));
    // keep standard output valid JSON when the graph goes there
    let config = config_lines("generate", &fields);
    if a.out.is_some() {
        print!("{config}");
    } else {
        eprint!("{config}");
    }
    let g = match a.graph.kind {
        GraphKind::Sparse => {
            let (g, attempts) = generate_sparse_graph(&SparseGraphParams {
                n_vertices: a.sizes,
                degree_low: a.graph.degree_lo,
                degree_high: a.graph.degree_hi,
                stage_scale: a.graph.stage_scale,
                stage_cost: s,
                seed: a.graph.seed,
            })?;
            eprintln!("# attempts={attempts}");
            g
        }
        GraphKind::CompleteDag => {
            generate_complete_dag(a.sizes, a.graph.stage_scale, s, a.graph.seed)?
        }
    };
    let json = to_json_string(&g)?;
    match &a.out {
        Some(p) => write_out(p, &(json + "\n"))?,
        None => println!("{json}"),
    }
    Ok(())
}

fn run_bench(a: &BenchArgs) -> Outcome {
    let s = a.graph.cost.resolve_or_reference()?;
    let cfg = ExperimentConfig {
        vertex_counts: a.sizes.clone(),
        graph_kind: a.graph.kind,
        runs_per_size: a.runs,
        degree_range: (a.graph.degree_lo, a.graph.degree_hi),
        stage_scale: a.graph.stage_scale,
        stage_cost: s,
        seed: a.graph.seed,
    };
    cfg.validate()?;
    println!("# command=bench");
    for line in cfg.describe() {
        println!("# {line}");
    }
    let outcome = bench::run_experiment(&cfg)?;
    println!(
        "{:>4} {:>12} {:>12} {:>12} {:>6}",
        "n", "time_ratio", "cost_ratio", "p_shortest", "runs"
    );
    if !outcome.records.is_empty() {
        for r in bench::summarize(&outcome.records)? {
            println!(
                "{:>4} {:>12.4} {:>12.4} {:>12.4} {:>6}",
                r.n, r.mean_time_ratio, r.mean_cost_ratio, r.mean_p_shortest, r.runs
            );
        }
    }
    println!("retries = {}", outcome.retries);
    println!("failures = {}", outcome.failures.len());
    for f in &outcome.failures {
        println!("  n={} run={}: {}", f.n_vertices, f.run_index, f.message);
    }
    if let Some(path) = &a.out.out {
        let text = match a.out.format {
            Format::Csv => bench::results_csv(&cfg, &outcome.records)?,
            Format::Json => serde_json::to_string_pretty(&outcome).map_err(Error::from)? + "\n",
        };
        write_out(path, &text)?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::EdgeGame(a) => edge_game(a),
        Command::Analytic(a) => analytic(a),
        Command::MetaGame(a) => meta_game(a),
        Command::Heuristic(a) => heuristic(a),
        Command::SweepCosts(a) => sweep_costs(a),
        Command::SweepStages(a) => sweep_stages(a),
        Command::Generate(a) => generate(a),
        Command::Bench(a) => run_bench(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code: 0 on success, 1 for errors of the problem instance,
/// 2 for bad invocations.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            2
        }
    }
}
