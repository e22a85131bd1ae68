//! Benchmark sweeps: meta-game against the shortest-path edge-attack
//! baseline on random graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::game::StageCostMatrix;
use crate::meta::{
    enumerate_paths, mass_on_path, meta_matrix_with, shortest_path_edge_attack_with, EdgeWeights,
    MetaGame,
};
use crate::roadmap::{
    generate_complete_dag, generate_sparse_graph, Roadmap, SparseGraphParams, DEFAULT_STAGE_SCALE,
};
use crate::{seed, Error, Result};

/// Floor applied to measured wall-clock times so ratios stay finite.
pub const MIN_TIME_S: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Sparse,
    CompleteDag,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Sparse => "sparse",
            GraphKind::CompleteDag => "complete_dag",
        })
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sparse" => Ok(GraphKind::Sparse),
            "complete_dag" | "complete-dag" | "complete" => Ok(GraphKind::CompleteDag),
            _ => Err(Error::InvalidParameter(format!("unknown graph kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub vertex_counts: Vec<usize>,
    pub graph_kind: GraphKind,
    pub runs_per_size: usize,
    /// Only used by sparse graphs.
    pub degree_range: (f64, f64),
    pub stage_scale: f64,
    pub stage_cost: StageCostMatrix,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            vertex_counts: vec![4, 6, 8, 10, 12, 14],
            graph_kind: GraphKind::Sparse,
            runs_per_size: 100,
            degree_range: (2.0, 3.0),
            stage_scale: DEFAULT_STAGE_SCALE,
            stage_cost: StageCostMatrix::reference(),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs_per_size == 0 {
            return Err(Error::InvalidParameter(
                "runs_per_size must be at least 1".into(),
            ));
        }
        if self.vertex_counts.is_empty() {
            return Err(Error::InvalidParameter("no vertex counts given".into()));
        }
        if let Some(n) = self.vertex_counts.iter().find(|&&n| n < 3) {
            return Err(Error::InvalidParameter(format!(
                "vertex count {n} is below 3"
            )));
        }
        Ok(())
    }

    /// `key=value` lines describing the run, used as CSV header comments.
    pub fn describe(&self) -> Vec<String> {
        let sizes: Vec<String> = self.vertex_counts.iter().map(usize::to_string).collect();
        let [s11, s12, s21, s22] = self.stage_cost.entries();
        let mut lines = vec![
            format!("kind={}", self.graph_kind),
            format!("sizes={}", sizes.join(",")),
            format!("runs={}", self.runs_per_size),
        ];
        if self.graph_kind == GraphKind::Sparse {
            lines.push(format!(
                "degree={},{}",
                self.degree_range.0, self.degree_range.1
            ));
        }
        lines.push(format!("stage_scale={}", self.stage_scale));
        lines.push(format!("s={s11},{s12},{s21},{s22}"));
        lines.push(format!("seed={}", self.seed));
        lines
    }

    fn run_seed(&self, n_vertices: usize, run_index: usize) -> u64 {
        seed::derive(seed::derive(self.seed, n_vertices as u64), run_index as u64)
    }

    fn build_graph(&self, n_vertices: usize, run_seed: u64) -> Result<(Roadmap, usize)> {
        match self.graph_kind {
            GraphKind::Sparse => generate_sparse_graph(&SparseGraphParams {
                n_vertices,
                degree_low: self.degree_range.0,
                degree_high: self.degree_range.1,
                stage_scale: self.stage_scale,
                stage_cost: self.stage_cost,
                seed: run_seed,
            }),
            GraphKind::CompleteDag => {
                generate_complete_dag(n_vertices, self.stage_scale, self.stage_cost, run_seed)
                    .map(|g| (g, 1))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    #[serde(rename = "n")]
    pub n_vertices: usize,
    #[serde(rename = "run")]
    pub run_index: usize,
    #[serde(rename = "W_NE")]
    pub w_ne: f64,
    #[serde(rename = "L_SEA")]
    pub l_sea: f64,
    pub cost_ratio: f64,
    #[serde(rename = "time_meta_s")]
    pub time_meta: f64,
    #[serde(rename = "time_heuristic_s")]
    pub time_heuristic: f64,
    pub time_ratio: f64,
    pub p_shortest_path: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub n_vertices: usize,
    pub run_index: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub records: Vec<ExperimentRecord>,
    pub failures: Vec<RunFailure>,
    /// Graphs thrown away by the generator before one was usable.
    pub retries: usize,
}

fn elapsed(start: Instant) -> f64 {
    start.elapsed().as_secs_f64().max(MIN_TIME_S)
}

/// Solves one graph with both methods, timing each from the shared edge
/// weights onward.
pub fn evaluate_graph(
    g: &Roadmap,
    n_vertices: usize,
    run_index: usize,
) -> Result<ExperimentRecord> {
    let (source, target) = (0, g.num_vertices() - 1);
    let weights = EdgeWeights::compute(g)?;

    let start = Instant::now();
    let heuristic = shortest_path_edge_attack_with(g, &weights, source, target)?;
    let time_heuristic = elapsed(start);

    let start = Instant::now();
    let ps = enumerate_paths(g, source, target)?;
    let matrix = meta_matrix_with(&ps, &weights);
    let meta = MetaGame::from_matrix(ps, matrix)?;
    let time_meta = elapsed(start);

    let l_sea = heuristic.length_under_attack;
    Ok(ExperimentRecord {
        n_vertices,
        run_index,
        w_ne: meta.value,
        l_sea,
        cost_ratio: meta.value / l_sea,
        time_meta,
        time_heuristic,
        time_ratio: time_meta / time_heuristic,
        p_shortest_path: mass_on_path(&meta, &heuristic.shortest_path),
    })
}

/// Runs every size and run in parallel. Per-run errors (for instance path
/// explosion, or a degree range the generator cannot meet) are collected in
/// `failures` rather than aborting the sweep.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = cfg
        .vertex_counts
        .iter()
        .flat_map(|&n| (0..cfg.runs_per_size).map(move |r| (n, r)))
        .collect();
    type Job = (usize, usize, Result<(ExperimentRecord, usize)>);
    let results: Vec<Job> = jobs
        .par_iter()
        .map(|&(n, run)| {
            let res = cfg
                .build_graph(n, cfg.run_seed(n, run))
                .and_then(|(g, attempts)| Ok((evaluate_graph(&g, n, run)?, attempts)));
            (n, run, res)
        })
        .collect();

    let mut out = ExperimentOutcome::default();
    for (n_vertices, run_index, res) in results {
        match res {
            Ok((record, attempts)) => {
                out.retries += attempts - 1;
                out.records.push(record);
            }
            Err(e) => out.failures.push(RunFailure {
                n_vertices,
                run_index,
                message: e.to_string(),
            }),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub mean_time_ratio: f64,
    pub mean_cost_ratio: f64,
    pub mean_p_shortest: f64,
    pub runs: usize,
}

/// Per-size arithmetic means, sizes ascending.
pub fn summarize(records: &[ExperimentRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::InvalidParameter("no records to summarize".into()));
    }
    let mut by_size: BTreeMap<usize, Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        by_size.entry(r.n_vertices).or_default().push(r);
    }
    Ok(by_size
        .into_iter()
        .map(|(n, rs)| {
            let mean = |f: fn(&ExperimentRecord) -> f64| {
                rs.iter().map(|r| f(r)).sum::<f64>() / rs.len() as f64
            };
            SummaryRow {
                n,
                mean_time_ratio: mean(|r| r.time_ratio),
                mean_cost_ratio: mean(|r| r.cost_ratio),
                mean_p_shortest: mean(|r| r.p_shortest_path),
                runs: rs.len(),
            }
        })
        .collect())
}

fn to_csv<T: Serialize>(comments: &[String], rows: &[T]) -> Result<String> {
    let mut out = Vec::new();
    for c in comments {
        out.extend_from_slice(format!("# {c}\n").as_bytes());
    }
    {
        let mut w = csv::Writer::from_writer(&mut out);
        for r in rows {
            w.serialize(r).map_err(csv_error)?;
        }
        w.flush()?;
    }
    Ok(String::from_utf8(out).expect("csv output is utf-8"))
}

fn from_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

fn csv_error(e: csv::Error) -> Error {
    let (line, column) = e
        .position()
        .map_or((0, 0), |p| (p.line() as usize, p.record() as usize));
    Error::Parse {
        line,
        column,
        message: e.to_string(),
    }
}

pub const RESULTS_HEADER: &str =
    "n,run,W_NE,L_SEA,cost_ratio,time_meta_s,time_heuristic_s,time_ratio,p_shortest_path";
pub const SUMMARY_HEADER: &str = "n,mean_time_ratio,mean_cost_ratio,mean_p_shortest,runs";

/// Results CSV: config comments, then one row per record. An empty record
/// list still gets the header.
pub fn results_csv(cfg: &ExperimentConfig, records: &[ExperimentRecord]) -> Result<String> {
    if records.is_empty() {
        let mut out: String = cfg.describe().iter().map(|c| format!("# {c}\n")).collect();
        out.push_str(RESULTS_HEADER);
        out.push('\n');
        return Ok(out);
    }
    to_csv(&cfg.describe(), records)
}

pub fn parse_results_csv(text: &str) -> Result<Vec<ExperimentRecord>> {
    from_csv(text)
}

pub fn summary_csv(cfg: &ExperimentConfig, rows: &[SummaryRow]) -> Result<String> {
    to_csv(&cfg.describe(), rows)
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryRow>> {
    from_csv(text)
}

pub fn write_results(
    cfg: &ExperimentConfig,
    records: &[ExperimentRecord],
    path: impl AsRef<Path>,
) -> Result<()> {
    std::fs::write(path, results_csv(cfg, records)?)?;
    Ok(())
}
