//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! (to the stderr handle directly, so it shows without `--nocapture`).

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secroute::bench::{run_experiment, summarize, ExperimentConfig, GraphKind, SummaryRow};
use secroute::game::{
    analytic_value, approximation_error, forward_payoff, implicit_residual, simulate_rollouts,
    solve_edge_game, stage_solve, StageCostMatrix,
};
use secroute::meta::{compare, sensitivity_sweep_costs, sensitivity_sweep_stages};
use secroute::roadmap::three_vertex_roadmap;

struct Criterion {
    id: u32,
    title: &'static str,
    failed: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            failed: vec![],
        }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn finish(self) {
        let line = if self.failed.is_empty() {
            format!("PASS criterion {}: {}", self.id, self.title)
        } else {
            format!(
                "FAIL criterion {}: {} [{}]",
                self.id,
                self.title,
                self.failed.join("; ")
            )
        };
        #[allow(clippy::explicit_write)]
        writeln!(std::io::stderr(), "{line}").unwrap();
        assert!(self.failed.is_empty(), "{line}");
    }
}

/// min over y of max over columns of a 2x2 game, by checking the two pure
/// rows and the crossing of the two column lines. Returns (value, y, z).
fn minimax_2x2(a: [[f64; 2]; 2]) -> (f64, f64, f64) {
    fn best_mix(
        l0: [f64; 2],
        l1: [f64; 2],
        worse: fn(f64, f64) -> f64,
        better: fn(f64, f64) -> bool,
    ) -> (f64, f64) {
        // line j evaluated at mixing weight t: t * l_j[0] + (1 - t) * l_j[1]
        let at = |t: f64| worse(t * l0[0] + (1.0 - t) * l0[1], t * l1[0] + (1.0 - t) * l1[1]);
        let mut cands = vec![0.0, 1.0];
        let d = (l0[0] - l0[1]) - (l1[0] - l1[1]);
        if d != 0.0 {
            let t = (l1[1] - l0[1]) / d;
            if (0.0..=1.0).contains(&t) {
                cands.push(t);
            }
        }
        let mut best = (f64::NAN, cands[0]);
        for t in cands {
            let v = at(t);
            if best.0.is_nan() || better(v, best.0) {
                best = (v, t);
            }
        }
        best
    }
    // defender weight y on row 0; columns as lines in y
    let (upper, y) = best_mix([a[0][0], a[1][0]], [a[0][1], a[1][1]], f64::max, |v, b| {
        v < b
    });
    // attacker weight z on column 0; rows as lines in z
    let (lower, z) = best_mix([a[0][0], a[0][1]], [a[1][0], a[1][1]], f64::min, |v, b| {
        v > b
    });
    assert!((upper - lower).abs() <= 1e-9 * (1.0 + upper.abs()));
    (upper, y, z)
}

fn effective(s: &StageCostMatrix, v: f64) -> [[f64; 2]; 2] {
    [[s.s11, v + s.s12], [v + s.s21, v + s.s22]]
}

/// Edge value by iterating the 2x2 oracle backwards.
fn oracle_edge_value(s: &StageCostMatrix, stages: usize) -> f64 {
    (0..stages).fold(0.0, |v, _| minimax_2x2(effective(s, v)).0)
}

fn random_game(rng: &mut ChaCha8Rng, s11_hi: f64) -> StageCostMatrix {
    let s11 = rng.gen_range(1e-9..=s11_hi);
    StageCostMatrix::parameterized(s11, rng.gen_range(1.0..=5.0), rng.gen_range(0.0..1.0)).unwrap()
}

#[test]
fn criterion_1_closed_form_matches_minimax_oracle() {
    let mut c = Criterion::new(
        1,
        "closed-form stage equilibrium matches 2x2 minimax oracle",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let s = random_game(&mut rng, 100.0);
        let v = rng.gen_range(0.0..=200.0);
        let sol = stage_solve(&s, v).unwrap();
        let (value, y, z) = minimax_2x2(effective(&s, v));
        let scale = 1.0 + value.abs();
        worst = worst.max((sol.value - value).abs() / scale);
        worst = worst
            .max((sol.defender.active - y).abs())
            .max((sol.attacker.active - z).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    c.check(format!("worst deviation {worst:e} > 1e-9"), worst <= 1e-9);
    c.check(format!("runtime {elapsed:.3}s >= 1s"), elapsed < 1.0);
    c.finish();
}

#[test]
fn criterion_2_forward_payoff_equals_backward_value() {
    let mut c = Criterion::new(2, "forward payoff at equilibrium equals V_0");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = random_game(&mut rng, 100.0);
        let k = rng.gen_range(1..=50);
        let sol = solve_edge_game(&s, k).unwrap();
        let j = forward_payoff(&s, &sol.defender_policies, &sol.attacker_policies).unwrap();
        worst = worst.max((j - sol.value()).abs() / (1.0 + sol.value().abs()));
    }
    let elapsed = start.elapsed().as_secs_f64();
    c.check(
        format!("worst relative deviation {worst:e} > 1e-9"),
        worst <= 1e-9,
    );
    c.check(format!("runtime {elapsed:.3}s >= 1s"), elapsed < 1.0);
    c.finish();
}

#[test]
fn criterion_3_rollouts_agree_with_value() {
    let mut c = Criterion::new(3, "Monte Carlo mean within 3 standard errors of V_0");
    let s = StageCostMatrix::reference();
    let v0 = oracle_edge_value(&s, 3);
    c.check(
        format!("oracle V_0 = {v0}, expected ~73.92"),
        (v0 - 73.92).abs() < 0.01,
    );
    let start = Instant::now();
    let sol = solve_edge_game(&s, 3).unwrap();
    let stats = simulate_rollouts(
        &s,
        &sol.defender_policies,
        &sol.attacker_policies,
        100_000,
        0,
    )
    .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let z = (stats.mean_payoff - v0).abs() / stats.std_error;
    c.check(
        format!(
            "mean {} is {z:.2} standard errors from {v0}",
            stats.mean_payoff
        ),
        z <= 3.0,
    );
    c.check(format!("runtime {elapsed:.3}s >= 5s"), elapsed < 5.0);
    c.finish();
}

#[test]
fn criterion_4_sublinear_growth_and_shrinking_error() {
    let mut c = Criterion::new(
        4,
        "sublinear edge value growth, approximation error decreasing",
    );
    for r1 in [1.0, 2.0] {
        let s = StageCostMatrix::parameterized(1.0, r1, 0.0).unwrap();
        for k in [10, 20, 50, 100, 250, 500] {
            let ratio = oracle_edge_value(&s, 4 * k) / oracle_edge_value(&s, k);
            c.check(
                format!("r1={r1}: V_0({})/V_0({k}) = {ratio:.4}", 4 * k),
                ratio < 2.5,
            );
        }
        let errs: Vec<f64> = [20, 50, 100, 200]
            .iter()
            .map(|&k| approximation_error(r1, 0.0, k).unwrap())
            .collect();
        c.check(
            format!("r1={r1}: errors {errs:?} not decreasing"),
            errs.windows(2).all(|w| w[1] < w[0]),
        );
    }
    c.finish();
}

#[test]
fn criterion_5_first_stage_activity_fades_with_length() {
    let mut c = Criterion::new(
        5,
        "stage-1 defend/attack probabilities nonincreasing in K_e",
    );
    let s = StageCostMatrix::reference();
    let first = |k| {
        let sol = solve_edge_game(&s, k).unwrap();
        // stage-1 mixes must be optimal in the oracle's game at the
        // continuation value (the attacker's optimum is not unique at K_e = 1)
        let a = effective(&s, sol.values[1]);
        let (value, _, _) = minimax_2x2(a);
        let (y, z) = (
            sol.defender_policies[0].active,
            sol.attacker_policies[0].active,
        );
        let guard = (0..2)
            .map(|j| y * a[0][j] + (1.0 - y) * a[1][j])
            .fold(f64::NEG_INFINITY, f64::max);
        let secure = (0..2)
            .map(|i| z * a[i][0] + (1.0 - z) * a[i][1])
            .fold(f64::INFINITY, f64::min);
        let tol = 1e-9 * (1.0 + value.abs());
        (y, z, guard <= value + tol && secure >= value - tol)
    };
    let mut prev = (f64::INFINITY, f64::INFINITY);
    for k in [1, 2, 5, 10, 20, 50] {
        let (y, z, optimal) = first(k);
        c.check(
            format!("K_e={k}: policies not optimal for the oracle"),
            optimal,
        );
        c.check(
            format!("K_e={k}: y={y:.4} z={z:.4} increased"),
            y <= prev.0 + 1e-12 && z <= prev.1 + 1e-12,
        );
        prev = (y, z);
    }
    let (y, z, _) = first(200);
    c.check(
        format!("K_e=200: y={y:.4} z={z:.4} not below 0.05"),
        y < 0.05 && z < 0.05,
    );
    c.finish();
}

#[test]
fn criterion_6_three_vertex_network() {
    let mut c = Criterion::new(6, "three-vertex network end to end");
    let s = StageCostMatrix::reference();
    let g = three_vertex_roadmap(s, 6, 3).unwrap();
    let cmp = compare(&g, 0, 2).unwrap();
    let (v6, v3) = (oracle_edge_value(&s, 6), oracle_edge_value(&s, 3));
    let expect = [[v6, 30.0 + 30.0, 60.0], [60.0, v3 + 30.0, v3 + 30.0]];
    c.check(
        format!("oracle weights V(6)={v6:.4} V(3)={v3:.4}"),
        (v6 - 127.76).abs() < 0.01 && (v3 + 30.0 - 103.92).abs() < 0.01,
    );
    let matrix_ok = cmp.meta.matrix.len() == 2
        && cmp
            .meta
            .matrix
            .iter()
            .zip(&expect)
            .all(|(r, e)| r.len() == 3 && r.iter().zip(e).all(|(a, b)| (a - b).abs() < 0.01));
    c.check(format!("meta-matrix {:?}", cmp.meta.matrix), matrix_ok);
    let h = &cmp.heuristic;
    c.check(
        format!(
            "heuristic picked {} / edge {}",
            h.shortest_path.label(),
            h.worst_edge
        ),
        h.shortest_path.edges == vec![0] && h.worst_edge == 0,
    );
    c.check(
        format!("L_SEA {}", h.length_under_attack),
        (h.length_under_attack - 127.76).abs() < 0.01,
    );
    c.check(
        format!("duality gap {:e}", cmp.meta.duality_gap),
        cmp.meta.duality_gap < 1e-8,
    );
    c.check("W_NE > L_SEA", cmp.meta.value <= h.length_under_attack);
    let (direct, detour) = (cmp.meta.defender_mix[0], cmp.meta.defender_mix[1]);
    c.check(
        format!("defender mass direct {direct:.4} not above detour {detour:.4}"),
        direct > detour,
    );
    c.finish();
}

#[test]
fn criterion_7_sensitivity_directions() {
    let mut c = Criterion::new(7, "sensitivity directions on the three-vertex network");
    let g = three_vertex_roadmap(StageCostMatrix::reference(), 6, 3).unwrap();
    let r1 = [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 8.0];
    let r2 = [0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 0.9];
    let grid = sensitivity_sweep_costs(&g, 0, 2, &r1, &r2, 30.0).unwrap();
    let p = |i: usize, j: usize| grid[i * r2.len() + j].p_shortest_path;
    for (j, b) in r2.iter().enumerate() {
        let ok = (1..r1.len()).all(|i| p(i, j) <= p(i - 1, j) + 1e-12);
        c.check(format!("not nonincreasing in r1 at r2={b}"), ok);
    }
    for (i, a) in r1.iter().enumerate() {
        let ok = (1..r2.len()).all(|j| p(i, j) >= p(i, j - 1) - 1e-12);
        c.check(format!("not nondecreasing in r2 at r1={a}"), ok);
    }
    // detour legs from the network's own 3 stages upward; over this range the
    // heuristic's path is the direct edge
    let alt: Vec<usize> = (3..=14).collect();
    let pts = sensitivity_sweep_stages(StageCostMatrix::reference(), &[6], &alt).unwrap();
    c.check(
        "heuristic path is not the direct edge",
        pts.iter()
            .all(|q| (q.p_shortest_path - q.p_direct_path).abs() < 1e-12),
    );
    c.check(
        format!(
            "not nondecreasing in detour stages: {:?}",
            pts.iter().map(|q| q.p_shortest_path).collect::<Vec<_>>()
        ),
        pts.windows(2)
            .all(|w| w[1].p_shortest_path >= w[0].p_shortest_path - 1e-12),
    );
    c.finish();
}

fn sweep(kind: GraphKind, c: &mut Criterion, budget_s: f64) -> Vec<SummaryRow> {
    let cfg = ExperimentConfig {
        vertex_counts: vec![4, 6, 8, 10, 12, 14],
        graph_kind: kind,
        runs_per_size: 100,
        seed: 2024,
        ..Default::default()
    };
    let start = Instant::now();
    let out = run_experiment(&cfg).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    c.check(
        format!("{kind}: {} failed runs", out.failures.len()),
        out.failures.is_empty(),
    );
    c.check(
        format!("{kind}: {} records", out.records.len()),
        out.records.len() == 600,
    );
    let over = out
        .records
        .iter()
        .filter(|r| r.cost_ratio > 1.0 + 1e-9)
        .count();
    c.check(
        format!("{kind}: {over} runs with cost_ratio > 1"),
        over == 0,
    );
    c.check(
        format!("{kind}: sweep took {elapsed:.1}s"),
        elapsed < budget_s,
    );
    summarize(&out.records).unwrap()
}

#[test]
fn criterion_8_random_graph_sweeps() {
    let mut c = Criterion::new(
        8,
        "random-graph sweeps: bound, sparse trend, dense band, risk attitude",
    );
    let sparse = sweep(GraphKind::Sparse, &mut c, 120.0);
    let dense = sweep(GraphKind::CompleteDag, &mut c, 900.0);
    let means = |rows: &[SummaryRow]| rows.iter().map(|r| r.mean_cost_ratio).collect::<Vec<_>>();
    let (ms, md) = (means(&sparse), means(&dense));
    c.check(
        format!("sparse means {ms:.3?} drop by more than 0.03"),
        ms.windows(2).all(|w| w[1] >= w[0] - 0.03),
    );
    let width = md.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - md.iter().cloned().fold(f64::INFINITY, f64::min);
    c.check(
        format!("complete-DAG means {md:.3?} span {width:.3} > 0.1"),
        width <= 0.1,
    );
    let at10 = |rows: &[SummaryRow]| rows.iter().find(|r| r.n == 10).unwrap().mean_p_shortest;
    let (ps, pd) = (at10(&sparse), at10(&dense));
    c.check(
        format!("p_shortest at n=10: sparse {ps:.3} <= complete {pd:.3}"),
        ps > pd,
    );
    c.finish();
}

#[test]
fn criterion_9_implicit_analytic_solution() {
    let mut c = Criterion::new(
        9,
        "implicit continuum value: residual and agreement with recursion",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_residual = 0.0f64;
    for _ in 0..50 {
        let (r1, r2) = (rng.gen_range(1.0..=5.0), rng.gen_range(0.01..0.99));
        let k_e = rng.gen_range(1..=1000);
        let k = rng.gen_range(1..=k_e);
        let v = analytic_value(r1, r2, k_e, k).unwrap();
        worst_residual = worst_residual.max(implicit_residual(r1, r2, k_e, k, v).abs());
    }
    c.check(
        format!("worst residual {worst_residual:e} >= 1e-10"),
        worst_residual < 1e-10,
    );
    let mut worst_rel = 0.0f64;
    for _ in 0..50 {
        let (r1, r2) = (rng.gen_range(1.0..=5.0), rng.gen_range(0.0..=0.05));
        let k_e = rng.gen_range(100..=1000);
        let k = rng.gen_range(1..=k_e);
        let s = StageCostMatrix::parameterized(1.0, r1, r2).unwrap();
        let recursion = oracle_edge_value(&s, k_e - k + 1);
        let v = analytic_value(r1, r2, k_e, k).unwrap();
        worst_rel = worst_rel.max((v - recursion).abs() / recursion);
    }
    c.check(
        format!("worst relative error {:.2}% > 5%", 100.0 * worst_rel),
        worst_rel <= 0.05,
    );
    c.finish();
}
