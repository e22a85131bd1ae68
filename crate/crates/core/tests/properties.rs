use proptest::prelude::*;
use secroute::game::StageCostMatrix;
use secroute::meta::{
    build_meta_matrix, dijkstra, enumerate_paths, shortest_path_edge_attack, solve_matrix_game,
    solve_meta_game, EdgeWeights,
};
use secroute::roadmap::{
    generate_complete_dag, generate_sparse_graph, Edge, Roadmap, SparseGraphParams, Vertex,
};

// min over a Δ-grid of the defender simplex of the worst column
fn grid_value(w: &[Vec<f64>], step: f64) -> f64 {
    let n = (1.0 / step).round() as usize;
    let worst = |y: &[f64]| {
        (0..w[0].len())
            .map(|j| y.iter().zip(w).map(|(p, row)| p * row[j]).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut best = f64::INFINITY;
    match w.len() {
        1 => best = worst(&[1.0]),
        2 => {
            for i in 0..=n {
                let a = i as f64 * step;
                best = best.min(worst(&[a, 1.0 - a]));
            }
        }
        3 => {
            for i in 0..=n {
                for j in 0..=n - i {
                    let (a, b) = (i as f64 * step, j as f64 * step);
                    best = best.min(worst(&[a, b, (1.0 - a - b).max(0.0)]));
                }
            }
        }
        _ => unreachable!(),
    }
    best
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-100.0..100.0f64, cols), rows)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn sparse(n: usize, seed: u64) -> Roadmap {
    generate_sparse_graph(&SparseGraphParams {
        n_vertices: n,
        degree_low: 2.0,
        degree_high: 3.0,
        stage_scale: 10.0,
        stage_cost: StageCostMatrix::reference(),
        seed,
    })
    .unwrap()
    .0
}

// random DAG on ids in order, with edge 0 -> 1 -> ... -> n-1 guaranteed
fn random_dag(n: usize, mask: &[bool], stages: &[usize]) -> Roadmap {
    let vertices = (0..n)
        .map(|id| Vertex {
            id,
            x: id as f64,
            y: 0.0,
        })
        .collect();
    let mut edges = vec![];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || mask[k % mask.len()] {
                edges.push(Edge {
                    from: i,
                    to: j,
                    num_stages: stages[k % stages.len()],
                    stage_cost: StageCostMatrix::reference(),
                });
            }
            k += 1;
        }
    }
    Roadmap::new(true, vertices, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lp_matches_grid_search(w in small_matrix()) {
        // the grid resolution is absolute, so compare on a unit scale
        let scale = w.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12);
        let unit: Vec<Vec<f64>> = w.iter().map(|r| r.iter().map(|v| v / scale).collect()).collect();
        let lp = solve_matrix_game(&unit).unwrap();
        let grid = grid_value(&unit, 1e-3);
        prop_assert!((lp.value - grid).abs() <= 1e-3, "lp {} grid {}", lp.value, grid);
        prop_assert!(lp.value <= grid + 1e-9);
    }

    #[test]
    fn lp_transpose_symmetry(w in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let a = solve_matrix_game(&w).unwrap();
        let t: Vec<Vec<f64>> = (0..w[0].len()).map(|j| w.iter().map(|r| -r[j]).collect()).collect();
        let b = solve_matrix_game(&t).unwrap();
        prop_assert!((a.value + b.value).abs() <= 1e-8 * (1.0 + a.value.abs()));
        prop_assert!(a.duality_gap() <= 1e-8);
    }

    #[test]
    fn dijkstra_is_exhaustive_minimum(
        n in 3usize..=9,
        mask in prop::collection::vec(any::<bool>(), 36),
        stages in prop::collection::vec(1usize..15, 36),
    ) {
        let g = random_dag(n, &mask, &stages);
        let w = EdgeWeights::compute(&g).unwrap();
        let (dist, path) = dijkstra(&g, &w.attacked, 0, n - 1).unwrap();
        let ps = enumerate_paths(&g, 0, n - 1).unwrap();
        let best = ps
            .paths
            .iter()
            .map(|p| (p.edges.iter().map(|&e| w.attacked[e]).sum::<f64>(), p.vertices.clone()))
            .min_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
            .unwrap();
        prop_assert!((dist - best.0).abs() <= 1e-9 * best.0.max(1.0));
        prop_assert_eq!(path.vertices, best.1);
    }

    #[test]
    fn meta_value_bounded_by_heuristic(n in 4usize..=12, seed in any::<u64>()) {
        let g = sparse(n, seed);
        let meta = solve_meta_game(&g, 0, n - 1).unwrap();
        let h = shortest_path_edge_attack(&g, 0, n - 1).unwrap();
        prop_assert!(meta.value <= h.length_under_attack + 1e-9 * h.length_under_attack);
        prop_assert!(meta.duality_gap <= 1e-8 * meta.value.abs().max(1.0));
    }

    #[test]
    fn off_path_columns_are_clean(n in 4usize..=9, seed in any::<u64>()) {
        let g = generate_complete_dag(n, 10.0, StageCostMatrix::reference(), seed).unwrap();
        let ps = enumerate_paths(&g, 0, n - 1).unwrap();
        let w = build_meta_matrix(&g, &ps).unwrap();
        let weights = EdgeWeights::compute(&g).unwrap();
        for (p, row) in ps.paths.iter().zip(&w) {
            let clean: f64 = p.edges.iter().map(|&e| weights.clean[e]).sum();
            for (j, &e) in ps.attackable_edges.iter().enumerate() {
                if !p.contains_edge(e) {
                    prop_assert_eq!(row[j], clean);
                }
            }
        }
    }
}

#[test]
fn dijkstra_on_generated_graphs_up_to_twelve_vertices() {
    for n in 4..=12 {
        for seed in 0..10 {
            let g = sparse(n, seed);
            let w = EdgeWeights::compute(&g).unwrap();
            let (dist, _) = dijkstra(&g, &w.attacked, 0, n - 1).unwrap();
            let ps = enumerate_paths(&g, 0, n - 1).unwrap();
            let best = ps
                .paths
                .iter()
                .map(|p| p.edges.iter().map(|&e| w.attacked[e]).sum::<f64>())
                .fold(f64::INFINITY, f64::min);
            assert!((dist - best).abs() <= 1e-9 * best, "n={n} seed={seed}");
        }
    }
}
