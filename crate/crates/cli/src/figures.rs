//! The three experiment presets behind the figure CSVs.
//!
//! * figure 1: structural crossover of the hybrid model: path length and
//!   transitivity against the mixing parameter mu on a log grid.
//! * figure 2: the same two metrics against the edge-inversion probability
//!   at mu = 1.
//! * figure 3: simulated inconsistencies and per-node load against mu, with
//!   the minimizing value mu*.

use anyhow::{Context, Result};
use rayon::prelude::*;
use watchnet_core::metrics::{average_path_length, transitivity, PathLengthMode};
use watchnet_core::seed;
use watchnet_core::sim::Protocol;
use watchnet_core::topology::{default_k, generate, TopologyParams};
use watchnet_core::{GammaParams64, SimConfig64};

use crate::csvio::FigureRow;
use crate::experiment::{run_sweep, ExperimentSpec, SweepAxis, SweepResult};

pub const FIGURE1_N: usize = 10_000;
pub const FIGURE1_K: usize = 20;
pub const FIGURE1_P_INVERT: f64 = 0.15;
/// Sources for sampled path length at figure scale.
const PATH_SOURCES: usize = 400;

/// Nine half-decade steps from 1e-4 to 1.
pub fn figure1_grid() -> Vec<f64> {
    (0..9).map(|i| 10f64.powf(-4.0 + 0.5 * i as f64)).collect()
}

/// 0.0, 0.1, ..., 1.0.
pub fn step_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

fn structural_sweep(
    params_for: impl Fn(f64, u64) -> TopologyParams<f64> + Sync,
    grid: &[f64],
    seeds: usize,
    master_seed: u64,
    jobs: usize,
) -> Result<Vec<FigureRow>> {
    let rep_seeds: Vec<(u64, u64)> = (0..seeds as u64)
        .map(|i| (seed::derive(master_seed, 2 * i), seed::derive(master_seed, 2 * i + 1)))
        .collect();
    let cells: Vec<(f64, u64, u64)> = grid
        .iter()
        .flat_map(|&x| rep_seeds.iter().map(move |&(ts, ps)| (x, ts, ps)))
        .collect();
    for &(x, ts, _) in &cells {
        params_for(x, ts).validate()?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("building worker pool")?;
    let measured: Vec<(f64, f64)> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(x, topo_seed, path_seed)| {
                let g = generate(&params_for(x, topo_seed)).expect("params validated above");
                let mode = if g.node_count() <= 2000 {
                    PathLengthMode::Exact
                } else {
                    PathLengthMode::Sampled { sources: PATH_SOURCES, seed: path_seed }
                };
                let path = average_path_length::<f64>(&g, mode)
                    .expect("source count is within bounds");
                (path.avg, transitivity::<f64>(&g))
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(grid.len());
    for (gi, &x) in grid.iter().enumerate() {
        let chunk = &measured[gi * seeds..(gi + 1) * seeds];
        let l = chunk.iter().map(|&(l, _)| l).sum::<f64>() / seeds as f64;
        let t = chunk.iter().map(|&(_, t)| t).sum::<f64>() / seeds as f64;
        rows.push(FigureRow { x, path_length: l, transitivity: t, norm_path_length: 0.0, norm_transitivity: 0.0 });
    }
    let (l0, t0) = (rows[0].path_length, rows[0].transitivity);
    for row in &mut rows {
        row.norm_path_length = row.path_length / l0;
        row.norm_transitivity = row.transitivity / t0;
    }
    Ok(rows)
}

/// Mu crossover at n=10^4, k=20, p_invert=0.15; values normalized by the
/// smallest-mu grid point.
pub fn figure1(seeds: usize, master_seed: u64, jobs: usize) -> Result<Vec<FigureRow>> {
    structural_sweep(
        |mu, topo_seed| {
            let mut p = TopologyParams::ke(FIGURE1_N, FIGURE1_K, mu, topo_seed);
            p.p_invert = FIGURE1_P_INVERT;
            p
        },
        &figure1_grid(),
        seeds,
        master_seed,
        jobs,
    )
}

/// Inversion-probability sweep at mu=1, same scale as figure 1; values
/// normalized by the p_invert=0 grid point.
pub fn figure2(seeds: usize, master_seed: u64, jobs: usize) -> Result<Vec<FigureRow>> {
    structural_sweep(
        |p_invert, topo_seed| {
            let mut p = TopologyParams::ke(FIGURE1_N, FIGURE1_K, 1.0, topo_seed);
            p.p_invert = p_invert;
            p
        },
        &step_grid(),
        seeds,
        master_seed,
        jobs,
    )
}

/// Transitive-protocol mu sweep: k = round(sqrt(n)), change rate `rate_pct`
/// percent of nodes per minute, 3600 s per run.
pub fn figure3(
    n: usize,
    rate_pct: f64,
    runs: usize,
    master_seed: u64,
    jobs: usize,
) -> Result<SweepResult> {
    let topo = TopologyParams::ke(n, default_k(n), 0.0, 0);
    let gamma = GammaParams64::from_rate_pct(rate_pct, n);
    let base = SimConfig64::new(topo, Protocol::Transitive, gamma, 0);
    let spec = ExperimentSpec {
        base,
        rate_pct,
        axis: SweepAxis::Mu(step_grid()),
        runs,
        master_seed,
    };
    run_sweep(&spec, jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_have_the_documented_shape() {
        let g = figure1_grid();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 1e-4);
        assert_eq!(*g.last().unwrap(), 1.0);
        let s = step_grid();
        assert_eq!(s.len(), 11);
        assert_eq!(s[0], 0.0);
        assert_eq!(*s.last().unwrap(), 1.0);
    }

    #[test]
    fn structural_sweep_normalizes_by_first_point() {
        let rows = structural_sweep(
            |mu, seed| TopologyParams::ke(300, 6, mu, seed),
            &[0.0, 1.0],
            2,
            5,
            2,
        )
        .unwrap();
        assert_eq!(rows[0].norm_path_length, 1.0);
        assert_eq!(rows[0].norm_transitivity, 1.0);
        assert!(rows[1].norm_transitivity < 1.0);
        let again = structural_sweep(
            |mu, seed| TopologyParams::ke(300, 6, mu, seed),
            &[0.0, 1.0],
            2,
            5,
            1,
        )
        .unwrap();
        assert_eq!(rows, again);
    }
}
