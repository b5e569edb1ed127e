//! Replicated simulation sweeps over one parameter axis.
//!
//! Every (grid point, replication) cell is an independent simulation, so
//! cells may run in parallel; results are assembled by index, which makes the
//! output independent of execution order. Replication seeds are derived from
//! the master seed and shared across grid points, so points differ only in
//! the swept parameter (matched pairs, not fresh noise per point).

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use watchnet_core::seed;
use watchnet_core::sim::{run_simulation, GammaParams};
use watchnet_core::topology::default_k;
use watchnet_core::{stats, SimConfig64};

use crate::csvio::SweepRow;

#[derive(Debug, Clone, PartialEq)]
pub enum SweepAxis {
    Mu(Vec<f64>),
    PInvert(Vec<f64>),
    RatePct(Vec<f64>),
    N(Vec<usize>),
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Mu(_) => "mu",
            SweepAxis::PInvert(_) => "p_invert",
            SweepAxis::RatePct(_) => "rate_pct",
            SweepAxis::N(_) => "n",
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            SweepAxis::Mu(v) | SweepAxis::PInvert(v) | SweepAxis::RatePct(v) => v.clone(),
            SweepAxis::N(v) => v.iter().map(|&n| n as f64).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub base: SimConfig64,
    /// Change rate the base gamma was derived from; sweeps over `n` use it to
    /// re-derive the gamma mean for each node count.
    pub rate_pct: f64,
    pub axis: SweepAxis,
    pub runs: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub axis_name: &'static str,
    pub rows: Vec<SweepRow>,
    /// Grid value minimizing mean inconsistencies (first value on ties);
    /// only reported for mu sweeps.
    pub mu_star: Option<f64>,
}

/// (topology seed, simulation seed) per replication, shared across grid
/// points.
pub fn replication_seeds(master: u64, runs: usize) -> Vec<(u64, u64)> {
    (0..runs as u64)
        .map(|i| (seed::derive(master, 2 * i), seed::derive(master, 2 * i + 1)))
        .collect()
}

fn apply_axis(spec: &ExperimentSpec, value: f64) -> SimConfig64 {
    let mut cfg = spec.base;
    match spec.axis {
        SweepAxis::Mu(_) => cfg.topology.mu = value,
        SweepAxis::PInvert(_) => cfg.topology.p_invert = value,
        SweepAxis::RatePct(_) => {
            let shape = cfg.gamma.shape;
            cfg.gamma = GammaParams::from_rate_pct(value, cfg.topology.n);
            cfg.gamma.shape = shape;
        }
        SweepAxis::N(_) => {
            let n = value as usize;
            cfg.topology.n = n;
            cfg.topology.k = default_k(n);
            let shape = cfg.gamma.shape;
            cfg.gamma = GammaParams::from_rate_pct(spec.rate_pct, n);
            cfg.gamma.shape = shape;
        }
    }
    cfg
}

pub fn run_sweep(spec: &ExperimentSpec, jobs: usize) -> Result<SweepResult> {
    if spec.runs < 2 {
        bail!("at least 2 replications are required (got {})", spec.runs);
    }
    let values = spec.axis.values();
    if values.is_empty() {
        bail!("sweep grid is empty");
    }
    let seeds = replication_seeds(spec.master_seed, spec.runs);

    // fail fast on any invalid grid point before burning compute
    let mut cells = Vec::with_capacity(values.len() * spec.runs);
    for &value in &values {
        for &(topo_seed, sim_seed) in &seeds {
            let mut cfg = apply_axis(spec, value);
            cfg.topology.seed = topo_seed;
            cfg.sim_seed = sim_seed;
            cfg.validate()
                .with_context(|| format!("invalid config at {} = {value}", spec.axis.name()))?;
            cells.push(cfg);
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("building worker pool")?;
    let outcomes: Vec<(f64, f64)> = pool.install(|| {
        cells
            .par_iter()
            .map(|cfg| {
                let res = run_simulation(*cfg).expect("configs validated above");
                (res.mean_inconsistencies, res.mean_node_load)
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(values.len());
    for (pi, &value) in values.iter().enumerate() {
        let chunk = &outcomes[pi * spec.runs..(pi + 1) * spec.runs];
        let incs: Vec<f64> = chunk.iter().map(|&(i, _)| i).collect();
        let loads: Vec<f64> = chunk.iter().map(|&(_, l)| l).collect();
        rows.push(SweepRow {
            value,
            inconsistencies: stats::summarize_runs(&incs)?,
            load: stats::summarize_runs(&loads)?,
        });
    }

    let mu_star = match spec.axis {
        // first value on ties, so scan with a strict comparison
        SweepAxis::Mu(_) => {
            let mut best = &rows[0];
            for row in &rows[1..] {
                if row.inconsistencies.mean < best.inconsistencies.mean {
                    best = row;
                }
            }
            Some(best.value)
        }
        _ => None,
    };

    Ok(SweepResult { axis_name: spec.axis.name(), rows, mu_star })
}
