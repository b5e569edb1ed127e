use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use watchnet_cli::csvio;
use watchnet_cli::experiment::{run_sweep, ExperimentSpec, SweepAxis};
use watchnet_cli::{config, figures};
use watchnet_core::metrics::{graph_metrics, PathLengthMode};
use watchnet_core::sim::run_simulation;
use watchnet_core::topology::{default_k, generate, TopologyKind, TopologyParams};
use watchnet_core::{seed, stats, DirectedGraph};

#[derive(Parser)]
#[command(
    name = "watchnet",
    about = "Directed-network generators and a subscription-aliveness monitoring simulator"
)]
struct Cli {
    /// Master seed for topology/replication seed derivation.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output path prefix; files are written as <out>_<name>.csv etc.
    #[arg(long, global = true, default_value = "watchnet")]
    out: String,
    /// Replications per grid point (simulate/sweep/figure3).
    #[arg(long, global = true, default_value_t = 10)]
    runs: usize,
    /// Worker threads for independent cells; defaults to the CPU count.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate one topology: edge list plus a one-row metrics CSV.
    Gen {
        /// sw, sf, ke or random.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Subscriptions per node; defaults to round(sqrt(n)).
        #[arg(long)]
        k: Option<usize>,
        /// Mixing parameter; required for ke.
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        p_rewire: Option<f64>,
        #[arg(long)]
        p_invert: Option<f64>,
    },
    /// Recompute the metrics row for an existing edge-list file.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        /// BFS sources for sampled path length; default: exact below 2000
        /// nodes, 400 sources above.
        #[arg(long)]
        sources: Option<usize>,
    },
    /// Run replications of one config file; per-run series plus a summary.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sweep one parameter axis of a config file over a value grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// mu, p-invert, rate-pct or n.
        #[arg(long)]
        axis: String,
        /// Comma-separated grid values.
        #[arg(long)]
        grid: String,
    },
    /// Structural mu crossover at n=10^4, k=20 (CSV behind figure 1).
    Figure1 {
        #[arg(long, default_value_t = 5)]
        seeds: usize,
    },
    /// Structural p_invert sweep at mu=1 (CSV behind figure 2).
    Figure2 {
        #[arg(long, default_value_t = 5)]
        seeds: usize,
    },
    /// Simulated mu sweep under the transitive protocol (CSV behind
    /// figure 3), reporting mu*.
    Figure3 {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        rate_pct: f64,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));

    match cli.cmd {
        Cmd::Gen { kind, n, k, mu, p_rewire, p_invert } => {
            let kind: TopologyKind = kind.parse().map_err(|e: String| anyhow::anyhow!(e))?;
            let k = k.unwrap_or_else(|| default_k(n));
            if kind == TopologyKind::KlemmEguiluz && mu.is_none() {
                bail!("--kind ke requires --mu");
            }
            let mut params = TopologyParams::<f64> {
                kind,
                n,
                k,
                ..TopologyParams::random(n, k, cli.seed)
            };
            if let Some(mu) = mu {
                params.mu = mu;
            }
            if let Some(p) = p_rewire {
                params.p_rewire = p;
            }
            if let Some(p) = p_invert {
                params.p_invert = p;
            }
            let g = generate(&params)?;
            let edges_path = format!("{}_edges.txt", cli.out);
            g.write_edge_list(&edges_path)
                .with_context(|| format!("writing {edges_path}"))?;
            let metrics_path = write_metrics(&g, None, cli.seed, &cli.out)?;
            println!("wrote {edges_path}");
            println!("wrote {metrics_path}");
        }
        Cmd::Metrics { input, sources } => {
            let g = DirectedGraph::read_edge_list(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let path = write_metrics(&g, sources, cli.seed, &cli.out)?;
            println!("wrote {path}");
        }
        Cmd::Simulate { config } => {
            if cli.runs < 2 {
                bail!("at least 2 replications are required (got {})", cli.runs);
            }
            let parsed = config::load_config(&config)?;
            let mut incs = Vec::with_capacity(cli.runs);
            let mut loads = Vec::with_capacity(cli.runs);
            // replication seeds derive from the config's own seeds, so a
            // config file fully reproduces its experiment
            for i in 0..cli.runs as u64 {
                let mut cfg = parsed.sim;
                cfg.topology.seed = seed::derive(parsed.sim.topology.seed, i);
                cfg.sim_seed = seed::derive(parsed.sim.sim_seed, i);
                let res = run_simulation(cfg)?;
                let path = format!("{}_run{i:02}.csv", cli.out);
                std::fs::write(&path, csvio::run_csv(&res.probes))
                    .with_context(|| format!("writing {path}"))?;
                incs.push(res.mean_inconsistencies);
                loads.push(res.mean_node_load);
            }
            let summary = csvio::summaries_csv(&[
                ("inconsistencies", stats::summarize_runs(&incs)?),
                ("load", stats::summarize_runs(&loads)?),
            ]);
            let path = format!("{}_summary.csv", cli.out);
            std::fs::write(&path, &summary).with_context(|| format!("writing {path}"))?;
            println!("wrote {} run files and {path}", cli.runs);
            print!("{summary}");
        }
        Cmd::Sweep { config, axis, grid } => {
            let parsed = config::load_config(&config)?;
            let axis = parse_axis(&axis, &grid)?;
            let spec = ExperimentSpec {
                base: parsed.sim,
                rate_pct: parsed.rate_pct,
                axis,
                runs: cli.runs,
                master_seed: cli.seed,
            };
            let result = run_sweep(&spec, jobs)?;
            let text = csvio::sweep_csv(result.axis_name, &result.rows, result.mu_star);
            let path = format!("{}_sweep.csv", cli.out);
            std::fs::write(&path, &text).with_context(|| format!("writing {path}"))?;
            println!("wrote {path}");
            if let Some(mu) = result.mu_star {
                println!("mu_star = {}", csvio::fmt_sig(mu));
            }
        }
        Cmd::Figure1 { seeds } => {
            let rows = figures::figure1(seeds, cli.seed, jobs)?;
            write_figure(&rows, "mu", "figure1", &cli.out)?;
        }
        Cmd::Figure2 { seeds } => {
            let rows = figures::figure2(seeds, cli.seed, jobs)?;
            write_figure(&rows, "p_invert", "figure2", &cli.out)?;
        }
        Cmd::Figure3 { n, rate_pct } => {
            let result = figures::figure3(n, rate_pct, cli.runs, cli.seed, jobs)?;
            let text = csvio::sweep_csv(result.axis_name, &result.rows, result.mu_star);
            let path = format!("{}_figure3.csv", cli.out);
            std::fs::write(&path, &text).with_context(|| format!("writing {path}"))?;
            println!("wrote {path}");
            println!(
                "mu_star = {}",
                csvio::fmt_sig(result.mu_star.expect("mu sweeps always report mu_star"))
            );
        }
    }
    Ok(())
}

fn parse_axis(axis: &str, grid: &str) -> Result<SweepAxis> {
    let values: Result<Vec<f64>> = grid
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .with_context(|| format!("bad grid value {v:?}"))
        })
        .collect();
    let values = values?;
    Ok(match axis {
        "mu" => SweepAxis::Mu(values),
        "p-invert" | "p_invert" => SweepAxis::PInvert(values),
        "rate-pct" | "rate_pct" => SweepAxis::RatePct(values),
        "n" => SweepAxis::N(values.into_iter().map(|v| v as usize).collect()),
        other => bail!("unknown sweep axis {other:?} (expected mu, p-invert, rate-pct or n)"),
    })
}

fn write_metrics(
    g: &watchnet_core::DirectedGraph,
    sources: Option<usize>,
    master_seed: u64,
    out: &str,
) -> Result<String> {
    let path_seed = seed::derive(master_seed, 1);
    let mode = match sources {
        Some(sources) => PathLengthMode::Sampled { sources, seed: path_seed },
        None => watchnet_core::metrics::default_path_mode(g.node_count(), path_seed),
    };
    let m = graph_metrics::<f64>(g, mode)?;
    let path = format!("{out}_metrics.csv");
    std::fs::write(&path, csvio::metrics_csv(&m)).with_context(|| format!("writing {path}"))?;
    Ok(path)
}

fn write_figure(rows: &[csvio::FigureRow], x_name: &str, stem: &str, out: &str) -> Result<()> {
    let text = csvio::figure_csv(x_name, rows);
    let path = format!("{out}_{stem}.csv");
    std::fs::write(&path, &text).with_context(|| format!("writing {path}"))?;
    println!("wrote {path}");
    Ok(())
}
