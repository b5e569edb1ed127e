//! CSV emitters and loaders for run series, summaries, metrics rows, figure
//! series and sweep results. Floats are written with 6 significant digits;
//! every writer has a loader so round-tripping is testable.

use anyhow::{anyhow, bail, Context, Result};
use watchnet_core::sim::ProbeRecord;
use watchnet_core::stats::Summary;
use watchnet_core::{Metrics64, Summary64};

/// `printf %.6g`-style formatting: 6 significant digits, fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.5e}", x);
    let (_, exp) = sci.split_once('e').expect("e-format always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..6).contains(&exp) {
        let prec = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.prec$}"))
    } else {
        let (mant, e) = sci.split_once('e').unwrap();
        format!("{}e{e}", trim_zeros(mant))
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub const RUN_HEADER: &str = "t,inconsistent,total_packets,mean_node_packets,max_node_packets";

pub fn run_csv(probes: &[ProbeRecord<f64>]) -> String {
    let mut out = String::from(RUN_HEADER);
    out.push('\n');
    for p in probes {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_sig(p.t),
            p.inconsistent_count,
            p.total_packets,
            fmt_sig(p.mean_node_packets),
            p.max_node_packets,
        ));
    }
    out
}

pub fn parse_run_csv(text: &str) -> Result<Vec<ProbeRecord<f64>>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| anyhow!("empty run CSV"))?;
    if header != RUN_HEADER {
        bail!("unexpected run CSV header {header:?}");
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                bail!("run CSV line {}: expected 5 fields", i + 2);
            }
            Ok(ProbeRecord {
                t: f[0].parse().with_context(|| format!("line {}", i + 2))?,
                inconsistent_count: f[1].parse().with_context(|| format!("line {}", i + 2))?,
                total_packets: f[2].parse().with_context(|| format!("line {}", i + 2))?,
                mean_node_packets: f[3].parse().with_context(|| format!("line {}", i + 2))?,
                max_node_packets: f[4].parse().with_context(|| format!("line {}", i + 2))?,
            })
        })
        .collect()
}

pub const SUMMARY_HEADER: &str = "label,count,mean,std,min,max,ci95";

pub fn summaries_csv(rows: &[(&str, Summary64)]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for (label, s) in rows {
        out.push_str(&format!(
            "{label},{},{},{},{},{},{}\n",
            s.count,
            fmt_sig(s.mean),
            fmt_sig(s.std),
            fmt_sig(s.min),
            fmt_sig(s.max),
            fmt_sig(s.ci95),
        ));
    }
    out
}

pub fn parse_summaries_csv(text: &str) -> Result<Vec<(String, Summary64)>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| anyhow!("empty summary CSV"))?;
    if header != SUMMARY_HEADER {
        bail!("unexpected summary CSV header {header:?}");
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                bail!("summary CSV line {}: expected 7 fields", i + 2);
            }
            let ctx = || format!("line {}", i + 2);
            Ok((
                f[0].to_string(),
                Summary {
                    count: f[1].parse().with_context(ctx)?,
                    mean: f[2].parse().with_context(ctx)?,
                    std: f[3].parse().with_context(ctx)?,
                    min: f[4].parse().with_context(ctx)?,
                    max: f[5].parse().with_context(ctx)?,
                    ci95: f[6].parse().with_context(ctx)?,
                },
            ))
        })
        .collect()
}

pub const METRICS_HEADER: &str =
    "transitivity,avg_path_length,reachable_fraction,max_out_degree,max_total_degree,median_total_degree";

pub fn metrics_csv(m: &Metrics64) -> String {
    let max_out = m.out_degree_histogram.keys().next_back().copied().unwrap_or(0);
    let max_total = m.total_degree_histogram.keys().next_back().copied().unwrap_or(0);
    let n: usize = m.total_degree_histogram.values().sum();
    let mut seen = 0;
    let mut median = 0;
    for (&deg, &count) in &m.total_degree_histogram {
        seen += count;
        if seen * 2 > n {
            median = deg;
            break;
        }
    }
    format!(
        "{METRICS_HEADER}\n{},{},{},{max_out},{max_total},{median}\n",
        fmt_sig(m.transitivity),
        fmt_sig(m.avg_path_length),
        fmt_sig(m.reachable_pair_fraction),
    )
}

/// One grid point of a figure-1/figure-2 style structural sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub x: f64,
    pub path_length: f64,
    pub transitivity: f64,
    pub norm_path_length: f64,
    pub norm_transitivity: f64,
}

pub fn figure_csv(x_name: &str, rows: &[FigureRow]) -> String {
    let mut out = format!("{x_name},path_length,transitivity,norm_path_length,norm_transitivity\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_sig(r.x),
            fmt_sig(r.path_length),
            fmt_sig(r.transitivity),
            fmt_sig(r.norm_path_length),
            fmt_sig(r.norm_transitivity),
        ));
    }
    out
}

pub fn parse_figure_csv(text: &str, x_name: &str) -> Result<Vec<FigureRow>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| anyhow!("empty figure CSV"))?;
    let expected = format!("{x_name},path_length,transitivity,norm_path_length,norm_transitivity");
    if header != expected {
        bail!("unexpected figure CSV header {header:?}");
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                bail!("figure CSV line {}: expected 5 fields", i + 2);
            }
            let ctx = || format!("line {}", i + 2);
            Ok(FigureRow {
                x: f[0].parse().with_context(ctx)?,
                path_length: f[1].parse().with_context(ctx)?,
                transitivity: f[2].parse().with_context(ctx)?,
                norm_path_length: f[3].parse().with_context(ctx)?,
                norm_transitivity: f[4].parse().with_context(ctx)?,
            })
        })
        .collect()
}

/// One grid point of a simulation sweep: the sweep value plus summaries of
/// run-mean inconsistencies and run-mean per-node load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub inconsistencies: Summary64,
    pub load: Summary64,
}

pub fn sweep_csv(axis: &str, rows: &[SweepRow], mu_star: Option<f64>) -> String {
    let mut out = format!(
        "{axis},inc_count,inc_mean,inc_std,inc_min,inc_max,inc_ci95,\
         load_count,load_mean,load_std,load_min,load_max,load_ci95\n"
    );
    for r in rows {
        let s = &r.inconsistencies;
        let l = &r.load;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_sig(r.value),
            s.count,
            fmt_sig(s.mean),
            fmt_sig(s.std),
            fmt_sig(s.min),
            fmt_sig(s.max),
            fmt_sig(s.ci95),
            l.count,
            fmt_sig(l.mean),
            fmt_sig(l.std),
            fmt_sig(l.min),
            fmt_sig(l.max),
            fmt_sig(l.ci95),
        ));
    }
    if let Some(mu) = mu_star {
        out.push_str(&format!("# mu_star = {}\n", fmt_sig(mu)));
    }
    out
}

pub fn parse_sweep_csv(text: &str, axis: &str) -> Result<(Vec<SweepRow>, Option<f64>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| anyhow!("empty sweep CSV"))?;
    let expected = format!(
        "{axis},inc_count,inc_mean,inc_std,inc_min,inc_max,inc_ci95,\
         load_count,load_mean,load_std,load_min,load_max,load_ci95"
    );
    if header != expected {
        bail!("unexpected sweep CSV header {header:?}");
    }
    let mut rows = Vec::new();
    let mut mu_star = None;
    for (i, line) in lines.enumerate() {
        if let Some(rest) = line.strip_prefix("# mu_star =") {
            mu_star = Some(rest.trim().parse().with_context(|| format!("line {}", i + 2))?);
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 13 {
            bail!("sweep CSV line {}: expected 13 fields", i + 2);
        }
        let ctx = || format!("line {}", i + 2);
        let summary = |off: usize| -> Result<Summary64> {
            Ok(Summary {
                count: f[off].parse().with_context(ctx)?,
                mean: f[off + 1].parse().with_context(ctx)?,
                std: f[off + 2].parse().with_context(ctx)?,
                min: f[off + 3].parse().with_context(ctx)?,
                max: f[off + 4].parse().with_context(ctx)?,
                ci95: f[off + 5].parse().with_context(ctx)?,
            })
        };
        rows.push(SweepRow {
            value: f[0].parse().with_context(ctx)?,
            inconsistencies: summary(1)?,
            load: summary(7)?,
        });
    }
    Ok((rows, mu_star))
}
