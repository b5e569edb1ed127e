//! Flat `key = value` simulation config files.
//!
//! Every key maps to one simulation or topology field. Unknown and duplicate
//! keys are hard errors so a config file can never silently drift from the
//! code that reads it.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use watchnet_core::sim::{GammaParams, Protocol};
use watchnet_core::topology::{default_k, TopologyKind, TopologyParams};
use watchnet_core::SimConfig64;

/// A parsed config file: the simulation configuration plus the change-rate
/// percentage it was derived from (kept so sweeps over `n` can re-derive the
/// gamma mean).
#[derive(Debug, Clone, Copy)]
pub struct ParsedConfig {
    pub sim: SimConfig64,
    pub rate_pct: f64,
}

const KEYS: &[&str] = &[
    "kind",
    "n",
    "k",
    "mu",
    "p_rewire",
    "p_invert",
    "topology_seed",
    "protocol",
    "rate_pct",
    "gamma_shape",
    "duration_s",
    "probe_interval_s",
    "direct_latency_s",
    "poll_period_s",
    "poll_fanout",
    "sim_seed",
];

pub fn load_config(path: &Path) -> Result<ParsedConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in config {}", path.display()))
}

pub fn parse_config(text: &str) -> Result<ParsedConfig> {
    let mut seen: Vec<(&str, &str)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected `key = value`, got {raw:?}", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        if !KEYS.contains(&key) {
            bail!("line {}: unknown key {key:?}", lineno + 1);
        }
        if seen.iter().any(|&(k, _)| k == key) {
            bail!("line {}: duplicate key {key:?}", lineno + 1);
        }
        seen.push((key, value));
    }

    let get = |key: &str| seen.iter().find(|&&(k, _)| k == key).map(|&(_, v)| v);
    let parse_f64 = |key: &str| -> Result<Option<f64>> {
        get(key)
            .map(|v| v.parse::<f64>().with_context(|| format!("key {key:?}: bad number {v:?}")))
            .transpose()
    };
    let parse_usize = |key: &str| -> Result<Option<usize>> {
        get(key)
            .map(|v| v.parse::<usize>().with_context(|| format!("key {key:?}: bad integer {v:?}")))
            .transpose()
    };
    let parse_u64 = |key: &str| -> Result<Option<u64>> {
        get(key)
            .map(|v| v.parse::<u64>().with_context(|| format!("key {key:?}: bad integer {v:?}")))
            .transpose()
    };

    let kind: TopologyKind = get("kind")
        .ok_or_else(|| anyhow!("missing required key \"kind\""))?
        .parse()
        .map_err(|e: String| anyhow!(e))?;
    let n = parse_usize("n")?.ok_or_else(|| anyhow!("missing required key \"n\""))?;
    let k = parse_usize("k")?.unwrap_or_else(|| default_k(n));
    let mu = parse_f64("mu")?;
    if kind == TopologyKind::KlemmEguiluz && mu.is_none() {
        bail!("kind = ke requires an explicit mu");
    }

    let mut topology = TopologyParams::<f64> {
        kind,
        n,
        k,
        ..TopologyParams::random(n, k, parse_u64("topology_seed")?.unwrap_or(1))
    };
    if let Some(mu) = mu {
        topology.mu = mu;
    }
    if let Some(p) = parse_f64("p_rewire")? {
        topology.p_rewire = p;
    }
    if let Some(p) = parse_f64("p_invert")? {
        topology.p_invert = p;
    }

    let protocol = match get("protocol") {
        None => Protocol::Transitive,
        Some("direct") => Protocol::Direct,
        Some("transitive") => Protocol::Transitive,
        Some(other) => bail!("key \"protocol\": expected direct or transitive, got {other:?}"),
    };

    let rate_pct = parse_f64("rate_pct")?.unwrap_or(1.0);
    let mut gamma = GammaParams::from_rate_pct(rate_pct, n);
    if let Some(shape) = parse_f64("gamma_shape")? {
        gamma.shape = shape;
    }

    let mut sim = SimConfig64::new(topology, protocol, gamma, parse_u64("sim_seed")?.unwrap_or(42));
    if let Some(v) = parse_f64("duration_s")? {
        sim.duration_s = v;
    }
    if let Some(v) = parse_f64("probe_interval_s")? {
        sim.probe_interval_s = v;
    }
    if let Some(v) = parse_f64("direct_latency_s")? {
        sim.direct_latency_s = v;
    }
    if let Some(v) = parse_f64("poll_period_s")? {
        sim.poll_period_s = v;
    }
    if let Some(v) = parse_usize("poll_fanout")? {
        sim.poll_fanout = v;
    }
    sim.validate()?;
    Ok(ParsedConfig { sim, rate_pct })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
        kind = ke\n\
        n = 100\n\
        k = 8\n\
        mu = 0.2\n\
        protocol = transitive\n\
        rate_pct = 1\n\
        duration_s = 60\n\
        sim_seed = 9\n";

    #[test]
    fn parses_a_full_file() {
        let cfg = parse_config(GOOD).unwrap();
        assert_eq!(cfg.sim.topology.kind, TopologyKind::KlemmEguiluz);
        assert_eq!(cfg.sim.topology.n, 100);
        assert_eq!(cfg.sim.topology.k, 8);
        assert_eq!(cfg.sim.topology.mu, 0.2);
        assert_eq!(cfg.sim.duration_s, 60.0);
        assert_eq!(cfg.sim.sim_seed, 9);
        assert_eq!(cfg.rate_pct, 1.0);
        // derived: 60 / (1/100) / 100 = 60 s between changes
        assert_eq!(cfg.sim.gamma.mean_interval_s, 60.0);
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = parse_config("kind = random\nn = 400\n").unwrap();
        assert_eq!(cfg.sim.topology.k, 20); // round(sqrt(400))
        assert_eq!(cfg.sim.duration_s, 3600.0);
        assert_eq!(cfg.sim.protocol, Protocol::Transitive);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let err = parse_config("kind = random\nn = 10\nwibble = 3\n").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
    }

    #[test]
    fn duplicate_key_is_rejected() {
        let err = parse_config("kind = random\nn = 10\nn = 20\n").unwrap_err();
        assert!(err.to_string().contains("duplicate key"));
    }

    #[test]
    fn ke_without_mu_is_rejected() {
        let err = parse_config("kind = ke\nn = 100\nk = 5\n").unwrap_err();
        assert!(err.to_string().contains("requires an explicit mu"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = parse_config("# header\n\nkind = sw # trailing\nn = 20\nk = 4\n").unwrap();
        assert_eq!(cfg.sim.topology.kind, TopologyKind::SmallWorld);
    }

    #[test]
    fn invalid_domain_is_rejected() {
        assert!(parse_config("kind = sw\nn = 10\nk = 3\n").is_err()); // odd lattice k
        assert!(parse_config("kind = random\nn = 10\nmu = 1.5\n").is_err());
    }
}
