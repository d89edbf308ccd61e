//! Config and sweep-spec files.
//!
//! Both are TOML with flat top-level keys and one `[[firm]]` section per firm:
//!
//! ```toml
//! horizon = 30
//! demand = 1.0
//! seed = 1
//! price_process = "iid_uniform"   # or "random_walk" (needs walk_step)
//! p_min = 0.05
//! eps_price = 1e-12
//! initial_p1 = 0.5
//! gamma_one = 0.7                 # inherited by firms that omit it
//! gamma_two = 0.6
//! initial_buffer = 1.0
//!
//! [[firm]]
//! c = 0.2
//! d = 0.8                         # optional, defaults to 1 - c
//! ```
//!
//! Omitting every `[[firm]]` section gives the four reference firms
//! (c = 0.2, 0.4, 0.6, 0.8). A sweep spec adds `gamma_one_values`,
//! `gamma_two_values` and `replicates`.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use oligosim_core::economics::DEFAULT_PRICE_EPS;
use oligosim_core::engine::{
    CALIBRATED_GAMMA_ONE, CALIBRATED_GAMMA_TWO, DEFAULT_HORIZON, DEFAULT_INITIAL_BUFFER,
    DEFAULT_P_MIN, PAPER_CAPITAL_EXPONENTS,
};
use oligosim_core::experiments::default_gamma_grid;
use oligosim_core::{FactorPrices, FirmParams, PriceProcess, SimConfig, SweepSpec};
use serde::Deserialize;

pub const DEFAULT_REPLICATES: usize = 1000;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    horizon: Option<usize>,
    demand: Option<f64>,
    seed: Option<u64>,
    price_process: Option<String>,
    p_min: Option<f64>,
    walk_step: Option<f64>,
    eps_price: Option<f64>,
    initial_p1: Option<f64>,
    gamma_one: Option<f64>,
    gamma_two: Option<f64>,
    initial_buffer: Option<f64>,
    #[serde(default)]
    firm: Vec<FirmSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FirmSection {
    c: f64,
    d: Option<f64>,
    gamma_one: Option<f64>,
    gamma_two: Option<f64>,
    initial_buffer: Option<f64>,
}

impl ConfigFile {
    fn into_config(self) -> Result<SimConfig> {
        let gamma_one = self.gamma_one.unwrap_or(CALIBRATED_GAMMA_ONE);
        let gamma_two = self.gamma_two.unwrap_or(CALIBRATED_GAMMA_TWO);
        let buffer = self.initial_buffer.unwrap_or(DEFAULT_INITIAL_BUFFER);

        let sections = if self.firm.is_empty() {
            PAPER_CAPITAL_EXPONENTS
                .iter()
                .map(|&c| FirmSection {
                    c,
                    d: None,
                    gamma_one: None,
                    gamma_two: None,
                    initial_buffer: None,
                })
                .collect()
        } else {
            self.firm
        };
        let firms = sections
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                FirmParams::with_exponents(
                    f.c,
                    f.d.unwrap_or(1.0 - f.c),
                    f.gamma_one.unwrap_or(gamma_one),
                    f.gamma_two.unwrap_or(gamma_two),
                    f.initial_buffer.unwrap_or(buffer),
                )
                .with_context(|| format!("firm {}", i + 1))
            })
            .collect::<Result<Vec<_>>>()?;

        let p_min = self.p_min.unwrap_or(DEFAULT_P_MIN);
        let price_process = match self.price_process.as_deref().unwrap_or("iid_uniform") {
            "iid_uniform" => {
                if self.walk_step.is_some() {
                    bail!("walk_step is only valid with price_process = \"random_walk\"");
                }
                PriceProcess::IidUniform { p_min }
            }
            "random_walk" => PriceProcess::RandomWalk {
                step: self
                    .walk_step
                    .context("price_process = \"random_walk\" requires walk_step")?,
                p_min,
            },
            other => bail!("unknown price_process {other:?} (expected iid_uniform or random_walk)"),
        };

        let config = SimConfig {
            firms,
            horizon: self.horizon.unwrap_or(DEFAULT_HORIZON),
            demand: self.demand.unwrap_or(1.0),
            seed: self.seed.unwrap_or(0),
            price_process,
            eps_price: self.eps_price.unwrap_or(DEFAULT_PRICE_EPS),
            initial_prices: FactorPrices::new(self.initial_p1.unwrap_or(0.5))?,
        };
        config.validate()?;
        Ok(config)
    }
}

pub fn parse_config(text: &str) -> Result<SimConfig> {
    let file: ConfigFile = toml::from_str(text).context("malformed config")?;
    file.into_config()
}

pub fn parse_sweep(text: &str) -> Result<SweepSpec> {
    let mut table: toml::Table = toml::from_str(text).context("malformed sweep spec")?;
    let grid = |table: &mut toml::Table, key: &str| -> Result<Vec<f64>> {
        match table.remove(key) {
            None => Ok(default_gamma_grid()),
            Some(v) => Vec::<f64>::deserialize(v)
                .with_context(|| format!("{key} must be a list of numbers")),
        }
    };
    let gamma_one = grid(&mut table, "gamma_one_values")?;
    let gamma_two = grid(&mut table, "gamma_two_values")?;
    let replicates = match table.remove("replicates") {
        None => DEFAULT_REPLICATES,
        Some(v) => usize::deserialize(v).context("replicates must be a non-negative integer")?,
    };
    let base = ConfigFile::deserialize(table)
        .context("malformed sweep spec")?
        .into_config()?;
    let spec = SweepSpec::new(base, gamma_one, gamma_two, replicates);
    spec.validate()?;
    Ok(spec)
}

pub fn load_config(path: &Path) -> Result<SimConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    parse_config(&text).with_context(|| format!("invalid config {}", path.display()))
}

pub fn load_sweep(path: &Path) -> Result<SweepSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read sweep spec {}", path.display()))?;
    parse_sweep(&text).with_context(|| format!("invalid sweep spec {}", path.display()))
}

/// Writes `config` back in the file format, one `[[firm]]` section per firm.
pub fn render_config(config: &SimConfig) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "horizon = {}", config.horizon);
    let _ = writeln!(out, "demand = {}", toml_float(config.demand));
    let _ = writeln!(out, "seed = {}", config.seed);
    match config.price_process {
        PriceProcess::IidUniform { p_min } => {
            let _ = writeln!(out, "price_process = \"iid_uniform\"");
            let _ = writeln!(out, "p_min = {}", toml_float(p_min));
        }
        PriceProcess::RandomWalk { step, p_min } => {
            let _ = writeln!(out, "price_process = \"random_walk\"");
            let _ = writeln!(out, "p_min = {}", toml_float(p_min));
            let _ = writeln!(out, "walk_step = {}", toml_float(step));
        }
    }
    let _ = writeln!(out, "eps_price = {}", toml_float(config.eps_price));
    let _ = writeln!(
        out,
        "initial_p1 = {}",
        toml_float(config.initial_prices.p1())
    );
    for f in &config.firms {
        let _ = writeln!(out, "\n[[firm]]");
        let _ = writeln!(out, "c = {}", toml_float(f.c()));
        if f.d() != 1.0 - f.c() {
            let _ = writeln!(out, "d = {}", toml_float(f.d()));
        }
        let _ = writeln!(out, "gamma_one = {}", toml_float(f.gamma_one()));
        let _ = writeln!(out, "gamma_two = {}", toml_float(f.gamma_two()));
        let _ = writeln!(out, "initial_buffer = {}", toml_float(f.initial_buffer()));
    }
    out
}

// Debug formatting is the shortest round-trip form and always reads back as
// a TOML float ("1.0", "1e-12").
fn toml_float(x: f64) -> String {
    format!("{x:?}")
}
