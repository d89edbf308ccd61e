use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use log::info;
use oligosim_core::{calibrate, run, sweep, Calibration, SimConfig};

use crate::config::{load_config, load_sweep, render_config};
use crate::report::{run_csv, summary_json, sweep_csv};
use crate::svg::run_charts;

pub const RUN_CSV: &str = "run.csv";
pub const SUMMARY_JSON: &str = "summary.json";

/// Everything `run` writes, keyed by file name.
#[derive(Debug, Clone)]
pub struct OutputBundle {
    pub config: SimConfig,
    pub csv: String,
    pub summary: String,
    pub charts: Vec<(&'static str, String)>,
}

impl OutputBundle {
    pub fn files(&self) -> impl Iterator<Item = (&str, &str)> {
        [
            (RUN_CSV, self.csv.as_str()),
            (SUMMARY_JSON, self.summary.as_str()),
        ]
        .into_iter()
        .chain(self.charts.iter().map(|(n, s)| (*n, s.as_str())))
    }

    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        self.files()
            .map(|(name, body)| {
                let path = dir.join(name);
                fs::write(&path, body)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                Ok(path)
            })
            .collect()
    }
}

pub fn render_run(config: &SimConfig) -> Result<OutputBundle> {
    let result = run(config)?;
    Ok(OutputBundle {
        config: config.clone(),
        csv: run_csv(&result, config.firms.len()),
        summary: summary_json(config, &result),
        charts: run_charts(&result),
    })
}

pub fn run_command(config: &Path, out: &Path, seed: Option<u64>) -> Result<OutputBundle> {
    let mut cfg = load_config(config)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    info!("running {} intervals, seed {}", cfg.horizon, cfg.seed);
    let bundle = render_run(&cfg)?;
    for path in bundle.write_to(out)? {
        info!("wrote {}", path.display());
    }
    Ok(bundle)
}

pub fn sweep_command(spec: &Path, out: &Path, seed: Option<u64>) -> Result<String> {
    let mut spec = load_sweep(spec)?;
    if let Some(seed) = seed {
        spec.base.seed = seed;
    }
    info!(
        "sweeping {}x{} grid, {} replicates",
        spec.gamma_one.len(),
        spec.gamma_two.len(),
        spec.replicates
    );
    let csv = sweep_csv(&sweep(&spec)?);
    if let Some(dir) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    }
    fs::write(out, &csv).with_context(|| format!("cannot write {}", out.display()))?;
    Ok(csv)
}

/// Calibrates and, if asked, writes the base config with the chosen
/// sensitivities applied to every firm.
pub fn calibrate_command(
    target: f64,
    spec: &Path,
    seed: Option<u64>,
    write_config: Option<&Path>,
) -> Result<Calibration> {
    let mut spec = load_sweep(spec)?;
    if let Some(seed) = seed {
        spec.base.seed = seed;
    }
    let cal = calibrate(target, &spec)?;
    if let Some(path) = write_config {
        let cfg = spec.base.with_gammas(cal.gamma_one, cal.gamma_two)?;
        fs::write(path, render_config(&cfg))
            .with_context(|| format!("cannot write {}", path.display()))?;
        info!("wrote {}", path.display());
    }
    Ok(cal)
}
