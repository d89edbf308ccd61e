use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};
use oligosim_cli::report::fmt_num;
use oligosim_cli::{calibrate_command, run_command, sweep_command};

/// Oligopoly competition simulator.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Override the seed given in the config or sweep spec.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one cycle and write run.csv, summary.json and four SVG charts.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a sensitivity grid over a seed ensemble and write per-cell statistics.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find the grid cell whose median global excess is closest to a target.
    Calibrate {
        #[arg(long)]
        target: f64,
        #[arg(long)]
        spec: PathBuf,
        /// Write the base config with the selected sensitivities here.
        #[arg(long)]
        write_config: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("OLIGOSIM_LOG", "warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out } => {
            run_command(&config, &out, cli.seed)?;
        }
        Command::Sweep { spec, out } => {
            sweep_command(&spec, &out, cli.seed)?;
        }
        Command::Calibrate {
            target,
            spec,
            write_config,
        } => {
            let cal = calibrate_command(target, &spec, cli.seed, write_config.as_deref())?;
            let s = cal.cell.stats;
            println!(
                "gamma_one={} gamma_two={} median={} mean={} fraction_positive={} runs={}",
                fmt_num(cal.gamma_one),
                fmt_num(cal.gamma_two),
                fmt_num(s.median),
                fmt_num(s.mean),
                fmt_num(s.fraction_positive),
                s.runs
            );
        }
    }
    Ok(())
}
