//! `laar`: anchor grids, seeded detection simulation, score-aware NMS,
//! AP evaluation and mode comparison from one deterministic config.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use laar_core::{ErrorCategory, NmsMode};

use commands::{cmd_anchors, cmd_compare, cmd_eval, cmd_nms, cmd_simulate, default_input};
use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "laar",
    version,
    about = "Location-aware anchor reasoning pipeline",
    after_help = "Outputs are a pure function of the config: rerunning any \
                  command with the same settings reproduces the same bytes."
)]
struct Cli {
    /// TOML config file; missing sections and fields use built-in defaults
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Directory for output files (created if absent)
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,

    /// Override the simulation seed from the config
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the anchor grid and write it to anchors.json
    Anchors,
    /// Generate seeded scenes and proposals (annotations.json, proposals.json)
    Simulate,
    /// Suppress proposals into detections.json
    Nms {
        /// Proposal file (default: <out>/proposals.json)
        #[arg(long, value_name = "PATH")]
        proposals: Option<PathBuf>,
        /// baseline, laar, or laar-cluster
        #[arg(long, value_parser = NmsMode::from_str)]
        mode: Option<NmsMode>,
        /// Overlap threshold above which a box is suppressed
        #[arg(long)]
        epsilon: Option<f64>,
        /// Keep at most this many detections per image (0 = unlimited)
        #[arg(long)]
        top_k: Option<usize>,
        /// Suppress within each class separately
        #[arg(long)]
        per_class: Option<bool>,
    },
    /// Score detections against annotations (report.json, report.csv)
    Eval {
        /// Detection file (default: <out>/detections.json)
        #[arg(long, value_name = "PATH")]
        detections: Option<PathBuf>,
        /// Annotation file (default: <out>/annotations.json)
        #[arg(long, value_name = "PATH")]
        annotations: Option<PathBuf>,
    },
    /// Simulate once and evaluate every suppression mode (comparison.csv)
    Compare,
}

fn run(cli: Cli) -> laar_core::Result<()> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.simulation.seed = seed;
    }
    std::fs::create_dir_all(&cli.out)?;
    let out = cli.out.as_path();

    match cli.command {
        Command::Anchors => cmd_anchors(&cfg, out),
        Command::Simulate => cmd_simulate(&cfg, out),
        Command::Nms {
            proposals,
            mode,
            epsilon,
            top_k,
            per_class,
        } => {
            if let Some(mode) = mode {
                cfg.nms.mode = mode;
            }
            if let Some(epsilon) = epsilon {
                cfg.nms.epsilon = epsilon;
            }
            if let Some(top_k) = top_k {
                cfg.nms.top_k = top_k;
            }
            if let Some(per_class) = per_class {
                cfg.nms.per_class = per_class;
            }
            let proposals = default_input(out, "proposals.json", proposals);
            cmd_nms(&cfg, out, &proposals)
        }
        Command::Eval {
            detections,
            annotations,
        } => {
            let detections = default_input(out, "detections.json", detections);
            let annotations = default_input(out, "annotations.json", annotations);
            cmd_eval(&cfg, out, &detections, &annotations)
        }
        Command::Compare => cmd_compare(&cfg, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; those are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err.category() {
                ErrorCategory::Config => 1,
                ErrorCategory::Data => 2,
                ErrorCategory::Internal => 3,
            })
        }
    }
}
