use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semcom_env::{generate_scenario, write_scenario};
use semcom_harness::{
    compare_methods, parse_config, run_experiment, HarnessError, RunSummary,
};
use semcom_learner::Method;

/// Goal-oriented semantic communication simulator and learning toolkit.
#[derive(Parser)]
#[command(name = "semcom", version, about)]
struct Cli {
    /// Suppress progress lines.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a scenario world and write it to a file.
    GenScenario {
        /// Experiment config (TOML); only the [scenario] section is used.
        #[arg(long)]
        config: PathBuf,
        /// Generation seed.
        #[arg(long)]
        seed: u64,
        /// Output scenario file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one method over the configured seeds, writing scenarios,
    /// metric CSVs, learned descriptions, and a summary.
    Run {
        /// Experiment config (TOML).
        #[arg(long)]
        config: PathBuf,
        /// cl, flat-rl, or non-semantic; defaults to the config's
        /// run.method.
        #[arg(long)]
        method: Option<String>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare previously written run summaries and write the ratio table.
    Compare {
        /// Directories holding summary_<method>.json files.
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        /// Output comparison file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    let quiet = cli.quiet;
    let progress = |line: &str| {
        if !quiet {
            println!("{line}");
        }
    };
    match cli.command {
        Command::GenScenario { config, seed, out } => {
            let config = parse_config(&config)?;
            let scenario = generate_scenario(&config.scenario, seed)?;
            write_scenario(&scenario, &out)?;
            progress(&format!(
                "wrote scenario (B={}, {} events, {} tasks) to {}",
                scenario.belief_count(),
                scenario.event_count(),
                scenario.tasks.len(),
                out.display()
            ));
            Ok(())
        }
        Command::Run { config, method, out } => {
            let config = parse_config(&config)?;
            let method = match method {
                Some(name) => name
                    .parse::<Method>()
                    .map_err(|reason| HarnessError::BadConfig { reason })?,
                None => config.run.method,
            };
            let summary = run_experiment(&config, method, &out, progress)?;
            if !quiet {
                print_summary(&summary);
            }
            Ok(())
        }
        Command::Compare { inputs, out } => {
            let mut summaries = Vec::new();
            for dir in &inputs {
                for method in ["cl", "flat-rl", "non-semantic"] {
                    let path = dir.join(format!("summary_{method}.json"));
                    if path.exists() {
                        let text = std::fs::read_to_string(&path)?;
                        summaries.push(serde_json::from_str::<RunSummary>(&text)?);
                    }
                }
            }
            let table = compare_methods(&summaries)?;
            let mut text = serde_json::to_string_pretty(&table)?;
            text.push('\n');
            std::fs::write(&out, text)?;
            if !quiet {
                print_comparison(&table);
            }
            Ok(())
        }
    }
}

fn print_summary(summary: &RunSummary) {
    println!(
        "{}: training mean length {:.3}, training mean cost {:.3}, converged length {:.3}, converged cost {:.3}",
        summary.method,
        summary.training_mean_length,
        summary.training_mean_cost,
        summary.converged_mean_length,
        summary.converged_mean_cost,
    );
    for seed in &summary.per_seed {
        println!(
            "  seed {}: {} episodes ({} capped), mean length {:.3}, mean cost {:.3}",
            seed.seed,
            seed.episodes,
            seed.capped_episodes,
            seed.training_mean_length,
            seed.training_mean_cost,
        );
    }
}

fn print_comparison(table: &semcom_harness::Comparison) {
    println!("comparison over seeds {:?}:", table.seeds);
    if let Some(v) = table.training_length_flat_over_cl {
        println!("  training length, flat-rl / cl:        {v:.3}");
    }
    if let Some(v) = table.training_cost_flat_over_cl {
        println!("  training cost, flat-rl / cl:          {v:.3}");
    }
    if let Some(v) = table.converged_cost_non_semantic_over_cl {
        println!("  converged cost, non-semantic / cl:    {v:.3}");
    }
    if let Some(v) = table.converged_length_cl_over_non_semantic {
        println!("  converged length, cl / non-semantic:  {v:.3}");
    }
}
