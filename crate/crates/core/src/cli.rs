//! Command-line front end. `main` in the binary is a thin wrapper around
//! [`run_cli`], which writes to caller-provided streams so that tests can
//! drive it directly.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::calculus::{validate_system, InteractionSystem};
use crate::engine::{Engine, EngineConfig, Mode, RunStatus};
use crate::fixtures;
use crate::text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_STEP_LIMIT: i32 = 2;
pub const EXIT_STUCK: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "weaknet", version, about = "Needed reduction of interaction nets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a file.
    Check { file: PathBuf },
    /// Reduce a net and print the residual configuration.
    Run {
        file: PathBuf,
        #[arg(long)]
        net: Option<String>,
        #[arg(long, default_value = "needed")]
        mode: Mode,
        #[arg(long)]
        max_steps: Option<u64>,
        /// Print one `STEP<TAB>KIND<TAB>DETAIL` line per step to stderr.
        #[arg(long)]
        trace: bool,
        /// Write the JSON stats record to this path.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Rename all names to n0, n1, … in the printed residual.
        #[arg(long)]
        canon: bool,
        #[arg(long)]
        shuffle_seed: Option<u64>,
        #[arg(long)]
        strict_rules: bool,
    },
    /// Reduce a net repeatedly and report throughput.
    Bench {
        file: PathBuf,
        #[arg(long)]
        net: Option<String>,
        #[arg(long, default_value_t = 1)]
        repeat: u32,
        #[arg(long, default_value = "needed")]
        mode: Mode,
        #[arg(long)]
        shuffle_seed: Option<u64>,
    },
    /// Print a generated delegation-chain net of the given depth.
    GenChain { depth: usize },
}

fn load(path: &PathBuf, err: &mut dyn Write) -> Option<InteractionSystem> {
    let display = path.display();
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{display}: {e}");
            return None;
        }
    };
    let system = match text::parse(&src) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{display}:{e}");
            return None;
        }
    };
    let diags = validate_system(&system);
    if !diags.is_empty() {
        for d in &diags {
            let _ = writeln!(err, "{display}:{d}");
        }
        return None;
    }
    Some(system)
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Check { file } => match load(&file, err) {
            Some(_) => EXIT_OK,
            None => EXIT_INVALID,
        },
        Command::Run {
            file,
            net,
            mode,
            max_steps,
            trace,
            stats,
            canon,
            shuffle_seed,
            strict_rules,
        } => {
            let Some(system) = load(&file, err) else {
                return EXIT_INVALID;
            };
            let config = EngineConfig {
                mode,
                max_steps,
                shuffle_seed,
                strict_rules,
                trace,
                audit: false,
            };
            let mut engine = match Engine::load(&system, net.as_deref(), config) {
                Ok(e) => e,
                Err(e) => {
                    let _ = writeln!(err, "{}: {e}", file.display());
                    return EXIT_INVALID;
                }
            };
            let result = engine.run();
            for ev in &result.trace {
                let _ = writeln!(err, "{ev}");
            }
            let _ = write!(out, "{}", text::print_config(&result.residual, canon));
            if let Some(path) = stats {
                if let Err(e) = std::fs::write(&path, text::stats_json(&result) + "\n") {
                    let _ = writeln!(err, "{}: {e}", path.display());
                    return EXIT_INVALID;
                }
            }
            match result.status {
                RunStatus::Normal => EXIT_OK,
                RunStatus::StepLimit => {
                    let _ = writeln!(err, "step limit reached after {} steps", result.stats.steps);
                    EXIT_STEP_LIMIT
                }
                RunStatus::Stuck { left, right } => {
                    let _ = writeln!(err, "stuck: no rule for needed pair {left} >< {right}");
                    EXIT_STUCK
                }
            }
        }
        Command::Bench {
            file,
            net,
            repeat,
            mode,
            shuffle_seed,
        } => {
            let Some(system) = load(&file, err) else {
                return EXIT_INVALID;
            };
            let mut step_counts: Vec<u64> = Vec::new();
            let mut total_steps = 0u64;
            let mut max_ops = 0u64;
            let mut elapsed = std::time::Duration::ZERO;
            for _ in 0..repeat.max(1) {
                let config = EngineConfig {
                    mode,
                    shuffle_seed,
                    ..EngineConfig::default()
                };
                let mut engine = match Engine::load(&system, net.as_deref(), config) {
                    Ok(e) => e,
                    Err(e) => {
                        let _ = writeln!(err, "{}: {e}", file.display());
                        return EXIT_INVALID;
                    }
                };
                let start = Instant::now();
                let result = engine.run();
                elapsed += start.elapsed();
                total_steps += result.stats.steps;
                max_ops = max_ops.max(result.stats.max_ops_per_step);
                if !step_counts.contains(&result.stats.steps) {
                    step_counts.push(result.stats.steps);
                }
            }
            let distinct: Vec<String> = step_counts.iter().map(u64::to_string).collect();
            let secs = elapsed.as_secs_f64();
            let rate = if secs > 0.0 { total_steps as f64 / secs } else { 0.0 };
            let _ = writeln!(out, "runs\t{}", repeat.max(1));
            let _ = writeln!(out, "steps_per_run\t{}", distinct.join(","));
            let _ = writeln!(out, "total_steps\t{total_steps}");
            let _ = writeln!(out, "max_ops_per_step\t{max_ops}");
            let _ = writeln!(out, "# timing");
            let _ = writeln!(out, "wall_time_ms\t{:.3}", secs * 1e3);
            let _ = writeln!(out, "steps_per_sec\t{rate:.0}");
            EXIT_OK
        }
        Command::GenChain { depth } => {
            let _ = write!(out, "{}", fixtures::delegation_chain(depth));
            EXIT_OK
        }
    }
}
