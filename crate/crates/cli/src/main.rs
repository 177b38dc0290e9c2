use std::path::{Path, PathBuf};
use std::process::ExitCode;

use averaging_cli::config::JobConfig;
use averaging_cli::report::{Format, FormulaReport};
use averaging_cli::{config_failure, parse_formula_spec, run_job, JobOptions, Outcome, EXIT_CONFIG};
use averaging_core::averaging::emit_integrand_formula;
use clap::{error::ErrorKind, Parser, Subcommand};

/// Exact higher-order averaging for perturbed planar centers.
#[derive(Parser, Debug)]
#[command(name = "averaging", version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Seed for the random points used by the independence rank.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the integrand formula of order k (`k=N`) without a system.
    #[arg(long, value_name = "k=N", value_parser = parse_formula_spec)]
    formula: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute f_1..f_k for a system described by a TOML file.
    Average {
        config: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        /// Include y_h in the report.
        #[arg(long)]
        show_y: bool,
        /// Add the Descartes sign-variation bound of each f_h.
        #[arg(long)]
        descartes: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the integrand formula of order k in terms of F_j and y_j.
    Formula {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Average, then locate Poincaré fixed points for the [verify] ε ladder.
    Verify {
        config: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn job(config: &Path, opts: JobOptions) -> Outcome {
    match JobConfig::from_path(config) {
        Ok(cfg) => run_job(&cfg, &opts),
        Err(e) => config_failure(&e),
    }
}

fn finish(outcome: Outcome, format: Format, out: Option<&Path>) -> ExitCode {
    if let Some(e) = &outcome.report.error {
        eprintln!("error ({}): {}", e.kind, e.message);
    }
    if let Err(e) = emit(&outcome.report.render(format), out) {
        eprintln!("{e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit as u8)
}

fn formula(k: u32, format: Format, out: Option<&Path>) -> ExitCode {
    if k == 0 {
        eprintln!("k must be at least 1");
        return ExitCode::from(EXIT_CONFIG as u8);
    }
    let doc = FormulaReport::new(&emit_integrand_formula(k));
    match emit(&doc.render(format), out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    match cli.command {
        Some(Command::Average { config, order, show_y, descartes, format, out }) => {
            let opts = JobOptions { order, show_y, descartes, seed: cli.seed, verify: false };
            finish(job(&config, opts), format, out.as_deref())
        }
        Some(Command::Verify { config, order, format, out }) => {
            let opts = JobOptions { order, seed: cli.seed, verify: true, ..Default::default() };
            finish(job(&config, opts), format, out.as_deref())
        }
        Some(Command::Formula { k, format, out }) => formula(k, format, out.as_deref()),
        None => match cli.formula {
            Some(k) => formula(k, cli.format, None),
            None => {
                eprintln!("a subcommand or --formula k=N is required (see --help)");
                ExitCode::from(EXIT_CONFIG as u8)
            }
        },
    }
}
