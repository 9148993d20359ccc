use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use xxdeficit::cli::{cmd_point, cmd_sweep, cmd_validate, CliError, SweepConfig};

/// One-way quantum deficit of adjacent bulk spins in the XX chain.
#[derive(Debug, Parser)]
#[command(name = "xxdeficit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the deficit at a single field value.
    Point {
        #[arg(allow_negative_numbers = true)]
        lambda: f64,
    },
    /// Sweep λ over a uniform grid and write CSV.
    Sweep {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
        max: f64,
        #[arg(long, default_value_t = 151)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
        /// Cross-check every row against the full-measurement oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 64)]
        oracle_res: usize,
        /// Also write a two-column `lambda deficit` file.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Compare the closed-form minimization with the oracle.
    Validate {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        oracle_res: usize,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Point { lambda } => print!("{}", cmd_point(lambda)?),
        Command::Sweep {
            min,
            max,
            points,
            out,
            oracle,
            oracle_res,
            plot,
        } => {
            let config = SweepConfig {
                lambda_min: min,
                lambda_max: max,
                points,
                output_path: out,
                validate_with_oracle: oracle,
                oracle_resolution: oracle_res,
                plot_path: plot,
            };
            let summary = cmd_sweep(&config)?;
            println!(
                "wrote {} rows to {}",
                summary.rows,
                config.output_path.display()
            );
            if let Some(max) = summary.max_oracle_diff {
                println!("max |closed form - oracle| = {max:.3e}");
            }
        }
        Command::Validate { count, oracle_res } => print!("{}", cmd_validate(count, oracle_res)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
