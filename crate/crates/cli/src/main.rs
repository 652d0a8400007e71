//! Experiment harness over the `illposed` library: every subcommand
//! reproduces one experiment family as CSV/PGM artifacts with full seed
//! and shift control. Runs are deterministic: identical flags produce
//! byte-identical outputs.

mod commands;
mod opts;

use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") || args.is_empty() {
        print!("{}", opts::USAGE);
        return if args.is_empty() {
            ExitCode::from(2)
        } else {
            ExitCode::SUCCESS
        };
    }

    let cli = match opts::parse(&args) {
        Ok(cli) => cli,
        Err(reason) => {
            eprintln!("illposed: {reason}");
            return ExitCode::from(2);
        }
    };

    let result = match cli.command.as_str() {
        "asp-sweep" => commands::run_asp_sweep(&cli),
        "atp" => commands::run_atp(&cli),
        "cost" => commands::run_cost(&cli),
        "lambda-accuracy" => commands::run_lambda_accuracy(&cli),
        "filters" => commands::run_filters(&cli),
        "deblur" => commands::run_deblur(&cli),
        "gallery" => commands::run_gallery(&cli),
        other => {
            eprintln!("illposed: unknown command '{other}'");
            return ExitCode::from(2);
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(reason) => {
            eprintln!("illposed: {reason}");
            ExitCode::FAILURE
        }
    }
}
