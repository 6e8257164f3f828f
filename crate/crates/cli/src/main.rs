//! `padic`: p-adic polynomial roots from the command line.
//!
//! Exit codes: 0 success, 1 bad input, 2 no usable seed,
//! 3 a run did not converge or disagreed with the oracle.

mod config;
mod report;
mod run;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, MethodChoice, RunArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "padic",
    version,
    about = "Compute roots of integer polynomials in Z_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lift every simple root mod p to N digits
    Solve(RunArgs),
    /// Run all methods side by side (ignores --method)
    Compare(RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args, methods) = match cli.command {
        Command::Solve(args) => {
            let methods = args.method.methods();
            ("solve", args, methods)
        }
        Command::Compare(args) => ("compare", args, MethodChoice::All.methods()),
    };
    ExitCode::from(dispatch(name, args, methods) as u8)
}

fn dispatch(name: &str, args: RunArgs, methods: Vec<padic::Method>) -> i32 {
    let cfg = match RunConfig::validate(args, methods) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    for w in &cfg.warnings {
        eprintln!("{w}");
    }
    let rep = match run::execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match cfg.args.format {
        Format::Json => {
            let value = report::json_report(&cfg, &rep, name);
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable")
            );
        }
        Format::Table if name == "compare" => print!("{}", report::compare_table(&cfg, &rep)),
        Format::Table => print!("{}", report::solve_table(&cfg, &rep)),
    }
    if rep.runs.iter().any(run::Run::verification_failed) {
        eprintln!("{}", report::DEFECT_BANNER);
    }
    rep.exit_code()
}
