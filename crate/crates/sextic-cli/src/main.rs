use clap::Parser;
use sextic_cli::{run_file, Options};
use std::path::PathBuf;
use std::process::ExitCode;

/// Run a scenario of sextic del Pezzo surface computations and print the report.
#[derive(Parser, Debug)]
#[command(name = "sextic", version)]
struct Args {
    /// Scenario file (JSON).
    scenario: PathBuf,
    /// Refuse assumed class facts and treat undecided verdicts as failures.
    #[arg(long)]
    strict: bool,
    /// Seed for the sampling commands.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Default exploration depth of the graph of models.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Directory receiving graph and configuration dumps.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let options = Options { strict: args.strict, seed: args.seed, depth: args.depth, dump_dir: args.dump_dir };
    let outcome = run_file(&args.scenario, &options);
    print!("{}", outcome.report);
    ExitCode::from(outcome.code as u8)
}
