use std::process::ExitCode;

use clap::Parser;

use ybe::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    print!("{}", report.stdout);
    ExitCode::from(report.exit.code())
}
