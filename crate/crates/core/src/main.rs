use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use prufer_aut::cli::{run_command, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run_command(&cli.command);
    if report.exit_code == 2 {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
        let _ = std::io::stdout().flush();
    }
    ExitCode::from(report.exit_code as u8)
}
