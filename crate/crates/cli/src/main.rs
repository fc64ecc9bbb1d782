use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = lbf_cli::Cli::parse();
    match lbf_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
