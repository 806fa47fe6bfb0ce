use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qembed::cli::Cli;

fn main() -> ExitCode {
    let cfg = Cli::parse().into_config();
    let out = qembed::run(&cfg);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    if !out.stderr.is_empty() {
        let msg = out.stderr.trim_end();
        eprintln!("{msg}");
    }
    ExitCode::from(out.exit_code)
}
