use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use shelstad_cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                shelstad_cli::EXIT_CONFIG as u8
            } else {
                0
            });
        }
    };
    let out = run(&config);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    if !out.failures.is_empty() {
        eprintln!("{}", out.failures_json());
    }
    ExitCode::from(out.status as u8)
}
