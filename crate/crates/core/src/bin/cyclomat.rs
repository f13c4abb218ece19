use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let exec = cyclomat::cli::run(std::env::args_os());
    // stdout closed early (e.g. piped into `head`) is not an error worth reporting
    let _ = std::io::stdout().write_all(exec.stdout.as_bytes());
    let _ = std::io::stderr().write_all(exec.stderr.as_bytes());
    ExitCode::from(exec.code as u8)
}
