use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (exit, stdout, stderr) = simplex_cli::main_with_args(std::env::args().collect());
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    exit.into()
}
