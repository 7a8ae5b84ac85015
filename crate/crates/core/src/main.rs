use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = fqk::cli::run(std::env::args_os(), &|k| std::env::var(k).ok());
    // A closed pipe is not an error worth reporting.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
