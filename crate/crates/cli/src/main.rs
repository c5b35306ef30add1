use std::io::Write;

fn main() {
    let outcome = hyperindex_cli::run(std::env::args_os());
    // A closed pipe is not worth a panic; the exit code still reports the run.
    let _ = std::io::stdout().write_all(&outcome.stdout);
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
