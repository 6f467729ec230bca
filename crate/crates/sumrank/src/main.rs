use std::io::Write;

fn main() {
    let outcome = sumrank::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    std::process::exit(outcome.code);
}
