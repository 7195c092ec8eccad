use std::io::Write;

fn main() {
    let stdin = std::io::stdin();
    let outcome = hclcolor_cli::cli::run(std::env::args_os(), &mut stdin.lock());
    // A closed pipe on stdout is not worth reporting.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
