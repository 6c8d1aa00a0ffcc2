//! Thin process front end: all behaviour lives in [`entroscope::cli::run`].

use std::io::Write as _;

fn main() {
    let out = entroscope::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
