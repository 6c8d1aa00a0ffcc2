//! Driving the command-line surface in-process.
//!
//! The whole CLI is the pure function `cli::run(argv)`: it returns exit
//! code and both output streams, so scripted callers and tests can compare
//! bytes. Identical arguments always produce identical output.
//!
//! Run with `cargo run --example cli_runs`.

use entroscope::cli::run;

fn show(args: &[&str]) {
    println!("$ entroscope {}", args.join(" "));
    let out = run(std::iter::once("entroscope").chain(args.iter().copied()));
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        print!("stderr: {}", out.stderr);
    }
    println!("(exit {})", out.code);
    println!();
}

fn main() {
    show(&["mahler", "--poly", "[-1,-1,1]"]);
    show(&["entropy", "--kind", "ent", r#"{"type":"cyclic","base":3,"poly":[]}"#]);
    show(&["classify", "--kind", "rank", r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#]);
    show(&[
        "radical",
        "--letter",
        "W",
        "--format",
        "json",
        r#"{"type":"cyclic","base":2,"poly":[]}"#,
    ]);
    show(&["verify", "--kind", "ent", "--axioms", "A0,A5,AT", "--trials", "5", "--seed", "7"]);
}
