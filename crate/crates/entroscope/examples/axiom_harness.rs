//! Randomized verification of the entropy axioms on seeded instances.
//!
//! The harness samples flows from the representable class (bounded ranks,
//! degrees, and coefficients) with a deterministic per-trial seed stream
//! and checks, per entropy kind:
//!
//! * A0        — null and identity flows have entropy zero;
//! * A1        — invariance under unimodular conjugation and presentation
//!               change;
//! * A2*       — additivity over invariant submodules;
//! * A3        — additivity over direct sums;
//! * A4*       — the logarithmic law h(φᵏ) = k·h(φ);
//! * A5        — Bernoulli normalization h(β over ℤ/m) = log m;
//! * AT        — the addition theorem on cyclic pairs (g)/(fg);
//! * SANDWICH  — quasi-periodic radical ⊆ Pinsker ⊆ algebraic radical.
//!
//! Failures carry the offending instance serialized, so any report line can
//! be replayed through the command line. Run with
//! `cargo run --example axiom_harness`.

use entroscope::entropy::{verify_axioms, Axiom, EntropyKind};

fn main() {
    for kind in [EntropyKind::Ha, EntropyKind::Ent, EntropyKind::EntRank] {
        println!("kind: {}", kind.name());
        let reports = verify_axioms(kind, &Axiom::ALL, 12, 0xA11CE).expect("trials >= 1");
        for report in &reports {
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "  {:<9} {:>3}/{:<3} {verdict}",
                report.axiom.name(),
                report.passes,
                report.trials
            );
            for note in &report.notes {
                println!("    note: {note}");
            }
            for failure in &report.failures {
                println!("    fail: {failure}");
            }
        }
        println!();
    }
}
