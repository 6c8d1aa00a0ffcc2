//! Pinsker radicals and the torsion theory an entropy function induces.
//!
//! For each entropy kind the Pinsker radical is the largest invariant
//! submodule of entropy zero; flows with radical everything are the torsion
//! class, flows with radical zero the torsion-free class, and everything
//! else splits as an extension of one by the other. The same flow can land
//! on opposite sides for different kinds — the half flow ℤ[t]/(2t − 1) is
//! torsion-free for the algebraic entropy yet torsion for the rank entropy.
//!
//! Run with `cargo run --example pinsker_classification`.

use entroscope::entropy::{classify, pinsker, EntropyKind};
use entroscope::flows::parse_flow;

fn main() {
    let documents = [
        ("half flow Z[t]/(2t - 1)", r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#),
        ("mixed diag(1, 2)", r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,2]]}"#),
        ("bernoulli shift over Z/2", r#"{"type":"cyclic","base":2,"poly":[]}"#),
        ("content flow Z[t]/(6t - 12)", r#"{"type":"cyclic","base":0,"poly":[-12,6]}"#),
        ("finite rotation on (Z/5)^2", r#"{"type":"fg","rank":2,"relations":[[5,0],[0,5]],"matrix":[[0,-1],[1,0]]}"#),
    ];
    for (label, doc) in documents {
        let flow = parse_flow(doc).expect("corpus documents parse");
        println!("{label}  [{}]", flow.iso_summary());
        for kind in [EntropyKind::Ha, EntropyKind::Ent, EntropyKind::EntRank] {
            let report = classify(&flow, kind).expect("representable flow");
            println!(
                "  {:<5} {:<13} P = {:<12} 0 → {} → M → {} → 0",
                kind.name(),
                report.class.to_string(),
                report.pinsker.iso(),
                report.sub_iso,
                report.quot_iso,
            );
        }
        println!();
    }

    // The radical itself is verified on construction: entropy of the
    // radical subflow is zero, and sampled cyclic subobjects of the
    // quotient all have positive entropy.
    let flow = parse_flow(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,2]]}"#)
        .expect("document parses");
    let p = pinsker(&flow, EntropyKind::Ha).expect("verification passes");
    println!("verified Pinsker radical of diag(1, 2) under ha: {}", p.iso());
}
