//! The three entropy functions side by side on one family of flows.
//!
//! * `ha`   — algebraic entropy: Mahler measure of the characteristic
//!            polynomial on the free quotient, trajectory growth on torsion;
//! * `ent`  — torsion entropy: growth of finite subgroup trajectories,
//!            `log m` on the shift over ℤ/m;
//! * `rank` — rank entropy: one unit per free shift axis, zero on
//!            everything finitely generated.
//!
//! Run with `cargo run --example entropy_backends`.

use entroscope::entropy::{entropy, EntropyKind, Method};
use entroscope::flows::parse_flow;

fn main() {
    let documents = [
        ("doubling (Z, ×2)", r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#),
        ("fibonacci companion", r#"{"type":"fg","rank":2,"relations":[],"matrix":[[0,1],[1,1]]}"#),
        ("bernoulli shift over Z/3", r#"{"type":"cyclic","base":3,"poly":[]}"#),
        ("free shift Z[t]", r#"{"type":"cyclic","base":0,"poly":[]}"#),
        ("half flow Z[t]/(2t - 1)", r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#),
        ("finite rotation on (Z/5)^2", r#"{"type":"fg","rank":2,"relations":[[5,0],[0,5]],"matrix":[[0,-1],[1,0]]}"#),
        (
            "mixed sum",
            r#"{"type":"sum","parts":[{"type":"fg","rank":1,"relations":[],"matrix":[[2]]},{"type":"cyclic","base":2,"poly":[]}]}"#,
        ),
    ];
    for (label, doc) in documents {
        let flow = parse_flow(doc).expect("corpus documents parse");
        println!("{label}  [{}]", flow.iso_summary());
        for kind in [EntropyKind::Ha, EntropyKind::Ent, EntropyKind::EntRank] {
            // The full free shift has no finite algebraic entropy; the
            // backend reports that as a domain error rather than a value.
            match entropy(&flow, kind, Method::Auto, 1e-9) {
                Ok(value) => println!("  {:<5} {value}", kind.name()),
                Err(e) => println!("  {:<5} {e}", kind.name()),
            }
        }
        println!();
    }
}
