//! Flow documents: the JSON wire format and the module calculus on it.
//!
//! Flows parse from and serialize to a canonical JSON schema (`fg` parts
//! carry a rank, relation vectors, and a row-major matrix; `cyclic` parts a
//! base and a coefficient list; sums wrap a part array). On top of that the
//! calculus builds invariant submodules, the exact sequence
//! 0 → N → M → M/N → 0, direct sums, and powers φᵏ.
//!
//! Run with `cargo run --example flow_documents`.

use entroscope::flows::{
    parse_flow, power_flow, serialize_flow, sub_quot, PartSub, SubmoduleDesc,
};
use entroscope::IntPoly;

fn main() {
    // Round trip: parse, then serialize back to the canonical document.
    let doc = r#"{"type":"cyclic","base":0,"poly":[-12,6]}"#;
    let flow = parse_flow(doc).expect("document parses");
    println!("document : {doc}");
    println!("canonical: {}", serialize_flow(&flow));
    println!("structure: {}", flow.iso_summary());
    println!();

    // Invariant submodule (2) of Z[t]/(6t - 12) and the exact sequence it
    // cuts: the sub is again cyclic, the quotient finite.
    let n = SubmoduleDesc::new(&flow, vec![PartSub::Generator(IntPoly::from_i64s(&[2]))])
        .expect("generator reduces");
    let (sub, quot) = sub_quot(&flow, &n).expect("invariant submodule");
    println!("N = (2) inside {}:", flow.iso_summary());
    println!("  sub      = {}", sub.iso_summary());
    println!("  quotient = {}", quot.iso_summary());
    println!();

    // Powers: the doubling flow squared is multiplication by 4.
    let doubling =
        parse_flow(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#).expect("parses");
    let squared = power_flow(&doubling, 2).expect("powers stay representable");
    println!("doubling squared: {}", serialize_flow(&squared));

    // Powering a shift splits it into independent interleaved orbits.
    let shift = parse_flow(r#"{"type":"cyclic","base":5,"poly":[]}"#).expect("parses");
    let cubed = power_flow(&shift, 3).expect("powers stay representable");
    println!("shift over Z/5 cubed: {}", serialize_flow(&cubed));
}
