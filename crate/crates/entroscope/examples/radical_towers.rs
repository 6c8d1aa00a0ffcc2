//! The five torsion-theoretic radicals and their iterated towers.
//!
//! Each radical collects the points annihilated by a class of polynomials
//! in the map: powers of t (`O`, nilpotent), powers of t − 1 (`I`,
//! unipotent), t and cyclotomics (`Q`, quasi-periodic), monic polynomials
//! (`A`, pointwise integral), all nonzero polynomials (`W`, pointwise
//! algebraic). They always nest as O, I ⊆ Q ⊆ A ⊆ W.
//!
//! The one-step radicals O₁, I₁, Q₁ need not be idempotent; iterating them
//! climbs a tower whose union is the radical. The unitriangular matrix of
//! ones climbs exactly one axis per level.
//!
//! Run with `cargo run --example radical_towers`.

use entroscope::flows::parse_flow;
use entroscope::radicals::{radical, tower, RadicalKind};

fn main() {
    let documents = [
        ("doubling (Z, ×2)", r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#),
        ("finite shift over Z/6", r#"{"type":"cyclic","base":6,"poly":[]}"#),
        ("half flow Z[t]/(2t - 1)", r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#),
        ("mixed diag(1, 2)", r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,2]]}"#),
    ];
    for (label, doc) in documents {
        let flow = parse_flow(doc).expect("corpus documents parse");
        println!("{label}  [{}]", flow.iso_summary());
        for kind in RadicalKind::ALL {
            let desc = radical(&flow, kind).expect("squarefree bases");
            println!("  {}  {}", kind.letter(), desc.iso());
        }
        println!();
    }

    // The 5×5 truncation of the all-ones unitriangular automorphism: the
    // quasi-periodic tower adds one basis axis per level until it fills Z^5.
    let big = parse_flow(
        r#"{"type":"fg","rank":5,"relations":[],
            "matrix":[[1,1,1,1,1],[0,1,1,1,1],[0,0,1,1,1],[0,0,0,1,1],[0,0,0,0,1]]}"#,
    )
    .expect("document parses");
    println!("unitriangular ones on Z^5 — quasi-periodic tower");
    let chain = tower(&big, RadicalKind::QuasiPeriodic, 5).expect("torsion-free flow");
    for (n, level) in chain.iter().enumerate() {
        println!("  Q_{n}  {}", level.iso());
    }
}
