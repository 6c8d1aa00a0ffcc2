//! Certified Mahler measures of classic integer polynomials.
//!
//! The measure of `f = c·∏(t − λᵢ)` is `log|c| + Σ log max(1, |λᵢ|)`; it is
//! zero exactly for products of cyclotomic polynomials and powers of t
//! (up to sign), and its smallest known positive value is reached by
//! Lehmer's degree-10 polynomial.
//!
//! Run with `cargo run --example mahler_measures`.

use entroscope::intpoly::mahler::mahler;
use entroscope::IntPoly;

fn report(label: &str, poly: &IntPoly, precision: f64) {
    let value = mahler(poly, precision).expect("nonzero polynomial");
    println!("{label:<28} {poly}");
    println!("{:<28} {value}", "");
}

fn main() {
    // Golden-ratio growth: m(t² − t − 1) = log((1 + √5)/2).
    report("fibonacci", &IntPoly::from_i64s(&[-1, -1, 1]), 1e-9);

    // Doubling: the leading coefficient alone carries the measure.
    report("doubling 2t - 1", &IntPoly::from_i64s(&[-1, 2]), 1e-9);

    // Lehmer's polynomial, the conjectural minimum of positive measures.
    report(
        "lehmer",
        &IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]),
        1e-10,
    );

    // A cyclotomic product: every root lies on the unit circle, so the
    // measure vanishes exactly (Kronecker's theorem).
    let cyclotomic = IntPoly::from_i64s(&[1, 1, 1]) // t² + t + 1
        .mul(&IntPoly::from_i64s(&[-1, 1])) // t − 1
        .mul(&IntPoly::from_i64s(&[1, 0, 1])); // t² + 1
    report("cyclotomic product", &cyclotomic, 1e-9);

    // Content contributes log of the integer factor.
    report("3·(t - 1)", &IntPoly::from_i64s(&[-3, 3]), 1e-9);
}
