//! Exact arithmetic on finitely generated abelian groups.
//!
//! Groups are integer lattices with relations; subgroups live as canonical
//! Hermite bases, and quotients reduce to invariant factors through the
//! Smith normal form. Everything downstream — invariant submodules,
//! radicals, Pinsker subgroups — stands on these two normal forms.
//!
//! Run with `cargo run --example lattice_arithmetic`.

use entroscope::abgroup::{FgAbGroup, IMat};

fn main() {
    // Smith normal form: diag(d₁ | d₂ | …) with tracked unimodular
    // transforms U·A·V = D.
    let a = IMat::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
    let snf = a.snf();
    println!("invariant factors of {a:?}");
    println!("  d = {:?}  rank = {}", snf.d, snf.rank);

    // The quotient Z³ / columns(A) read off those factors.
    let free = FgAbGroup::free(3);
    let image = free.subgroup_from_matrix(&a);
    let quotient = free.quotient(&image);
    println!("  Z^3 / A·Z^3 = {}", quotient.iso_summary());
    println!();

    // Kernel lattices: solve A·x = 0 over the integers.
    let singular = IMat::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
    let kernel = singular.kernel();
    println!("integer kernel of a rank-1 matrix (Hermite basis columns):");
    println!("{kernel:?}");
    println!();

    // Groups with relations: Z ⊕ Z/12, its torsion subgroup, and a cyclic
    // subgroup together with the quotient it cuts.
    let relations = IMat::from_cols(2, vec![vec![0.into(), 12.into()]]);
    let group = FgAbGroup::new(2, &relations);
    println!("group G = {}", group.iso_summary());
    let torsion = group.torsion_subgroup();
    let order = torsion.order_in(&group).expect("torsion subgroups are finite");
    println!("  |t(G)|       = {order}");
    let diagonal = group.subgroup(&[vec![2.into(), 3.into()]]);
    println!("  G / <(2, 3)> = {}", group.quotient(&diagonal).iso_summary());
}
