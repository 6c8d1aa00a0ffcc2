//! Seeded flow samplers shared by the integration suites.
//!
//! The bounds mirror the built-in harness: small ranks, low degrees, single
//! digit coefficients, and squarefree cyclic bases, which keeps every sampled
//! flow inside the class where the exact backends are total.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use entroscope::abgroup::{FgAbGroup, IMat, Subgroup};
use entroscope::flows::{CyclicFlow, FgFlow, Flow, FlowPart};
use entroscope::IntPoly;

/// Squarefree bases for cyclic parts.
pub const BASES: [u64; 6] = [2, 3, 5, 6, 7, 10];

/// A nonzero polynomial of degree between 1 and `max_deg`.
pub fn sample_poly(rng: &mut ChaCha8Rng, max_deg: usize, max_coeff: i64) -> IntPoly {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let mut coeffs: Vec<BigInt> =
            (0..deg).map(|_| BigInt::from(rng.gen_range(-max_coeff..=max_coeff))).collect();
        let mut lead = 0;
        while lead == 0 {
            lead = rng.gen_range(-max_coeff..=max_coeff);
        }
        coeffs.push(BigInt::from(lead));
        let p = IntPoly::new(coeffs);
        if p.degree().is_some_and(|d| d >= 1) {
            return p;
        }
    }
}

/// A finitely generated flow with diagonal relations; `finite` forces every
/// diagonal entry nonzero so the group is finite (order at most 6³).
pub fn sample_fg(rng: &mut ChaCha8Rng, finite: bool) -> FgFlow {
    const DIAG: [i64; 7] = [0, 0, 0, 2, 3, 4, 6];
    loop {
        let rank = rng.gen_range(1..=3);
        let diag: Vec<i64> = (0..rank)
            .map(|_| {
                if finite {
                    DIAG[rng.gen_range(3..DIAG.len())]
                } else {
                    DIAG[rng.gen_range(0..DIAG.len())]
                }
            })
            .collect();
        let mut m = IMat::zero(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                let entry = match (diag[i], diag[j]) {
                    (0, dj) if dj != 0 => 0,
                    (di, dj) if di != 0 && dj != 0 => {
                        let step = di / gcd_i64(di, dj);
                        step * rng.gen_range(-2..=2)
                    }
                    _ => rng.gen_range(-3..=3),
                };
                m.set(i, j, BigInt::from(entry));
            }
        }
        let cols: Vec<Vec<BigInt>> = (0..rank)
            .filter(|&j| diag[j] != 0)
            .map(|j| {
                (0..rank)
                    .map(|i| if i == j { BigInt::from(diag[j]) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let group = FgAbGroup::new(rank, &IMat::from_cols(rank, cols));
        if let Ok(flow) = FgFlow::new(group, m) {
            return flow;
        }
    }
}

/// A cyclic flow; torsion bases come from the squarefree list, and base-zero
/// parts always carry a nonconstant polynomial (so canonicalization cannot
/// fold a non-squarefree constant into the base).
pub fn sample_cyclic(rng: &mut ChaCha8Rng, torsion_only: bool) -> CyclicFlow {
    if torsion_only || rng.gen_bool(0.6) {
        let base = BASES[rng.gen_range(0..BASES.len())];
        let poly = if rng.gen_bool(0.3) { IntPoly::zero() } else { sample_poly(rng, 3, 5) };
        CyclicFlow::new(BigUint::from(base), poly)
    } else {
        CyclicFlow::new(BigUint::zero(), sample_poly(rng, 3, 5))
    }
}

/// A single-part flow drawn from the full representable mix.
pub fn sample_flow(rng: &mut ChaCha8Rng) -> Flow {
    match rng.gen_range(0..4) {
        0 => Flow::single(FlowPart::Fg(sample_fg(rng, false))),
        1 => Flow::single(FlowPart::Fg(sample_fg(rng, true))),
        2 => Flow::single(FlowPart::Cyclic(sample_cyclic(rng, true))),
        _ => Flow::single(FlowPart::Cyclic(sample_cyclic(rng, false))),
    }
}

/// The φ-invariant subgroup generated by the forward orbit of `v`.
pub fn orbit_closure(flow: &FgFlow, v: Vec<BigInt>) -> Subgroup {
    let mut gens = vec![v.clone()];
    let mut cur = flow.group().subgroup(&gens);
    let mut x = v;
    loop {
        x = flow.group().residue(&flow.matrix().mul_vec(&x));
        if cur.contains(&x) {
            return cur;
        }
        gens.push(x.clone());
        cur = flow.group().subgroup(&gens);
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
