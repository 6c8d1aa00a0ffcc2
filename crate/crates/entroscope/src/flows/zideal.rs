//! Ideals of ℤ[t] with strong Gröbner bases.
//!
//! A cyclic module ℤ[t]/(c, f) needs exact answers to three questions that
//! naive mod-c / mod-f reduction gets wrong when the leading coefficient of
//! `f` is not invertible mod `c`: element equality, finiteness/order of the
//! quotient, and — crucially for trajectory counting — the full relation
//! lattice of a degree window. (Example: (4, 2t−1) is the unit ideal, since
//! (2t−1)(2t+1) ≡ −1 mod 4, which no bounded-degree reduction by 4 and
//! 2t−1 alone discovers.)
//!
//! A *strong* Gröbner basis G of an ideal I ⊆ ℤ[t] has, for every nonzero
//! x ∈ I, some g ∈ G with deg g ≤ deg x and lc(g) | lc(x). Floor-division
//! reduction by such a basis computes canonical normal forms, membership is
//! "normal form = 0", and the lattice I ∩ {deg < D} is spanned by the shifts
//! t^j·g with j + deg g < D — each reduction step stays inside the window.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::intpoly::IntPoly;

/// Strong Gröbner basis of an ideal of ℤ[t].
///
/// Invariants: generators sorted by strictly increasing degree, positive
/// leading coefficients strictly decreasing by divisibility, every generator
/// in normal form with respect to the others. The empty basis is the zero
/// ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZtIdealBasis {
    gens: Vec<IntPoly>,
}

impl ZtIdealBasis {
    /// Basis of the ideal generated by the given polynomials.
    #[must_use]
    pub fn new(generators: &[IntPoly]) -> Self {
        let mut basis: Vec<IntPoly> = Vec::new();
        let mut queue: Vec<IntPoly> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.normalize_sign().1)
            .collect();
        while let Some(p) = queue.pop() {
            let r = normal_form_wrt(&basis, &p);
            if r.is_zero() {
                continue;
            }
            let r = r.normalize_sign().1;
            for g in &basis {
                queue.push(s_combination(g, &r));
                queue.push(g_combination(g, &r));
            }
            basis.push(r);
            basis.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        }
        // Inter-reduce to the canonical minimal form.
        let mut passes = 0;
        loop {
            passes += 1;
            assert!(passes <= 10_000, "ideal inter-reduction failed to stabilize");
            let mut changed = false;
            let mut i = 0;
            while i < basis.len() {
                let g = basis.remove(i);
                let r = normal_form_wrt(&basis, &g);
                if r.is_zero() {
                    changed = true;
                    continue;
                }
                let r = r.normalize_sign().1;
                if r != g {
                    changed = true;
                }
                basis.insert(i, r);
                i += 1;
            }
            basis.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
            if !changed {
                break;
            }
        }
        ZtIdealBasis { gens: basis }
    }

    /// Basis of the defining ideal (c, f) of a cyclic module.
    #[must_use]
    pub fn for_module(c: &BigUint, f: &IntPoly) -> Self {
        let c_poly = IntPoly::constant(BigInt::from(c.clone()));
        ZtIdealBasis::new(&[c_poly, f.clone()])
    }

    /// The basis polynomials (sorted by degree).
    #[must_use]
    pub fn gens(&self) -> &[IntPoly] {
        &self.gens
    }

    #[must_use]
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Does the ideal contain 1 (so the quotient is trivial)?
    #[must_use]
    pub fn is_whole_ring(&self) -> bool {
        self.gens.first().is_some_and(IntPoly::is_one)
    }

    /// The positive generator of the contraction I ∩ ℤ, if nonzero.
    #[must_use]
    pub fn constant(&self) -> Option<BigUint> {
        let g = self.gens.first()?;
        if g.is_constant() {
            Some(g.lc().expect("nonzero").magnitude().clone())
        } else {
            None
        }
    }

    /// Canonical normal form: positions are reduced top-down, each leading
    /// coefficient into `[0, L_d)` for the least applicable basis leading
    /// coefficient `L_d`. Members reduce to zero.
    #[must_use]
    pub fn normal_form(&self, x: &IntPoly) -> IntPoly {
        if self.gens.is_empty() {
            return x.clone();
        }
        normal_form_wrt(&self.gens, x)
    }

    /// Ideal membership.
    #[must_use]
    pub fn contains(&self, x: &IntPoly) -> bool {
        self.normal_form(x).is_zero()
    }

    /// Order of the quotient ring ℤ[t]/I (`None` when infinite).
    ///
    /// Finite exactly when the ideal contains a positive constant and a monic
    /// polynomial; the order is then the product over degrees `d` below the
    /// monic degree of the least applicable leading coefficient.
    #[must_use]
    pub fn quotient_order(&self) -> Option<BigUint> {
        let first = self.gens.first()?;
        if !first.is_constant() {
            return None;
        }
        let top = self.gens.last().expect("nonempty");
        if !top.is_monic() {
            return None;
        }
        let mut order = BigUint::one();
        for d in 0..top.deg_or_0() {
            let g = self
                .gens
                .iter()
                .rev()
                .find(|g| g.deg_or_0() <= d)
                .expect("constant generator applies everywhere");
            order *= g.lc().expect("nonzero").magnitude();
        }
        Some(order)
    }

    /// Generators of the lattice I ∩ {polynomials of degree < window}, as
    /// little-endian coefficient vectors of length `window`: all shifts
    /// `t^j · g` with `j + deg g < window`.
    #[must_use]
    pub fn truncation_relations(&self, window: usize) -> Vec<Vec<BigInt>> {
        let mut rels = Vec::new();
        for g in &self.gens {
            let d = g.deg_or_0();
            if d >= window && !g.is_zero() {
                continue;
            }
            for j in 0..window - d {
                let mut v = vec![BigInt::zero(); window];
                for (i, c) in g.coeffs().iter().enumerate() {
                    v[j + i] = c.clone();
                }
                rels.push(v);
            }
        }
        rels
    }
}

/// Top-down floor-reduction of `x` by a degree-sorted basis.
fn normal_form_wrt(basis: &[IntPoly], x: &IntPoly) -> IntPoly {
    if basis.is_empty() || x.is_zero() {
        return x.clone();
    }
    let mut coeffs: Vec<BigInt> = x.coeffs().to_vec();
    let mut d = coeffs.len();
    while d > 0 {
        d -= 1;
        if coeffs[d].is_zero() {
            continue;
        }
        // Reduce by the applicable generator with the least leading
        // coefficient (ties to the higher degree). On an inter-reduced basis
        // that is simply the highest-degree generator with deg ≤ d, but
        // during construction several generators can share a degree, and
        // picking a larger coefficient would leave residues that a smaller
        // one still divides — stalling the completion loop.
        let Some(g) = basis
            .iter()
            .filter(|g| g.deg_or_0() <= d)
            .min_by(|a, b| {
                let la = a.lc().expect("basis elements are nonzero").magnitude();
                let lb = b.lc().expect("basis elements are nonzero").magnitude();
                la.cmp(lb).then(b.deg_or_0().cmp(&a.deg_or_0()))
            })
        else {
            continue;
        };
        let lc = g.lc().expect("basis elements are nonzero");
        let q = coeffs[d].div_floor(lc);
        if q.is_zero() {
            continue;
        }
        let shift = d - g.deg_or_0();
        for (i, c) in g.coeffs().iter().enumerate() {
            let delta = &q * c;
            coeffs[shift + i] -= delta;
        }
    }
    IntPoly::new(coeffs)
}

/// S-combination: cancel the leading terms of two polynomials via the lcm of
/// their leading coefficients.
fn s_combination(g: &IntPoly, h: &IntPoly) -> IntPoly {
    let (lo, hi) = if g.deg_or_0() <= h.deg_or_0() { (g, h) } else { (h, g) };
    let lc_lo = lo.lc().expect("nonzero");
    let lc_hi = hi.lc().expect("nonzero");
    let m = lc_lo.lcm(lc_hi);
    let a = m.div_floor(lc_hi);
    let b = m.div_floor(lc_lo);
    hi.scale(&a).sub(&lo.shift(hi.deg_or_0() - lo.deg_or_0()).scale(&b))
}

/// G-combination: achieve the gcd of the two leading coefficients at the
/// higher degree via a Bézout relation.
fn g_combination(g: &IntPoly, h: &IntPoly) -> IntPoly {
    let (lo, hi) = if g.deg_or_0() <= h.deg_or_0() { (g, h) } else { (h, g) };
    let lc_lo = lo.lc().expect("nonzero");
    let lc_hi = hi.lc().expect("nonzero");
    let e = lc_lo.extended_gcd(lc_hi);
    lo.shift(hi.deg_or_0() - lo.deg_or_0()).scale(&e.x).add(&hi.scale(&e.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn ideal(gens: &[&[i64]]) -> ZtIdealBasis {
        let polys: Vec<IntPoly> = gens.iter().map(|g| IntPoly::from_i64s(g)).collect();
        ZtIdealBasis::new(&polys)
    }

    #[test]
    fn unit_ideal_detected_from_hidden_inverse() {
        // (4, 2t−1) contains (2t−1)(2t+1) = 4t²−1 ≡ −1 (mod 4).
        let i = ideal(&[&[4], &[-1, 2]]);
        assert!(i.is_whole_ring());
        assert_eq!(i.quotient_order(), Some(BigUint::one()));
    }

    #[test]
    fn mixed_base_collapses_to_prime_part()  {
        // (6, 2t−1): mod 2 the poly is a unit, mod 3 it fixes t ≡ −1.
        let i = ideal(&[&[6], &[-1, 2]]);
        let gens: Vec<String> = i.gens().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, vec!["3", "t + 1"]);
        assert_eq!(i.quotient_order(), Some(BigUint::from(3u32)));
        // t ≡ 2 in the quotient.
        assert_eq!(i.normal_form(&IntPoly::t()), IntPoly::from_i64s(&[2]));
        assert!(i.contains(&IntPoly::from_i64s(&[-2, 1])));
    }

    #[test]
    fn principal_ideals_keep_their_generator() {
        let f = IntPoly::from_i64s(&[-1, -1, 1]);
        let i = ZtIdealBasis::new(&[f.clone()]);
        assert_eq!(i.gens(), &[f]);
        assert_eq!(i.quotient_order(), None); // ℤ² as a group
        let zero = ZtIdealBasis::new(&[]);
        assert!(zero.is_zero_ideal());
        assert_eq!(zero.normal_form(&IntPoly::t()), IntPoly::t());
    }

    #[test]
    fn normal_forms_are_canonical_and_additive_residues() {
        // (3, t² + 1): quotient has 9 elements a + bt, a,b ∈ {0,1,2}.
        let i = ideal(&[&[3], &[1, 0, 1]]);
        assert_eq!(i.quotient_order(), Some(BigUint::from(9u32)));
        let x = IntPoly::from_i64s(&[5, 7, 2, 1]); // reduce degree then mod 3
        let nf = i.normal_form(&x);
        assert!(nf.deg_or_0() < 2);
        for c in nf.coeffs() {
            assert!(!c.is_negative() && *c < BigInt::from(3));
        }
        // normal_form(x + member) = normal_form(x)
        let member = IntPoly::from_i64s(&[1, 0, 1]).mul(&IntPoly::from_i64s(&[4, 5]));
        assert_eq!(i.normal_form(&x.add(&member)), nf);
    }

    #[test]
    fn truncation_relations_cover_window_lattice() {
        // (4, 2t−1) truncated to any window contains 1 itself.
        let i = ideal(&[&[4], &[-1, 2]]);
        let rels = i.truncation_relations(3);
        assert!(rels.contains(&vec![
            BigInt::from(1),
            BigInt::from(0),
            BigInt::from(0)
        ]));
        // Principal (f): window 4 holds f and t·f for deg f = 2.
        let f = IntPoly::from_i64s(&[-1, -1, 1]);
        let p = ZtIdealBasis::new(&[f]);
        assert_eq!(p.truncation_relations(4).len(), 2);
        assert_eq!(p.truncation_relations(2).len(), 0);
    }

    #[test]
    fn non_squarefree_base_order() {
        // (4, 2t − 2) = (2(t−1), 4): quotient ℤ[t]/(4, 2t−2): normal forms
        // a + bt with a ∈ [0,4), b ∈ [0,2): order 8.
        let i = ideal(&[&[4], &[-2, 2]]);
        assert_eq!(i.quotient_order(), None); // no monic element: infinite
        // Add t² − 1 to make it finite: (4, 2t−2, t²−1).
        let j = ideal(&[&[4], &[-2, 2], &[-1, 0, 1]]);
        assert_eq!(j.quotient_order(), Some(BigUint::from(8u32)));
    }
}
