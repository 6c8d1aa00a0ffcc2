//! Exact arithmetic on univariate integer polynomials.
//!
//! [`IntPoly`] stores little-endian coefficients (index = exponent) with no
//! trailing zero limbs, so the zero polynomial is the empty vector. Everything
//! downstream — factorization, Mahler measures, characteristic polynomials,
//! cyclic-module calculus — runs on this one representation.
//!
//! The submodules provide:
//! * [`factor`] — complete factorization over ℤ plus class-based splitting,
//! * [`mahler`] — certified Mahler measure with escalating precision,
//! * [`bigfloat`] — the fixed-point multiprecision floats behind the
//!   certification.

pub(crate) mod bigfloat;
pub(crate) mod factor;
pub mod mahler;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are little-endian: `coeffs()[i]` multiplies `t^i`. The
/// internal vector never has a zero leading limb, so `degree()` is
/// `coeffs().len() - 1` whenever the polynomial is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from little-endian coefficients, trimming zeros.
    #[must_use]
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers.
    #[must_use]
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero polynomial.
    #[must_use]
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    #[must_use]
    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// A constant polynomial.
    #[must_use]
    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial `t`.
    #[must_use]
    pub fn t() -> Self {
        IntPoly::monomial(1, BigInt::one())
    }

    /// The monomial `c · t^k`.
    #[must_use]
    pub fn monomial(k: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// Little-endian coefficient slice (empty for the zero polynomial).
    #[must_use]
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    #[must_use]
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the convention that the zero polynomial has degree 0.
    #[must_use]
    pub fn deg_or_0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    #[must_use]
    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    #[must_use]
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// True for monic polynomials (leading coefficient exactly 1).
    #[must_use]
    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(One::is_one)
    }

    /// True exactly for the monomial `t`.
    #[must_use]
    pub fn is_t(&self) -> bool {
        self.coeffs.len() == 2 && self.coeffs[0].is_zero() && self.coeffs[1].is_one()
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::new(out)
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::new(out)
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Multiplies by the scalar `c`.
    #[must_use]
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k` (shift of coefficients).
    #[must_use]
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Raises to the `k`-th power by repeated multiplication.
    #[must_use]
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at an integer point.
    #[must_use]
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    #[must_use]
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Content: the gcd of coefficient magnitudes (0 for the zero polynomial).
    #[must_use]
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for c in &self.coeffs {
            g = g.gcd(c.magnitude());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with the sign of the original leading coefficient.
    ///
    /// The zero polynomial is its own primitive part.
    #[must_use]
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let c = BigInt::from(c);
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Splits into `(sign, polynomial with positive leading coefficient)`.
    ///
    /// The zero polynomial reports sign `+1`.
    #[must_use]
    pub fn normalize_sign(&self) -> (i8, Self) {
        match self.lc() {
            Some(l) if l.is_negative() => (-1, self.neg()),
            _ => (1, self.clone()),
        }
    }

    /// Exact division: `Some(q)` with `self = q · d`, or `None` when `d` does
    /// not divide `self` over ℤ (including division by zero).
    #[must_use]
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dn = d.degree().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let n = rem.len() - 1;
        if n < dn {
            return None;
        }
        let dl = d.lc().expect("nonzero divisor");
        let mut q = vec![BigInt::zero(); n - dn + 1];
        for k in (0..=n - dn).rev() {
            let top = rem[k + dn].clone();
            if top.is_zero() {
                continue;
            }
            let (quot, r) = top.div_rem(dl);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &quot * dc;
            }
            q[k] = quot;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// True when `d` divides `self` over ℤ.
    #[must_use]
    pub fn divides(d: &Self, f: &Self) -> bool {
        f.div_exact(d).is_some()
    }

    /// Pseudo-remainder: the remainder of `lc(d)^(deg f − deg d + 1) · f`
    /// divided by `d`. Requires `d` nonzero and `deg f ≥ deg d`.
    #[must_use]
    fn pseudo_rem(f: &Self, d: &Self) -> Self {
        let dn = d.degree().expect("nonzero divisor");
        let dl = d.lc().expect("nonzero divisor").clone();
        let mut r = f.clone();
        while let Some(rn) = r.degree() {
            if rn < dn {
                break;
            }
            let top = r.lc().expect("nonzero").clone();
            // r ← lc(d)·r − top·t^(rn−dn)·d  keeps everything integral.
            let mut next = r.scale(&dl);
            let sub = d.shift(rn - dn).scale(&top);
            next = next.sub(&sub);
            r = next;
        }
        r
    }

    /// Greatest common divisor in the UFD ℤ[t]: includes the content gcd,
    /// result has positive leading coefficient (gcd(0,0) = 0).
    #[must_use]
    pub fn gcd(f: &Self, g: &Self) -> Self {
        if f.is_zero() {
            return g.normalize_sign().1;
        }
        if g.is_zero() {
            return f.normalize_sign().1;
        }
        let content = BigInt::from(f.content().gcd(&g.content()));
        let mut a = f.primitive_part();
        let mut b = g.primitive_part();
        if a.deg_or_0() < b.deg_or_0() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = IntPoly::pseudo_rem(&a, &b).primitive_part();
            a = b;
            b = r;
        }
        a.normalize_sign().1.scale(&content)
    }

    /// Least common multiple, normalized to positive leading coefficient.
    #[must_use]
    pub fn lcm(f: &Self, g: &Self) -> Self {
        if f.is_zero() || g.is_zero() {
            return IntPoly::zero();
        }
        let d = IntPoly::gcd(f, g);
        f.mul(g)
            .div_exact(&d)
            .expect("gcd divides the product")
            .normalize_sign()
            .1
    }

    /// Squarefree decomposition of a nonzero polynomial: returns
    /// `(sign, content, parts)` where `parts` lists primitive squarefree
    /// polynomials with their multiplicities, pairwise coprime, and
    /// `p = sign · content · ∏ partᵢ^multᵢ`.
    ///
    /// # Errors
    ///
    /// `Domain` for the zero polynomial.
    pub fn squarefree_decomposition(&self) -> Result<(i8, BigUint, Vec<(IntPoly, u32)>)> {
        if self.is_zero() {
            return Err(Error::Domain(
                "squarefree decomposition of the zero polynomial".into(),
            ));
        }
        let content = self.content();
        let (sign, p) = self.primitive_part().normalize_sign();
        if p.is_constant() {
            return Ok((sign, content, Vec::new()));
        }
        // Musser's algorithm on the primitive part: peel off the product of
        // irreducibles at each exact multiplicity level.
        let mut out: Vec<(IntPoly, u32)> = Vec::new();
        let mut g = IntPoly::gcd(&p, &p.derivative());
        let mut p1 = p.div_exact(&g).expect("gcd divides").normalize_sign().1;
        let mut i: u32 = 1;
        while !p1.is_constant() {
            let g2 = IntPoly::gcd(&p1, &g);
            let level = p1.div_exact(&g2).expect("gcd divides").normalize_sign().1;
            if !level.is_constant() {
                out.push((level, i));
            }
            p1 = g2;
            g = g.div_exact(&p1).expect("exact by construction").normalize_sign().1;
            i += 1;
        }
        Ok((sign, content, out))
    }

    /// Canonical comparison key used to order factor lists deterministically.
    #[must_use]
    pub fn order_key(&self) -> (usize, Vec<BigInt>) {
        (self.coeffs.len(), self.coeffs.iter().rev().cloned().collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Human form such as `t^2 - t - 1`; the zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if i >= 1 {
                if show_coeff {
                    write!(f, "·")?;
                }
                write!(f, "t")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Fraction-free Bareiss determinant over ℤ[t].
///
/// Works for any square matrix of polynomials; used for characteristic
/// polynomials (`det(tI − A)`) and the Sylvester resultants behind
/// [`power_poly`]. All divisions are exact by Bareiss' identity.
#[must_use]
pub fn det_bareiss_poly(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign = 1i8;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return IntPoly::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Resultant of two integer polynomials (a plain integer).
///
/// # Errors
///
/// `Domain` when either argument is zero.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("resultant of the zero polynomial".into()));
    }
    let fe: Vec<IntPoly> = f.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
    let ge: Vec<IntPoly> = g.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
    let det = det_bareiss_poly(sylvester(&fe, &ge));
    Ok(det.coeff(0))
}

/// Builds the Sylvester matrix of two polynomials given by little-endian
/// coefficient vectors over ℤ[t] (degrees are `len − 1`; callers pass
/// nonempty vectors).
fn sylvester(f: &[IntPoly], g: &[IntPoly]) -> Vec<Vec<IntPoly>> {
    let n = f.len() - 1;
    let k = g.len() - 1;
    let size = n + k;
    let mut m = vec![vec![IntPoly::zero(); size]; size];
    // k rows of f coefficients (big-endian), shifted.
    for row in 0..k {
        for (i, c) in f.iter().rev().enumerate() {
            m[row][row + i] = c.clone();
        }
    }
    // n rows of g coefficients (big-endian), shifted.
    for row in 0..n {
        for (i, c) in g.iter().rev().enumerate() {
            m[k + row][row + i] = c.clone();
        }
    }
    m
}

/// The polynomial whose roots are the `k`-th powers of the roots of `f`,
/// with leading coefficient `±lc(f)^k`: the resultant
/// `Res_y(f(y), t − y^k)` computed fraction-free.
///
/// `power_poly(f, 1) = f`, constants map to their `k`-th power.
///
/// # Errors
///
/// `Domain` when `f` is zero or `k = 0`.
pub fn power_poly(f: &IntPoly, k: u32) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(Error::Domain("power_poly of the zero polynomial".into()));
    }
    if k == 0 {
        return Err(Error::Domain("power_poly requires k ≥ 1".into()));
    }
    if k == 1 {
        return Ok(f.clone());
    }
    if f.is_constant() {
        let mut c = IntPoly::one();
        for _ in 0..k {
            c = c.mul(f);
        }
        return Ok(c);
    }
    // h(y) = t − y^k as a polynomial in y with coefficients in ℤ[t].
    let mut h = vec![IntPoly::zero(); k as usize + 1];
    h[0] = IntPoly::t();
    h[k as usize] = IntPoly::constant(BigInt::from(-1));
    let fe: Vec<IntPoly> = f.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
    let res = det_bareiss_poly(sylvester(&fe, &h));
    // Normalize so the leading coefficient is +lc(f)^k (the resultant is
    // determined up to the sign bookkeeping of the Sylvester layout).
    let want_positive = !f.lc().expect("nonzero").is_negative() || k % 2 == 0;
    let got_positive = !res.lc().expect("resultant of nonzero polys is nonzero").is_negative();
    Ok(if want_positive == got_positive { res } else { res.neg() })
}

/// Euler's totient for small arguments.
#[must_use]
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `lcm{d ≥ 1 : φ(d) ≤ bound}` — the exponent that annihilates every root of
/// unity whose degree over ℚ is at most `bound` (1 when `bound = 0`).
#[must_use]
pub fn cyclotomic_order_lcm(bound: u64) -> BigUint {
    let mut l = BigUint::one();
    if bound == 0 {
        return l;
    }
    // φ(d) ≥ √(d/2), so d ≤ 2·bound² + 2 exhausts all candidates.
    for d in 1..=(2 * bound * bound + 2) {
        if euler_phi(d) <= bound {
            l = l.lcm(&BigUint::from(d));
        }
    }
    l
}

/// `t^e mod q` for monic `q`, by square-and-multiply on polynomials.
#[must_use]
fn t_power_mod(q: &IntPoly, e: &BigUint) -> IntPoly {
    debug_assert!(q.is_monic() && q.deg_or_0() >= 1);
    let reduce = |p: &IntPoly| -> IntPoly {
        // Plain division by a monic modulus.
        let dn = q.degree().expect("monic modulus");
        let mut r = p.coeffs().to_vec();
        while r.len() > dn {
            let top = r.last().expect("nonempty").clone();
            let k = r.len() - 1 - dn;
            if !top.is_zero() {
                for (i, qc) in q.coeffs().iter().enumerate() {
                    r[k + i] -= &top * qc;
                }
            }
            r.pop();
        }
        IntPoly::new(r)
    };
    let mut result = IntPoly::one();
    let mut base = reduce(&IntPoly::t());
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = reduce(&result.mul(&base));
        }
        if i + 1 < bits {
            base = reduce(&base.mul(&base));
        }
    }
    result
}

/// Kronecker test: is `q` the monomial `t` or a cyclotomic polynomial?
///
/// Intended for irreducible `q`; the test is "monic and divides `t^L − 1`"
/// with `L = lcm{d : φ(d) ≤ deg q}`, evaluated as `t^L ≡ 1 (mod q)`.
#[must_use]
pub fn is_cyclotomic_or_t(q: &IntPoly) -> bool {
    if q.is_t() {
        return true;
    }
    if !q.is_monic() || q.is_constant() {
        return false;
    }
    if !q.coeff(0).magnitude().is_one() {
        // A cyclotomic polynomial has constant term ±1.
        return false;
    }
    let l = cyclotomic_order_lcm(q.deg_or_0() as u64);
    t_power_mod(q, &l).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(coeffs)
    }

    #[test]
    fn normalization_trims_leading_zeros() {
        let f = IntPoly::new(vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
        assert_eq!(f.degree(), Some(0));
        assert!(IntPoly::from_i64s(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn mul_and_eval_agree() {
        let f = p(&[-1, -1, 1]); // t² − t − 1
        let g = p(&[2, 0, 1]); // t² + 2
        let h = f.mul(&g);
        let x = BigInt::from(7);
        assert_eq!(h.eval(&x), f.eval(&x) * g.eval(&x));
    }

    #[test]
    fn exact_division_detects_failure() {
        let f = p(&[-1, 0, 1]); // (t−1)(t+1)
        assert_eq!(f.div_exact(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(f.div_exact(&p(&[-1, 2])), None);
        assert_eq!(f.div_exact(&IntPoly::zero()), None);
    }

    #[test]
    fn gcd_includes_content() {
        let f = p(&[4, 4]); // 4(t+1)
        let g = p(&[-6, 0, 6]); // 6(t−1)(t+1)
        assert_eq!(IntPoly::gcd(&f, &g), p(&[2, 2]));
        assert_eq!(IntPoly::gcd(&IntPoly::zero(), &p(&[0, -3])), p(&[0, 3]));
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // 12·(t−1)²·(t+2)³, negated
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]).pow(3)).scale(&BigInt::from(-12));
        let (sign, content, parts) = f.squarefree_decomposition().unwrap();
        assert_eq!(sign, -1);
        assert_eq!(content, BigUint::from(12u32));
        assert_eq!(parts, vec![(p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn power_poly_matches_known_values() {
        assert_eq!(power_poly(&p(&[-1, 2]), 2).unwrap(), p(&[-1, 4]));
        assert_eq!(power_poly(&p(&[-1, -1, 1]), 2).unwrap(), p(&[1, -3, 1]));
        assert_eq!(power_poly(&p(&[5]), 3).unwrap(), p(&[125]));
        assert_eq!(power_poly(&p(&[-1, -1, 1]), 1).unwrap(), p(&[-1, -1, 1]));
    }

    #[test]
    fn power_poly_degree_and_lc() {
        let f = p(&[3, 1, 0, 2]); // 2t³ + t + 3
        let g = power_poly(&f, 3).unwrap();
        assert_eq!(g.degree(), f.degree());
        assert_eq!(g.lc().unwrap(), &BigInt::from(8)); // 2³
    }

    #[test]
    fn resultant_of_coprime_is_nonzero() {
        let r = resultant(&p(&[-1, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(r, BigInt::from(2)); // Res(t−1, t+1) = 2
    }

    #[test]
    fn cyclotomic_detection() {
        assert!(is_cyclotomic_or_t(&p(&[0, 1]))); // t
        assert!(is_cyclotomic_or_t(&p(&[-1, 1]))); // t − 1
        assert!(is_cyclotomic_or_t(&p(&[1, 1]))); // t + 1
        assert!(is_cyclotomic_or_t(&p(&[1, 1, 1]))); // t² + t + 1
        assert!(is_cyclotomic_or_t(&p(&[1, 0, 1]))); // t² + 1
        assert!(is_cyclotomic_or_t(&p(&[1, -1, 1]))); // t² − t + 1 (order 6)
        assert!(is_cyclotomic_or_t(&p(&[1, 1, 1, 1, 1]))); // Φ₅
        assert!(!is_cyclotomic_or_t(&p(&[-1, -1, 1]))); // golden ratio
        assert!(!is_cyclotomic_or_t(&p(&[-1, 2]))); // not monic
        assert!(!is_cyclotomic_or_t(&p(&[-2, 1]))); // t − 2
        assert!(!is_cyclotomic_or_t(&p(&[1, 2, 1]))); // (t+1)² not irreducible-monic-cyc
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(13), 12);
        assert_eq!(cyclotomic_order_lcm(1), BigUint::from(2u32)); // d ∈ {1, 2}
        assert_eq!(cyclotomic_order_lcm(2), BigUint::from(12u32)); // {1..4, 6}
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-1, -1, 1]).to_string(), "t^2 - t - 1");
        assert_eq!(p(&[0, 2]).to_string(), "2·t");
        assert_eq!(p(&[5]).to_string(), "5");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }
}
