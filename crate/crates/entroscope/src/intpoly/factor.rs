//! Complete factorization over ℤ and class-based splitting of polynomials.
//!
//! The pipeline is classical: squarefree decomposition over ℤ, Berlekamp
//! factorization modulo a small good prime, linear Hensel lifting past a
//! Mignotte-style coefficient bound, then subset recombination with exact
//! trial division. Everything is deterministic — prime choice, factor order,
//! and subset enumeration are all fixed — so repeated runs agree bit for bit.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{is_cyclotomic_or_t, IntPoly};
use crate::error::{Error, Result};

/// Multiplicative classes of irreducible polynomials used to split a
/// polynomial into its "special" and "co-special" parts.
///
/// Each class is saturated and closed under divisors within the nonzero
/// polynomials; ordering is by inclusion:
/// `PowersOfT, PowersOfTMinusOne ⊂ CyclotomicOrT ⊂ Monic ⊂ AllNonzero`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorClass {
    /// `t` and its powers.
    PowersOfT,
    /// `t − 1` and its powers.
    PowersOfTMinusOne,
    /// Products of `t` and cyclotomic polynomials.
    CyclotomicOrT,
    /// Polynomials with leading coefficient `±1`.
    Monic,
    /// Every nonzero polynomial.
    AllNonzero,
}

impl FactorClass {
    /// Membership test for a primitive irreducible polynomial with positive
    /// leading coefficient (the shape produced by [`factor`]).
    #[must_use]
    pub fn contains_irreducible(self, q: &IntPoly) -> bool {
        match self {
            FactorClass::PowersOfT => q.is_t(),
            FactorClass::PowersOfTMinusOne => q == &IntPoly::from_i64s(&[-1, 1]),
            FactorClass::CyclotomicOrT => is_cyclotomic_or_t(q),
            FactorClass::Monic => q.is_monic(),
            FactorClass::AllNonzero => true,
        }
    }

    /// Short human label used in reports.
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            FactorClass::PowersOfT => "powers of t",
            FactorClass::PowersOfTMinusOne => "powers of t - 1",
            FactorClass::CyclotomicOrT => "cyclotomic or t",
            FactorClass::Monic => "monic",
            FactorClass::AllNonzero => "all nonzero",
        }
    }
}

/// Factorization of a nonzero integer polynomial:
/// `p = sign · content · ∏ factorᵢ^multᵢ` with primitive irreducible factors,
/// positive leading coefficients, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub content: BigUint,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together (used as a self-check).
    #[must_use]
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::constant(BigInt::from(self.content.clone()));
        if self.sign < 0 {
            acc = acc.neg();
        }
        for (q, m) in &self.factors {
            acc = acc.mul(&q.pow(*m));
        }
        acc
    }
}

/// Split of a polynomial along a factor class: `p = ±in_s · out_s`.
///
/// `in_s` collects the class factors (monic for every class except
/// [`FactorClass::AllNonzero`]); `out_s` carries the content and the
/// remaining factors, with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSplit {
    pub in_s: IntPoly,
    pub out_s: IntPoly,
}

/// Factors a nonzero integer polynomial completely.
///
/// # Errors
///
/// `Domain` for the zero polynomial; `Internal` if no usable reduction prime
/// exists below a generous cap (which would indicate a bug, not bad input).
pub fn factor(p: &IntPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    }
    let (sign, content, squarefree) = p.squarefree_decomposition()?;
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for (part, mult) in squarefree {
        for irr in factor_squarefree_primitive(&part)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by_key(|(q, _)| q.order_key());
    Ok(Factorization { sign, content, factors })
}

/// Splits `p` into its class part and co-class part (see [`SpecialSplit`]).
///
/// # Errors
///
/// `Domain` for the zero polynomial.
pub fn special_part(p: &IntPoly, class: FactorClass) -> Result<SpecialSplit> {
    if p.is_zero() {
        return Err(Error::Domain("special_part of the zero polynomial".into()));
    }
    if class == FactorClass::AllNonzero {
        // Everything nonzero is special: the whole polynomial (content
        // included) goes inside, up to sign.
        let (_, norm) = p.normalize_sign();
        return Ok(SpecialSplit { in_s: norm, out_s: IntPoly::one() });
    }
    let fac = factor(p)?;
    let mut in_s = IntPoly::one();
    let mut out_s = IntPoly::constant(BigInt::from(fac.content.clone()));
    for (q, m) in &fac.factors {
        let target = if class.contains_irreducible(q) { &mut in_s } else { &mut out_s };
        *target = target.mul(&q.pow(*m));
    }
    Ok(SpecialSplit { in_s, out_s })
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[t] for small primes.
// ---------------------------------------------------------------------------

/// Dense polynomial over `F_p` (little-endian, no leading zeros, `p` prime
/// and small enough that products fit in `u64`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly {
    pub(crate) p: u64,
    pub(crate) c: Vec<u64>,
}

impl ModPoly {
    pub(crate) fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in &mut c {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub(crate) fn from_intpoly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|a| a.mod_floor(&pb).to_u64().expect("residue fits"))
                .collect(),
        )
    }

    /// Lifts to ℤ[t] with coefficients in `[0, p)`.
    pub(crate) fn to_intpoly(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub(crate) fn zero(p: u64) -> Self {
        ModPoly { p, c: Vec::new() }
    }

    pub(crate) fn one(p: u64) -> Self {
        ModPoly { p, c: vec![1] }
    }

    pub(crate) fn constant(p: u64, a: u64) -> Self {
        ModPoly::new(p, vec![a])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub(crate) fn deg_or_0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub(crate) fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub(crate) fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub(crate) fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.c.len().max(rhs.c.len());
        ModPoly::new(
            self.p,
            (0..n).map(|i| self.coeff(i) + self.p - rhs.coeff(i) % self.p).collect(),
        )
    }

    pub(crate) fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        ModPoly::new(self.p, out)
    }

    pub(crate) fn scale(&self, a: u64) -> Self {
        ModPoly::new(self.p, self.c.iter().map(|&x| x * (a % self.p)).collect())
    }

    pub(crate) fn make_monic(&self) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub(crate) fn divrem(&self, d: &Self) -> (Self, Self) {
        debug_assert!(!d.is_zero());
        let p = self.p;
        let dn = d.degree().expect("nonzero divisor");
        if self.deg_or_0() < dn || self.is_zero() {
            return (ModPoly::zero(p), self.clone());
        }
        let dinv = inv_mod(d.lc(), p);
        let mut r = self.c.clone();
        let n = r.len() - 1;
        let mut q = vec![0u64; n - dn + 1];
        for k in (0..=n - dn).rev() {
            let top = r[k + dn] % p;
            if top == 0 {
                continue;
            }
            let f = top * dinv % p;
            q[k] = f;
            for (i, &dc) in d.c.iter().enumerate() {
                r[k + i] = (r[k + i] + p * p - f * dc % p) % p;
            }
        }
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub(crate) fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub(crate) fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·rhs = g`, `g` monic.
    pub(crate) fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let u = inv_mod(r0.lc(), p);
        (r0.scale(u), s0.scale(u), t0.scale(u))
    }

    pub(crate) fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        ModPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| a * (i as u64 % self.p) % self.p)
                .collect(),
        )
    }

    pub(crate) fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.deg_or_0() == 0;
        }
        self.gcd(&d).deg_or_0() == 0
    }

    /// `t^e mod self` by square-and-multiply.
    pub(crate) fn t_pow_mod(&self, e: u64) -> Self {
        let mut result = ModPoly::one(self.p).rem(self);
        let mut base = ModPoly::new(self.p, vec![0, 1]).rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        result
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p−2) mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

// ---------------------------------------------------------------------------
// Berlekamp factorization of a squarefree monic polynomial over F_p.
// ---------------------------------------------------------------------------

/// Factors a monic squarefree polynomial over `F_p` into monic irreducibles,
/// sorted by `(degree, coefficients)` for determinism.
pub(crate) fn berlekamp(f: &ModPoly) -> Vec<ModPoly> {
    let p = f.p;
    let n = f.degree().expect("nonzero input");
    if n == 1 {
        return vec![f.clone()];
    }
    // Frobenius matrix rows: row i = coefficients of t^(i·p) mod f.
    let tp = f.t_pow_mod(p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = ModPoly::one(p);
    for _ in 0..n {
        let mut row = vec![0u64; n];
        for (j, item) in row.iter_mut().enumerate() {
            *item = cur.coeff(j);
        }
        rows.push(row);
        cur = cur.mul(&tp).rem(f);
    }
    // Nullspace of (Q − I)ᵀ: vectors v with v·Q = v.
    let mut m = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let mut v = x % p;
            if i == j {
                v = (v + p - 1) % p;
            }
            m[j][i] = v; // transpose
        }
    }
    let basis = nullspace_mod(&mut m, p);
    let r = basis.len();
    debug_assert!(r >= 1);
    if r == 1 {
        return vec![f.make_monic()];
    }
    let mut factors = vec![f.make_monic()];
    'outer: for v in &basis {
        let h = ModPoly::new(p, v.clone());
        if h.deg_or_0() == 0 {
            continue; // the constant vector never splits anything
        }
        let mut next: Vec<ModPoly> = Vec::with_capacity(factors.len());
        for g in factors.drain(..) {
            if g.deg_or_0() <= 1 {
                next.push(g);
                continue;
            }
            let mut pieces = vec![g];
            for c in 0..p {
                if pieces.iter().all(|q| q.deg_or_0() <= 1) {
                    break;
                }
                let shifted = pieces
                    .iter()
                    .flat_map(|q| {
                        if q.deg_or_0() <= 1 {
                            return vec![q.clone()];
                        }
                        let d = q.gcd(&h.sub(&ModPoly::constant(p, c)));
                        if d.deg_or_0() == 0 || d.deg_or_0() == q.deg_or_0() {
                            vec![q.clone()]
                        } else {
                            let rest = q.divrem(&d).0.make_monic();
                            vec![d, rest]
                        }
                    })
                    .collect::<Vec<_>>();
                pieces = shifted;
            }
            next.extend(pieces);
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    factors.sort_by(|a, b| (a.c.len(), &a.c).cmp(&(b.c.len(), &b.c)));
    factors
}

/// Nullspace basis of a square matrix over F_p (destroys the input).
fn nullspace_mod(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0usize;
    for col in 0..n {
        if row >= n {
            break;
        }
        let Some(sel) = (row..n).find(|&i| m[i][col] % p != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = inv_mod(m[row][col] % p, p);
        for x in m[row].iter_mut() {
            *x = *x % p * inv % p;
        }
        for i in 0..n {
            if i != row && m[i][col] % p != 0 {
                let f = m[i][col] % p;
                for j in 0..n {
                    m[i][j] = (m[i][j] + p * p - f * m[row][j] % p) % p;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (col, piv) in pivot_of_col.iter().enumerate() {
            if let Some(r) = piv {
                v[col] = (p - m[*r][free] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting and recombination.
// ---------------------------------------------------------------------------

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Picks the smallest prime where `f` stays squarefree with unit leading
/// coefficient.
fn good_prime(f: &IntPoly) -> Result<u64> {
    let lc = f.lc().expect("nonzero input");
    let check = |p: u64| -> bool {
        if (lc % BigInt::from(p)).is_zero() {
            return false;
        }
        ModPoly::from_intpoly(f, p).is_squarefree()
    };
    for &p in &SMALL_PRIMES {
        if check(p) {
            return Ok(p);
        }
    }
    let mut p = 101u64;
    while p < 100_000 {
        if is_prime_u64(p) && check(p) {
            return Ok(p);
        }
        p += 2;
    }
    Err(Error::Internal("no usable reduction prime found".into()))
}

/// Factors a primitive squarefree polynomial with positive leading
/// coefficient and degree ≥ 1 into primitive irreducibles.
fn factor_squarefree_primitive(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = f.degree().expect("nonzero");
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    let p = good_prime(f)?;
    let lc = f.lc().expect("nonzero").clone();
    let fbar = ModPoly::from_intpoly(f, p).make_monic();
    let modular = berlekamp(&fbar);
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // Coefficient bound for candidate factors scaled by the leading
    // coefficient. The exponent is doubled relative to the usual Mignotte
    // bound so the bound stays valid for factors of partial quotients that
    // appear during recombination.
    let height = f
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .expect("nonzero");
    let sqrt_part = BigInt::from(((n as f64 + 1.0).sqrt().ceil()) as u64 + 1);
    let bound: BigInt =
        sqrt_part * (BigInt::one() << (2 * n)) * height * BigInt::from(lc.magnitude().clone());
    let mut modulus = BigInt::from(p);
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= p;
        k += 1;
    }
    let lifted = hensel_lift(f, p, k, &modular)?;
    Ok(recombine(f, lifted, &modulus))
}

/// Lifts the monic factorization of `f/lc(f)` from mod `p` to mod `p^k`
/// (linear lifting with a fixed Bézout basis).
fn hensel_lift(f: &IntPoly, p: u64, k: u32, modular: &[ModPoly]) -> Result<Vec<IntPoly>> {
    let r = modular.len();
    let pb = BigInt::from(p);
    let lc = f.lc().expect("nonzero");
    let lc_inv_mod_p = {
        let lbar = lc.mod_floor(&pb).to_u64().expect("fits");
        inv_mod(lbar, p)
    };
    // Bézout basis: u_i ≡ (∏_{j≠i} g_j)^{-1} mod g_i over F_p.
    let mut bezout: Vec<ModPoly> = Vec::with_capacity(r);
    for (i, gi) in modular.iter().enumerate() {
        let mut prod = ModPoly::one(p);
        for (j, gj) in modular.iter().enumerate() {
            if j != i {
                prod = prod.mul(gj).rem(gi);
            }
        }
        let (g, s, _) = prod.ext_gcd(gi);
        if !g.is_one_poly() {
            return Err(Error::Internal("modular factors are not pairwise coprime".into()));
        }
        bezout.push(s.rem(gi));
    }
    // Current lifts, coefficients kept in [0, p^level).
    let mut lifts: Vec<IntPoly> = modular.iter().map(ModPoly::to_intpoly).collect();
    let mut level = BigInt::from(p);
    for _ in 1..k {
        // Residual E = (f − lc·∏ lifts) / p^level, reduced mod p.
        let mut prod = IntPoly::constant(lc.clone());
        for g in &lifts {
            prod = prod.mul(g);
        }
        let residual = f.sub(&prod);
        let scaled = IntPoly::new(
            residual
                .coeffs()
                .iter()
                .map(|c| {
                    let (q, rem) = c.div_rem(&level);
                    debug_assert!(rem.is_zero(), "residual must vanish at current level");
                    q
                })
                .collect(),
        );
        let ebar = ModPoly::from_intpoly(&scaled, p).scale(lc_inv_mod_p);
        let next_level = &level * &pb;
        for (i, gi) in modular.iter().enumerate() {
            let delta = ebar.mul(&bezout[i]).rem(gi);
            let corr = delta.to_intpoly().scale(&level);
            lifts[i] = lifts[i].add(&corr);
        }
        level = next_level;
    }
    Ok(lifts)
}

impl ModPoly {
    fn is_one_poly(&self) -> bool {
        self.c == [1]
    }
}

/// Symmetric representative of `v` mod `m` in `(−m/2, m/2]`.
fn symmetric_mod(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Recombines lifted modular factors into true irreducible factors of `f`
/// by subset trial division.
fn recombine(f: &IntPoly, modular: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut remaining = modular;
    let mut current = f.clone();
    let mut out: Vec<IntPoly> = Vec::new();
    let mut size = 1usize;
    'grow: while 2 * size <= remaining.len() {
        let n = remaining.len();
        // Enumerate index subsets of the given size (bitmask order is
        // deterministic).
        let mut mask: u64 = (1u64 << size) - 1;
        let limit: u64 = 1u64 << n;
        while mask < limit {
            if mask.count_ones() as usize == size {
                let lc = current.lc().expect("nonzero").clone();
                let mut cand = IntPoly::constant(lc);
                for (i, g) in remaining.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        cand = cand.mul(g);
                        cand = IntPoly::new(
                            cand.coeffs().iter().map(|c| c.mod_floor(modulus)).collect(),
                        );
                    }
                }
                let cand = IntPoly::new(
                    cand.coeffs().iter().map(|c| symmetric_mod(c, modulus)).collect(),
                )
                .primitive_part()
                .normalize_sign()
                .1;
                if !cand.is_constant() {
                    if let Some(quot) = current.div_exact(&cand) {
                        out.push(cand);
                        current = quot.clone();
                        remaining = remaining
                            .into_iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> *i & 1 == 0)
                            .map(|(_, g)| g)
                            .collect();
                        continue 'grow;
                    }
                }
            }
            mask += 1;
        }
        size += 1;
    }
    if !current.is_constant() {
        out.push(current.primitive_part().normalize_sign().1);
    }
    out.sort_by_key(IntPoly::order_key);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(coeffs)
    }

    fn check_roundtrip(f: &IntPoly) {
        let fac = factor(f).unwrap();
        assert_eq!(fac.reconstruct(), *f, "reconstruction of {f}");
        for (q, _) in &fac.factors {
            assert!(q.lc().unwrap().is_positive());
            assert!(q.content().is_one(), "factor {q} not primitive");
        }
    }

    #[test]
    fn factors_products_of_linears() {
        let f = p(&[-1, 1]).mul(&p(&[1, 1])).scale(&BigInt::from(3));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.sign, 1);
        assert_eq!(fac.content, BigUint::from(3u32));
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        check_roundtrip(&f);
    }

    #[test]
    fn factors_nonmonic_products() {
        // (2t−1)(2t+1)(t−2)², negative sign
        let f = p(&[-1, 2]).mul(&p(&[1, 2])).mul(&p(&[-2, 1]).pow(2)).neg();
        let fac = factor(&f).unwrap();
        assert_eq!(fac.sign, -1);
        assert_eq!(
            fac.factors,
            vec![(p(&[-2, 1]), 2), (p(&[-1, 2]), 1), (p(&[1, 2]), 1)]
        );
        check_roundtrip(&f);
    }

    #[test]
    fn cyclotomic_product_t6_minus_1() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor(&f).unwrap();
        let degs: Vec<usize> = fac.factors.iter().map(|(q, _)| q.deg_or_0()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        check_roundtrip(&f);
    }

    #[test]
    fn irreducible_survives_recombination() {
        // t⁴ + 1 factors modulo every prime but is irreducible over ℤ.
        let f = p(&[1, 0, 0, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn lehmer_polynomial_is_irreducible() {
        let f = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
        check_roundtrip(&f);
    }

    #[test]
    fn constant_polynomials() {
        let fac = factor(&p(&[-12])).unwrap();
        assert_eq!(fac.sign, -1);
        assert_eq!(fac.content, BigUint::from(12u32));
        assert!(fac.factors.is_empty());
        assert!(factor(&IntPoly::zero()).is_err());
    }

    #[test]
    fn pure_t_and_content() {
        let f = p(&[0, 0, 3]); // 3t²
        let fac = factor(&f).unwrap();
        assert_eq!(fac.content, BigUint::from(3u32));
        assert_eq!(fac.factors, vec![(p(&[0, 1]), 2)]);
    }

    #[test]
    fn special_split_by_class() {
        let f = p(&[0, 0, 3]); // 3t²
        let s = special_part(&f, FactorClass::PowersOfT).unwrap();
        assert_eq!(s.in_s, p(&[0, 0, 1]));
        assert_eq!(s.out_s, p(&[3]));

        let s = special_part(&f, FactorClass::PowersOfTMinusOne).unwrap();
        assert_eq!(s.in_s, IntPoly::one());
        assert_eq!(s.out_s, f);

        // (t−1)·t·(2t−1): splits differently per class.
        let g = p(&[-1, 1]).mul(&p(&[0, 1])).mul(&p(&[-1, 2]));
        let s = special_part(&g, FactorClass::CyclotomicOrT).unwrap();
        assert_eq!(s.in_s, p(&[-1, 1]).mul(&p(&[0, 1])));
        assert_eq!(s.out_s, p(&[-1, 2]));
        let s = special_part(&g, FactorClass::Monic).unwrap();
        assert_eq!(s.out_s, p(&[-1, 2]));
        let s = special_part(&g, FactorClass::AllNonzero).unwrap();
        assert_eq!(s.out_s, IntPoly::one());
        assert_eq!(s.in_s, g);
    }

    #[test]
    fn special_split_keeps_content_out() {
        // 6·(t−1)² with class PowersOfTMinusOne: content stays outside.
        let f = p(&[-1, 1]).pow(2).scale(&BigInt::from(6));
        let s = special_part(&f, FactorClass::PowersOfTMinusOne).unwrap();
        assert_eq!(s.in_s, p(&[-1, 1]).pow(2));
        assert_eq!(s.out_s, p(&[6]));
    }

    #[test]
    fn berlekamp_small_cases() {
        // t² + 1 mod 5 = (t+2)(t+3)
        let f = ModPoly::new(5, vec![1, 0, 1]);
        let fs = berlekamp(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].mul(&fs[1]), f);
        // t² + 1 mod 3 irreducible
        let g = ModPoly::new(3, vec![1, 0, 1]);
        assert_eq!(berlekamp(&g).len(), 1);
    }

    #[test]
    fn random_style_stress_products() {
        // A handful of fixed multi-factor products with repeated factors.
        let cases: Vec<IntPoly> = vec![
            p(&[1, 3]).mul(&p(&[2, 1])).mul(&p(&[1, 1, 1])),
            p(&[-5, 2]).pow(3).mul(&p(&[7, 0, 1])),
            p(&[1, 2, 3, 4]).mul(&p(&[-3, 0, 2])),
            p(&[2, 0, 0, 1]).mul(&p(&[2, 0, 0, 1])),
            p(&[-1, -1, 1]).mul(&p(&[1, -3, 1])).scale(&BigInt::from(-30)),
        ];
        for f in cases {
            check_roundtrip(&f);
        }
    }
}
