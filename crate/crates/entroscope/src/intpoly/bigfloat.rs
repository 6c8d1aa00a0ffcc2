//! Minimal arbitrary-precision binary floating point, just enough for
//! certified root isolation.
//!
//! A [`BigFloat`] is `mant · 2^exp` with a `BigInt` mantissa. Every operation
//! takes an explicit working precision (mantissa bits) and rounds to nearest;
//! the root certification downstream never trusts these digits blindly — it
//! re-derives rigorous error radii from residuals — so faithful rounding is
//! all that is required here.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

/// Binary floating-point number `mant · 2^exp`.
///
/// Zero is canonically `{mant: 0, exp: 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    #[must_use]
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    #[must_use]
    pub fn from_bigint(n: &BigInt) -> Self {
        BigFloat { mant: n.clone(), exp: 0 }.normalized_exact()
    }

    #[must_use]
    pub fn from_i64(n: i64) -> Self {
        BigFloat::from_bigint(&BigInt::from(n))
    }

    /// Converts an `f64`; non-finite inputs and zero map to zero.
    #[must_use]
    pub fn from_f64(x: f64) -> Self {
        if !x.is_finite() || x == 0.0 {
            return BigFloat::zero();
        }
        // Scale into a 53-bit integer mantissa.
        let bits = x.abs().log2().floor() as i64;
        let shift = 52 - bits;
        let scaled = (x * (2.0f64).powi(shift as i32)).round();
        let mant = BigInt::from(scaled as i128);
        BigFloat { mant, exp: -shift }.normalized_exact()
    }

    fn normalized_exact(mut self) -> Self {
        if self.mant.is_zero() {
            return BigFloat::zero();
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    /// Rounds the mantissa to at most `prec` bits (round half away from zero).
    #[must_use]
    fn rounded(mut self, prec: u32) -> Self {
        if self.mant.is_zero() {
            return BigFloat::zero();
        }
        let bits = self.mant.bits();
        if bits <= u64::from(prec) {
            return self.normalized_exact();
        }
        let drop = bits - u64::from(prec);
        let neg = self.mant.is_negative();
        let mut mag = self.mant.magnitude().clone();
        let half = BigUint::one() << (drop - 1);
        mag = (mag + half) >> drop;
        self.mant = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
        self.exp += drop as i64;
        self.normalized_exact()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }

    #[must_use]
    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    #[must_use]
    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return rhs.clone().rounded(prec);
        }
        if rhs.is_zero() {
            return self.clone().rounded(prec);
        }
        let (lo, hi) = if self.exp <= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = (hi.exp - lo.exp) as u64;
        // Cap the alignment shift: when the operands' scales are wildly
        // apart the small one only perturbs rounding, so widen by the
        // precision plus a guard margin at most.
        let cap = u64::from(prec) + hi.mant.bits() + 8;
        if shift > cap {
            return hi.clone().rounded(prec);
        }
        let mant = (&hi.mant << shift) + &lo.mant;
        BigFloat { mant, exp: lo.exp }.rounded(prec)
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        self.add(&rhs.neg(), prec)
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return BigFloat::zero();
        }
        BigFloat { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp }.rounded(prec)
    }

    /// Quotient to `prec` significant bits; division by zero yields zero
    /// (callers guard against it, this keeps the hot loop panic-free).
    #[must_use]
    pub fn div(&self, rhs: &Self, prec: u32) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return BigFloat::zero();
        }
        let shift = u64::from(prec) + rhs.mant.bits() + 2;
        let num = &self.mant << shift;
        let mant = num / &rhs.mant;
        BigFloat { mant, exp: self.exp - rhs.exp - shift as i64 }.rounded(prec)
    }

    /// Square root of a non-negative value to `prec` significant bits.
    #[must_use]
    pub fn sqrt(&self, prec: u32) -> Self {
        if self.is_zero() {
            return BigFloat::zero();
        }
        debug_assert!(!self.mant.is_negative());
        // Shift so the mantissa carries ~2·prec bits and the exponent is even.
        let bits = self.mant.bits();
        let target = 2 * (u64::from(prec) + 2);
        let mut extra = target.saturating_sub(bits) as i64;
        if (self.exp - extra) % 2 != 0 {
            extra += 1;
        }
        let mag = self.mant.magnitude() << extra as u64;
        let root = mag.sqrt();
        BigFloat { mant: BigInt::from(root), exp: (self.exp - extra) / 2 }.rounded(prec)
    }

    /// Exact comparison of absolute values.
    #[must_use]
    pub fn cmp_abs(&self, rhs: &Self) -> std::cmp::Ordering {
        if self.is_zero() || rhs.is_zero() {
            return self.mant.magnitude().cmp(rhs.mant.magnitude());
        }
        let (a, b) = (self.mant.magnitude(), rhs.mant.magnitude());
        // Cheap scale comparison first, exact shift-and-compare on ties.
        let sa = a.bits() as i64 + self.exp;
        let sb = b.bits() as i64 + rhs.exp;
        if sa != sb {
            return sa.cmp(&sb);
        }
        if self.exp >= rhs.exp {
            (a << (self.exp - rhs.exp) as u64).cmp(b)
        } else {
            a.cmp(&(b << (rhs.exp - self.exp) as u64))
        }
    }

    /// Approximate base-2 logarithm of the absolute value (`None` for zero).
    #[must_use]
    pub fn log2_approx(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        let bits = self.mant.bits();
        // Take the top 53 bits for the fractional part of the log.
        let top = if bits > 53 {
            let m: BigUint = self.mant.magnitude() >> (bits - 53);
            m.to_string().parse::<f64>().unwrap_or(f64::MAX)
        } else {
            self.mant.magnitude().to_string().parse::<f64>().unwrap_or(f64::MAX)
        };
        let shift = bits.saturating_sub(53) as f64;
        Some(top.log2() + shift + self.exp as f64)
    }

    /// Lossy conversion to `f64` (saturates on overflow).
    #[must_use]
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (top, shift): (BigInt, i64) = if bits > 64 {
            (&self.mant >> (bits - 64), (bits - 64) as i64)
        } else {
            (self.mant.clone(), 0)
        };
        let top_f64 = {
            // i128 covers 64-bit magnitudes with sign.
            let (sign, mag) = top.into_parts();
            let v = mag.iter_u64_digits().next().unwrap_or(0) as f64;
            if sign == Sign::Minus { -v } else { v }
        };
        let e = self.exp + shift;
        if e > 1 << 16 {
            return if top_f64 < 0.0 { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if e < -(1 << 16) {
            return 0.0;
        }
        top_f64 * (2.0f64).powi(e as i32)
    }
}

/// Complex number over [`BigFloat`].
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    #[must_use]
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    #[must_use]
    pub fn zero() -> Self {
        BigComplex { re: BigFloat::zero(), im: BigFloat::zero() }
    }

    #[must_use]
    pub fn from_f64(re: f64, im: f64) -> Self {
        BigComplex { re: BigFloat::from_f64(re), im: BigFloat::from_f64(im) }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    #[must_use]
    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        BigComplex { re: self.re.add(&rhs.re, prec), im: self.im.add(&rhs.im, prec) }
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        BigComplex { re: self.re.sub(&rhs.re, prec), im: self.im.sub(&rhs.im, prec) }
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        let re = self.re.mul(&rhs.re, prec).sub(&self.im.mul(&rhs.im, prec), prec);
        let im = self.re.mul(&rhs.im, prec).add(&self.im.mul(&rhs.re, prec), prec);
        BigComplex { re, im }
    }

    /// Squared modulus.
    #[must_use]
    pub fn norm2(&self, prec: u32) -> BigFloat {
        self.re.mul(&self.re, prec).add(&self.im.mul(&self.im, prec), prec)
    }

    /// Modulus.
    #[must_use]
    pub fn abs(&self, prec: u32) -> BigFloat {
        self.norm2(prec).sqrt(prec)
    }

    /// Reciprocal (zero input yields zero; callers guard).
    #[must_use]
    pub fn inv(&self, prec: u32) -> Self {
        let n2 = self.norm2(prec);
        BigComplex { re: self.re.div(&n2, prec), im: self.im.neg().div(&n2, prec) }
    }

    #[must_use]
    pub fn div(&self, rhs: &Self, prec: u32) -> Self {
        self.mul(&rhs.inv(prec), prec)
    }

    #[must_use]
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
