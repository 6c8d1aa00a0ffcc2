//! Certified Mahler measure of integer polynomials.
//!
//! For `p = a·∏(t − λᵢ)` the measure is `log|a| + Σ_{|λᵢ|>1} log|λᵢ|`. The
//! computation is exact wherever symbolic structure allows it:
//!
//! * content and leading coefficients contribute `log` of an explicit
//!   integer,
//! * factors that are `t`, cyclotomic, or linear contribute exactly
//!   (`m(at − b) = log max(|a|, |b|)`),
//! * only irreducible non-cyclotomic factors of degree ≥ 2 need numerics.
//!
//! The numeric part runs Aberth–Ehrlich iteration, first in `f64`, then in
//! escalating multiprecision, and converts the final iterates into *rigorous*
//! per-root intervals via Weierstrass residual disks: each disk radius is
//! `n·|p(zᵢ)|ᵘᵇ / (|lc|·∏_{j≠i}|zᵢ − zⱼ|)ˡᵇ` with an explicit Horner
//! evaluation-error term, and disks must be pairwise disjoint before they are
//! trusted. The returned error bound therefore holds unconditionally; the
//! iteration only affects how tight it is.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::bigfloat::{BigComplex, BigFloat};
use super::factor::factor;
use super::{is_cyclotomic_or_t, IntPoly};
use crate::entropy::{EntropyValue, ExactForm};
use crate::error::{Error, Result};

/// Additive guard applied around every `ln` evaluated on certified bounds.
const LN_GUARD: f64 = 1e-14;

/// Starting multiprecision mantissa width after the `f64` stage.
const BASE_PREC: u32 = 96;

/// Maximum number of precision doublings before giving up.
const MAX_DOUBLINGS: u32 = 64;

/// Computes the Mahler measure of a nonzero integer polynomial with a
/// certified absolute error at most `abs_err`.
///
/// The result is [`EntropyValue::Zero`] exactly when the measure is zero
/// (detected symbolically), and carries an exact `log n` form whenever no
/// root contributes numerically.
///
/// # Errors
///
/// `Domain` for the zero polynomial or a non-positive budget; `Numerical` if
/// certification cannot reach the requested budget within the precision cap.
pub fn mahler(p: &IntPoly, abs_err: f64) -> Result<EntropyValue> {
    if p.is_zero() {
        return Err(Error::Domain("Mahler measure of the zero polynomial".into()));
    }
    if !(abs_err.is_finite() && abs_err > 0.0) {
        return Err(Error::Domain(format!("error budget must be positive, got {abs_err}")));
    }
    let fac = factor(p)?;
    // Exact multiplicative contribution: content, leading coefficients, and
    // the max-coefficient rule for linear factors.
    let mut exact_product: BigUint = fac.content.clone();
    let mut numeric: Vec<(IntPoly, u32)> = Vec::new();
    for (q, m) in &fac.factors {
        if q.deg_or_0() == 1 {
            let a = q.lc().expect("nonzero").magnitude().clone();
            let b = q.coeff(0).magnitude().clone();
            exact_product *= a.max(b).pow(*m);
        } else if is_cyclotomic_or_t(q) {
            // Measure 0: roots on the unit circle (or at the origin).
        } else {
            exact_product *= q.lc().expect("nonzero").magnitude().pow(*m);
            numeric.push((q.clone(), *m));
        }
    }
    let (base_value, base_err) = ln_biguint(&exact_product);
    if numeric.is_empty() {
        if exact_product.is_one() {
            return Ok(EntropyValue::Zero);
        }
        return Ok(EntropyValue::finite(
            base_value,
            base_err,
            Some(ExactForm::LogInt(exact_product)),
        ));
    }
    // Per-factor half-width budget: leave 10% headroom so the reported error
    // provably stays within the request even after the base term.
    let per_factor = abs_err * 0.9 / numeric.len() as f64;
    if per_factor <= base_err {
        return Err(Error::Numerical(format!(
            "error budget {abs_err} is too small to certify against base rounding"
        )));
    }
    let mut mid_sum = 0.0f64;
    let mut err_sum = base_err;
    let mut all_static = true;
    for (q, m) in &numeric {
        let target = per_factor / f64::from(*m);
        let moduli = certified_root_moduli(q, target)?;
        let mut lo_sum = 0.0f64;
        let mut hi_sum = 0.0f64;
        for (lo, hi) in &moduli {
            let (a, b) = log_plus_interval(*lo, *hi);
            lo_sum += a;
            hi_sum += b;
        }
        let mid = f64::from(*m) * (lo_sum + hi_sum) / 2.0;
        let half = f64::from(*m) * (hi_sum - lo_sum) / 2.0;
        mid_sum += mid;
        err_sum += half;
        if half != 0.0 || mid != 0.0 {
            all_static = false;
        }
    }
    let exact = if all_static {
        // Every numeric root was certified inside the closed unit disk, so
        // only the integer product contributes.
        Some(ExactForm::LogInt(exact_product.clone()))
    } else {
        None
    };
    let value = base_value + mid_sum;
    if err_sum > abs_err {
        return Err(Error::Numerical(format!(
            "achieved error {err_sum:.3e} exceeds requested budget {abs_err:.3e}"
        )));
    }
    if value == 0.0 && exact_product.is_one() && all_static {
        return Ok(EntropyValue::Zero);
    }
    Ok(EntropyValue::finite(value, err_sum, exact))
}

/// `(ln n, error bound)` for a positive integer — shared with the exact
/// entropy constructors.
#[must_use]
pub fn ln_biguint_pub(n: &BigUint) -> (f64, f64) {
    ln_biguint(n)
}

/// `(ln n, error bound)` for a positive integer.
fn ln_biguint(n: &BigUint) -> (f64, f64) {
    if n.is_one() {
        return (0.0, 0.0);
    }
    let bits = n.bits();
    let value = if bits <= 900 {
        n.to_f64().expect("moderate size").ln()
    } else {
        let shift = bits - 64;
        let top = (n >> shift).to_f64().expect("64-bit window");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    (value, (value.abs() + 1.0) * 2e-15)
}

/// Interval arithmetic for `max(0, ln·)` over a certified modulus range.
fn log_plus_interval(lo: f64, hi: f64) -> (f64, f64) {
    let a = if lo > 1.0 { (lo.ln() - LN_GUARD).max(0.0) } else { 0.0 };
    let b = if hi > 1.0 { hi.ln() + LN_GUARD } else { 0.0 };
    (a, b)
}

/// Certified root moduli of a squarefree polynomial: returns per-root
/// `(lo, hi)` modulus intervals whose `log⁺` half-widths sum to at most
/// `target`.
fn certified_root_moduli(q: &IntPoly, target: f64) -> Result<Vec<(f64, f64)>> {
    let n = q.degree().expect("nonzero, degree ≥ 2");
    debug_assert!(n >= 2);
    // Stage 1: f64 iteration; usually certifies with widths ~1e-12.
    let mut seeds: Option<Vec<(f64, f64)>> = None;
    if let Some(roots) = aberth_f64(q) {
        if let Some(intervals) = certify_f64(q, &roots) {
            if interval_halfwidth(&intervals) <= target {
                return Ok(intervals);
            }
        }
        seeds = Some(roots);
    }
    // Stage 2: escalating multiprecision.
    let mut prec = BASE_PREC;
    for _ in 0..=MAX_DOUBLINGS {
        let start = match &seeds {
            Some(r) => r.iter().map(|&(re, im)| BigComplex::from_f64(re, im)).collect(),
            None => circle_seeds(q),
        };
        if let Some(roots) = aberth_big(q, start, prec) {
            if let Some(intervals) = certify_big(q, &roots, prec) {
                if interval_halfwidth(&intervals) <= target {
                    return Ok(intervals);
                }
            }
            seeds = Some(roots.iter().map(BigComplex::to_f64_pair).collect());
        }
        prec = prec.saturating_mul(2);
    }
    Err(Error::Numerical(format!(
        "root certification for {q} did not reach half-width {target:.3e} within the precision cap"
    )))
}

fn interval_halfwidth(intervals: &[(f64, f64)]) -> f64 {
    intervals
        .iter()
        .map(|&(lo, hi)| {
            let (a, b) = log_plus_interval(lo, hi);
            (b - a) / 2.0
        })
        .sum()
}

// ---------------------------------------------------------------------------
// f64 stage.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Coefficients as f64, or `None` when they do not fit.
fn coeffs_f64(q: &IntPoly) -> Option<Vec<f64>> {
    let mut out = Vec::with_capacity(q.coeffs().len());
    for c in q.coeffs() {
        let v = c.to_f64()?;
        if !v.is_finite() || v.abs() > 1e300 {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

fn horner_f64(coeffs: &[f64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(C64::new(c, 0.0));
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration in plain f64.
fn aberth_f64(q: &IntPoly) -> Option<Vec<(f64, f64)>> {
    let coeffs = coeffs_f64(q)?;
    let n = coeffs.len() - 1;
    let a_n = coeffs[n];
    // Fujiwara-style enclosing radius for the initial circle.
    let mut radius = 0.0f64;
    for (k, &c) in coeffs.iter().enumerate().take(n) {
        let r = (c / a_n).abs().powf(1.0 / (n - k) as f64);
        radius = radius.max(r);
    }
    let radius = (2.0 * radius).clamp(0.25, 1e6);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7 / n as f64;
            let r = radius * (0.85 + 0.3 * (k % 4) as f64 / 4.0);
            C64::new(r * theta.cos(), r * theta.sin())
        })
        .collect();
    let mut calm_sweeps = 0;
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_f64(&coeffs, z[i]);
            if !p.is_finite() || !dp.is_finite() {
                return None;
            }
            if p.abs() == 0.0 {
                continue;
            }
            let newton = if dp.abs() == 0.0 {
                C64::new(1e-3, 1e-3)
            } else {
                p.div(dp)
            };
            let mut s = C64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = z[i].sub(*zj);
                    if d.abs() == 0.0 {
                        return None;
                    }
                    s = s.add(C64::new(1.0, 0.0).div(d));
                }
            }
            let denom = C64::new(1.0, 0.0).sub(newton.mul(s));
            let w = if denom.abs() < 1e-300 { newton } else { newton.div(denom) };
            z[i] = z[i].sub(w);
            if !z[i].is_finite() {
                return None;
            }
            max_step = max_step.max(w.abs() / (1.0 + z[i].abs()));
        }
        if max_step < 1e-15 {
            calm_sweeps += 1;
            if calm_sweeps >= 2 {
                break;
            }
        } else {
            calm_sweeps = 0;
        }
    }
    Some(z.iter().map(|c| (c.re, c.im)).collect())
}

/// Turns f64 iterates into certified modulus intervals, or `None` when the
/// Weierstrass disks overlap or degenerate.
fn certify_f64(q: &IntPoly, roots: &[(f64, f64)]) -> Option<Vec<(f64, f64)>> {
    let coeffs = coeffs_f64(q)?;
    let n = coeffs.len() - 1;
    let a_n = coeffs[n].abs();
    let mut radii = Vec::with_capacity(n);
    for (i, &(re, im)) in roots.iter().enumerate() {
        let zi = C64::new(re, im);
        let (p, _) = horner_f64(&coeffs, zi);
        // Horner evaluation error bound for complex arguments.
        let zabs = zi.abs();
        let mut scale = 0.0f64;
        let mut zp = 1.0f64;
        for &c in &coeffs {
            scale += c.abs() * zp;
            zp *= zabs;
        }
        let gamma = 8.0 * n as f64 * f64::EPSILON * scale;
        let num_ub = (p.abs() + gamma) * (1.0 + 1e-12);
        let mut denom = a_n;
        for (j, &(rj, ij)) in roots.iter().enumerate() {
            if j != i {
                denom *= zi.sub(C64::new(rj, ij)).abs();
            }
        }
        if !(denom > 0.0) || !num_ub.is_finite() {
            return None;
        }
        let r = n as f64 * num_ub / (denom * (1.0 - 1e-12));
        if !r.is_finite() {
            return None;
        }
        radii.push(r);
    }
    // Disks must be pairwise disjoint for the one-root-per-disk guarantee.
    for i in 0..n {
        for j in i + 1..n {
            let d = C64::new(roots[i].0, roots[i].1)
                .sub(C64::new(roots[j].0, roots[j].1))
                .abs();
            if d * (1.0 - 1e-12) <= radii[i] + radii[j] {
                return None;
            }
        }
    }
    Some(
        roots
            .iter()
            .zip(&radii)
            .map(|(&(re, im), &r)| {
                let m = C64::new(re, im).abs();
                (((m - r) * (1.0 - 5e-16)).max(0.0), (m + r) * (1.0 + 5e-16))
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Multiprecision stage.
// ---------------------------------------------------------------------------

/// Fallback seed ring when no f64 iterate is available (huge coefficients).
fn circle_seeds(q: &IntPoly) -> Vec<BigComplex> {
    let n = q.degree().expect("degree ≥ 2");
    let log2_an = q.lc().expect("nonzero").magnitude().bits() as f64;
    let log2_a0 = q.coeff(0).magnitude().bits().max(1) as f64;
    let radius = ((log2_a0 - log2_an) / n as f64).exp2().clamp(0.25, 1e6);
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7 / n as f64;
            let r = radius * (0.85 + 0.3 * (k % 4) as f64 / 4.0);
            BigComplex::from_f64(r * theta.cos(), r * theta.sin())
        })
        .collect()
}

fn horner_big(coeffs: &[BigFloat], z: &BigComplex, prec: u32) -> BigComplex {
    let mut p = BigComplex::zero();
    for c in coeffs.iter().rev() {
        p = p.mul(z, prec);
        p.re = p.re.add(c, prec);
    }
    p
}

/// Aberth–Ehrlich iteration over [`BigComplex`] at the given precision.
fn aberth_big(q: &IntPoly, start: Vec<BigComplex>, prec: u32) -> Option<Vec<BigComplex>> {
    let coeffs: Vec<BigFloat> = q.coeffs().iter().map(BigFloat::from_bigint).collect();
    let n = coeffs.len() - 1;
    debug_assert_eq!(start.len(), n);
    let mut z = start;
    let threshold = -(f64::from(prec)) + 8.0;
    let mut calm = 0;
    for _ in 0..(60 + 2 * prec as usize) {
        let mut max_step_log2 = f64::NEG_INFINITY;
        for i in 0..n {
            let p = horner_big(&coeffs, &z[i], prec);
            if p.is_zero() {
                continue;
            }
            // Derivative via a second Horner pass.
            let mut dp = BigComplex::zero();
            let mut acc = BigComplex::zero();
            for c in coeffs.iter().rev() {
                dp = dp.mul(&z[i], prec).add(&acc, prec);
                acc = acc.mul(&z[i], prec);
                acc.re = acc.re.add(c, prec);
            }
            if dp.is_zero() {
                return None;
            }
            let newton = p.div(&dp, prec);
            let mut s = BigComplex::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = z[i].sub(zj, prec);
                    if d.is_zero() {
                        return None;
                    }
                    s = s.add(&d.inv(prec), prec);
                }
            }
            let one = BigComplex::from_f64(1.0, 0.0);
            let denom = one.sub(&newton.mul(&s, prec), prec);
            let w = if denom.is_zero() { newton } else { newton.div(&denom, prec) };
            z[i] = z[i].sub(&w, prec);
            let step = w.norm2(prec).log2_approx().map_or(f64::NEG_INFINITY, |l| l / 2.0);
            let zscale = z[i].norm2(prec).log2_approx().map_or(0.0, |l| l / 2.0).max(0.0);
            max_step_log2 = max_step_log2.max(step - zscale);
        }
        if max_step_log2 < threshold {
            calm += 1;
            if calm >= 2 {
                break;
            }
        } else {
            calm = 0;
        }
    }
    Some(z)
}

/// Certification at multiprecision: identical disk logic to the f64 stage,
/// with the evaluation-error term derived from the working precision.
fn certify_big(q: &IntPoly, roots: &[BigComplex], prec: u32) -> Option<Vec<(f64, f64)>> {
    let coeffs: Vec<BigFloat> = q.coeffs().iter().map(BigFloat::from_bigint).collect();
    let n = coeffs.len() - 1;
    let a_n = coeffs[n].abs();
    let mut intervals = Vec::with_capacity(n);
    let mut mods_radii: Vec<(f64, f64)> = Vec::with_capacity(n);
    for (i, zi) in roots.iter().enumerate() {
        let p = horner_big(&coeffs, zi, prec);
        let p_abs = p.abs(prec).to_f64();
        // log2 of Σ|a_k|·|z|^k without overflow.
        let zlog2 = zi.norm2(prec).log2_approx().map_or(f64::NEG_INFINITY, |l| l / 2.0);
        let mut term_max = f64::NEG_INFINITY;
        for (k, c) in coeffs.iter().enumerate() {
            if let Some(cl) = c.log2_approx() {
                let t = cl + k as f64 * zlog2.max(0.0);
                term_max = term_max.max(t);
            }
        }
        let gamma_log2 =
            (8.0 * n as f64).log2() + term_max + ((n + 1) as f64).log2() + 1.0 - f64::from(prec);
        let gamma = if gamma_log2 < -1060.0 { 0.0 } else { gamma_log2.exp2() };
        let num_ub = (p_abs + gamma) * (1.0 + 1e-12);
        let mut denom = a_n.clone();
        for (j, zj) in roots.iter().enumerate() {
            if j != i {
                denom = denom.mul(&zi.sub(zj, prec).abs(prec), prec);
            }
        }
        let denom_lb = denom.to_f64() * (1.0 - 1e-12);
        if !(denom_lb > 0.0) || !num_ub.is_finite() {
            return None;
        }
        let r = n as f64 * num_ub / denom_lb;
        if !r.is_finite() {
            return None;
        }
        let m = zi.abs(prec).to_f64();
        mods_radii.push((m, r));
        intervals.push((((m - r) * (1.0 - 1e-12)).max(0.0), (m + r) * (1.0 + 1e-12)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = roots[i].sub(&roots[j], prec).abs(prec).to_f64();
            if d * (1.0 - 1e-12) <= mods_radii[i].1 + mods_radii[j].1 {
                return None;
            }
        }
    }
    Some(intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(coeffs)
    }

    fn finite(v: &EntropyValue) -> (f64, f64) {
        match v {
            EntropyValue::Finite { value, err, .. } => (*value, *err),
            other => panic!("expected finite value, got {other:?}"),
        }
    }

    #[test]
    fn zero_measure_cases() {
        assert_eq!(mahler(&p(&[0, 1]), 1e-9).unwrap(), EntropyValue::Zero);
        assert_eq!(mahler(&p(&[1]), 1e-9).unwrap(), EntropyValue::Zero);
        assert_eq!(mahler(&p(&[-1]), 1e-9).unwrap(), EntropyValue::Zero);
        // (t−1)(t+1)(t²+t+1)
        let f = p(&[-1, 1]).mul(&p(&[1, 1])).mul(&p(&[1, 1, 1]));
        assert_eq!(mahler(&f, 1e-9).unwrap(), EntropyValue::Zero);
    }

    #[test]
    fn linear_factors_are_exact() {
        let v = mahler(&p(&[-1, 2]), 1e-9).unwrap(); // 2t − 1
        let (value, err) = finite(&v);
        assert!((value - 2.0f64.ln()).abs() <= err);
        assert!(err < 1e-12);
        assert_eq!(
            v.exact_form(),
            Some(&ExactForm::LogInt(BigUint::from(2u32)))
        );

        // m(2t − 3) = log 3
        let v = mahler(&p(&[-3, 2]), 1e-9).unwrap();
        assert_eq!(v.exact_form(), Some(&ExactForm::LogInt(BigUint::from(3u32))));
    }

    #[test]
    fn constants_and_content() {
        let v = mahler(&p(&[-6]), 1e-9).unwrap();
        assert_eq!(v.exact_form(), Some(&ExactForm::LogInt(BigUint::from(6u32))));
        let v = mahler(&p(&[0, 0, 3]), 1e-9).unwrap(); // 3t²
        assert_eq!(v.exact_form(), Some(&ExactForm::LogInt(BigUint::from(3u32))));
        assert!(mahler(&IntPoly::zero(), 1e-9).is_err());
        assert!(mahler(&p(&[2]), 0.0).is_err());
    }

    #[test]
    fn fibonacci_polynomial() {
        let v = mahler(&p(&[-1, -1, 1]), 1e-9).unwrap();
        let (value, err) = finite(&v);
        // Independently computed golden-ratio logarithm.
        let frozen = 0.481_211_825_059_603_447_5_f64;
        assert!(err <= 1e-9, "err {err}");
        assert!((value - frozen).abs() <= err + 1e-12, "value {value}");
    }

    #[test]
    fn lehmer_polynomial() {
        let f = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let v = mahler(&f, 1e-9).unwrap();
        let (value, err) = finite(&v);
        let frozen = 0.162_357_612_007_738_139_43_f64;
        assert!(err <= 1e-9, "err {err}");
        assert!((value - frozen).abs() <= err + 1e-12, "value {value}");
        assert!(v.exact_form().is_none());
    }

    #[test]
    fn sqrt_two_polynomial() {
        let v = mahler(&p(&[-2, 0, 1]), 1e-10).unwrap(); // t² − 2
        let (value, err) = finite(&v);
        assert!((value - 2.0f64.ln()).abs() <= err + 1e-12);
        assert!(err <= 1e-10);
    }

    #[test]
    fn multiplicativity_on_products() {
        let f = p(&[-1, -1, 1]);
        let g = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let fg = f.mul(&g);
        let (vf, ef) = finite(&mahler(&f, 1e-10).unwrap());
        let (vg, eg) = finite(&mahler(&g, 1e-10).unwrap());
        let (vfg, efg) = finite(&mahler(&fg, 1e-10).unwrap());
        assert!((vfg - vf - vg).abs() <= ef + eg + efg + 1e-12);
    }

    #[test]
    fn repeated_factors_scale_linearly() {
        let f = p(&[-1, -1, 1]);
        let f3 = f.pow(3);
        let (v1, e1) = finite(&mahler(&f, 1e-10).unwrap());
        let (v3, e3) = finite(&mahler(&f3, 1e-10).unwrap());
        assert!((v3 - 3.0 * v1).abs() <= 3.0 * e1 + e3 + 1e-12);
    }

    #[test]
    fn mixed_content_and_roots() {
        // 10·(2t−1)·(t²−t−1): measure = ln 10 + ln 2 + ln φ
        let f = p(&[-1, 2]).mul(&p(&[-1, -1, 1])).scale(&BigInt::from(10));
        let (value, err) = finite(&mahler(&f, 1e-9).unwrap());
        let expected = 10.0f64.ln() + 2.0f64.ln() + 0.481_211_825_059_603_447_5;
        assert!((value - expected).abs() <= err + 1e-9);
    }

    #[test]
    fn f64_stage_certifies_typical_inputs() {
        // The first stage alone should certify a benign quadratic.
        let q = p(&[-2, 0, 1]);
        let roots = aberth_f64(&q).unwrap();
        let intervals = certify_f64(&q, &roots).unwrap();
        assert_eq!(intervals.len(), 2);
        for (lo, hi) in intervals {
            assert!(lo <= 2.0f64.sqrt() && 2.0f64.sqrt() <= hi);
            assert!(hi - lo < 1e-10);
        }
    }

    #[test]
    fn big_stage_handles_tight_budgets() {
        // Force the multiprecision stage with a budget f64 cannot reach.
        let q = p(&[-1, -1, 1]);
        let v = mahler(&q, 1e-13).unwrap();
        let (value, err) = finite(&v);
        assert!(err <= 1e-13);
        assert!((value - 0.481_211_825_059_603_447_5).abs() <= 1e-12);
    }
}
