//! The value algebra for entropies: `Zero`, certified `Finite`, `Infinity`.
//!
//! Every numeric result carries an explicit absolute error bound, and —
//! whenever the computation stayed symbolic — an exact closed form. The
//! combinators here implement pointwise sums and suprema of entropy
//! functions and the binary hull.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Closed form attached to a [`EntropyValue::Finite`] when the value is known
/// exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactForm {
    /// The value is exactly `log n` for this positive integer `n`.
    LogInt(BigUint),
    /// The value is exactly this integer (rank-counting entropies).
    Int(u64),
}

impl ExactForm {
    #[must_use]
    pub fn render(&self) -> String {
        match self {
            ExactForm::LogInt(n) => format!("log {n}"),
            ExactForm::Int(k) => format!("{k}"),
        }
    }
}

/// An entropy value: zero, a certified positive real, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum EntropyValue {
    Zero,
    Finite {
        /// Midpoint of the certified enclosure (strictly positive).
        value: f64,
        /// Absolute error bound: the true value lies in `[value−err, value+err]`.
        err: f64,
        /// Exact closed form when the computation was fully symbolic.
        exact: Option<ExactForm>,
    },
    Infinity,
}

impl EntropyValue {
    /// Builds a finite value, normalizing an exact zero to [`EntropyValue::Zero`].
    #[must_use]
    pub fn finite(value: f64, err: f64, exact: Option<ExactForm>) -> Self {
        debug_assert!(value >= 0.0 && err >= 0.0);
        if value == 0.0 && err == 0.0 {
            return EntropyValue::Zero;
        }
        EntropyValue::Finite { value, err, exact }
    }

    /// Finite value that is exactly `log n`.
    #[must_use]
    pub fn exact_log_int(n: BigUint) -> Self {
        if n.is_one() {
            return EntropyValue::Zero;
        }
        let (value, err) = crate::intpoly::mahler::ln_biguint_pub(&n);
        EntropyValue::Finite { value, err, exact: Some(ExactForm::LogInt(n)) }
    }

    /// Finite value that is exactly the integer `k`.
    #[must_use]
    pub fn exact_int(k: u64) -> Self {
        if k == 0 {
            return EntropyValue::Zero;
        }
        EntropyValue::Finite { value: k as f64, err: 0.0, exact: Some(ExactForm::Int(k)) }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        matches!(self, EntropyValue::Zero)
    }

    #[must_use]
    pub fn is_infinite(&self) -> bool {
        matches!(self, EntropyValue::Infinity)
    }

    /// Numeric value (`None` for infinity).
    #[must_use]
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            EntropyValue::Zero => Some(0.0),
            EntropyValue::Finite { value, .. } => Some(*value),
            EntropyValue::Infinity => None,
        }
    }

    /// Error bound (0 for the exact variants).
    #[must_use]
    pub fn err_bound(&self) -> f64 {
        match self {
            EntropyValue::Finite { err, .. } => *err,
            _ => 0.0,
        }
    }

    #[must_use]
    pub fn exact_form(&self) -> Option<&ExactForm> {
        match self {
            EntropyValue::Finite { exact, .. } => exact.as_ref(),
            _ => None,
        }
    }

    /// Pointwise sum; `x + ∞ = ∞`; exact forms multiply (`LogInt`) or add
    /// (`Int`) when both operands carry the same shape.
    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (EntropyValue::Infinity, _) | (_, EntropyValue::Infinity) => EntropyValue::Infinity,
            (EntropyValue::Zero, x) | (x, EntropyValue::Zero) => x.clone(),
            (
                EntropyValue::Finite { value: a, err: ea, exact: xa },
                EntropyValue::Finite { value: b, err: eb, exact: xb },
            ) => {
                let exact = match (xa, xb) {
                    (Some(ExactForm::LogInt(m)), Some(ExactForm::LogInt(n))) => {
                        Some(ExactForm::LogInt(m * n))
                    }
                    (Some(ExactForm::Int(m)), Some(ExactForm::Int(n))) => {
                        Some(ExactForm::Int(m + n))
                    }
                    _ => None,
                };
                EntropyValue::finite(a + b, ea + eb, exact)
            }
        }
    }

    /// Pointwise supremum; errors take the max (documented convention).
    #[must_use]
    pub fn sup(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (EntropyValue::Infinity, _) | (_, EntropyValue::Infinity) => EntropyValue::Infinity,
            (EntropyValue::Zero, x) | (x, EntropyValue::Zero) => x.clone(),
            (
                EntropyValue::Finite { value: a, err: ea, exact: xa },
                EntropyValue::Finite { value: b, err: eb, exact: xb },
            ) => {
                let exact = if a >= b { xa.clone() } else { xb.clone() };
                EntropyValue::finite(a.max(*b), ea.max(*eb), exact)
            }
        }
    }

    /// `k`-fold scaling (the logarithmic law `h(φᵏ) = k·h(φ)`).
    #[must_use]
    pub fn scale_int(&self, k: u64) -> Self {
        if k == 0 {
            return EntropyValue::Zero;
        }
        match self {
            EntropyValue::Zero => EntropyValue::Zero,
            EntropyValue::Infinity => EntropyValue::Infinity,
            EntropyValue::Finite { value, err, exact } => {
                let exact = match exact {
                    Some(ExactForm::LogInt(n)) => {
                        u32::try_from(k).ok().map(|e| ExactForm::LogInt(n.pow(e)))
                    }
                    Some(ExactForm::Int(m)) => m.checked_mul(k).map(ExactForm::Int),
                    None => None,
                };
                EntropyValue::finite(value * k as f64, err * k as f64, exact)
            }
        }
    }

    /// Binary hull: `Zero ↦ Zero`, everything else `↦ Infinity`.
    #[must_use]
    pub fn binary_hull(&self) -> Self {
        match self {
            EntropyValue::Zero => EntropyValue::Zero,
            _ => EntropyValue::Infinity,
        }
    }

    /// Certified equality: enclosures overlap (infinities must match).
    #[must_use]
    pub fn consistent_with(&self, rhs: &Self, slack: f64) -> bool {
        match (self, rhs) {
            (EntropyValue::Infinity, EntropyValue::Infinity) => true,
            (EntropyValue::Infinity, _) | (_, EntropyValue::Infinity) => false,
            _ => {
                let a = self.as_f64().expect("finite");
                let b = rhs.as_f64().expect("finite");
                (a - b).abs() <= self.err_bound() + rhs.err_bound() + slack
            }
        }
    }
}

/// Pointwise combination of a list of values.
///
/// Empty lists yield `Zero` for both operations (empty-sum / empty-join
/// convention).
#[must_use]
pub fn combine(values: &[EntropyValue], op: CombineOp) -> EntropyValue {
    values.iter().fold(EntropyValue::Zero, |acc, v| match op {
        CombineOp::Sum => acc.add(v),
        CombineOp::Sup => acc.sup(v),
    })
}

/// Operation selector for [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Sup,
}

/// Formats a float with 10 significant digits, trailing zeros trimmed.
#[must_use]
pub fn sig10(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = usize::try_from((9 - mag).max(0)).expect("non-negative");
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyValue::Zero => write!(f, "0 (exact)"),
            EntropyValue::Infinity => write!(f, "infinity"),
            EntropyValue::Finite { value, err, exact } => {
                write!(f, "{}", sig10(*value))?;
                if let Some(form) = exact {
                    write!(f, " = {} (exact, float err ≤ {:.1e})", form.render(), err)
                } else {
                    write!(f, " ± {err:.1e}")
                }
            }
        }
    }
}

impl Serialize for EntropyValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            EntropyValue::Zero => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("kind", "zero")?;
                m.end()
            }
            EntropyValue::Infinity => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("kind", "infinity")?;
                m.end()
            }
            EntropyValue::Finite { value, err, .. } => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("kind", "finite")?;
                m.serialize_entry("value", value)?;
                m.serialize_entry("err", err)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for EntropyValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: String,
            value: Option<f64>,
            err: Option<f64>,
        }
        let raw = Raw::deserialize(d)?;
        match raw.kind.as_str() {
            "zero" => Ok(EntropyValue::Zero),
            "infinity" => Ok(EntropyValue::Infinity),
            "finite" => {
                let value = raw.value.ok_or_else(|| D::Error::missing_field("value"))?;
                let err = raw.err.ok_or_else(|| D::Error::missing_field("err"))?;
                // Exactness is not part of the wire format.
                Ok(EntropyValue::finite(value, err, None))
            }
            other => Err(D::Error::custom(format!("unknown entropy value kind '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_and_sup_conventions() {
        let two = EntropyValue::exact_log_int(BigUint::from(2u32));
        let three = EntropyValue::exact_log_int(BigUint::from(3u32));
        let sum = two.add(&three);
        assert_eq!(sum.exact_form(), Some(&ExactForm::LogInt(BigUint::from(6u32))));
        assert!((sum.as_f64().unwrap() - 6.0f64.ln()).abs() < 1e-12);

        assert_eq!(EntropyValue::Infinity.add(&two), EntropyValue::Infinity);
        assert_eq!(two.add(&EntropyValue::Zero), two);
        assert_eq!(EntropyValue::Zero.sup(&three), three);
        assert_eq!(two.sup(&EntropyValue::Infinity), EntropyValue::Infinity);
        assert_eq!(
            combine(&[], CombineOp::Sum),
            EntropyValue::Zero
        );
        assert_eq!(
            combine(&[two.clone(), three.clone(), EntropyValue::Zero], CombineOp::Sup)
                .as_f64()
                .unwrap(),
            three.as_f64().unwrap()
        );
    }

    #[test]
    fn binary_hull_law() {
        assert_eq!(EntropyValue::Zero.binary_hull(), EntropyValue::Zero);
        assert_eq!(
            EntropyValue::exact_int(3).binary_hull(),
            EntropyValue::Infinity
        );
        assert_eq!(EntropyValue::Infinity.binary_hull(), EntropyValue::Infinity);
    }

    #[test]
    fn scaling_law() {
        let v = EntropyValue::exact_log_int(BigUint::from(2u32));
        let s = v.scale_int(3);
        assert_eq!(s.exact_form(), Some(&ExactForm::LogInt(BigUint::from(8u32))));
        assert_eq!(EntropyValue::exact_int(2).scale_int(4), EntropyValue::exact_int(8));
        assert_eq!(EntropyValue::Infinity.scale_int(2), EntropyValue::Infinity);
        assert_eq!(v.scale_int(0), EntropyValue::Zero);
    }

    #[test]
    fn serde_wire_format() {
        let z = serde_json::to_string(&EntropyValue::Zero).unwrap();
        assert_eq!(z, r#"{"kind":"zero"}"#);
        let i = serde_json::to_string(&EntropyValue::Infinity).unwrap();
        assert_eq!(i, r#"{"kind":"infinity"}"#);
        let f = EntropyValue::finite(0.5, 1e-10, None);
        let s = serde_json::to_string(&f).unwrap();
        let back: EntropyValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let back: EntropyValue = serde_json::from_str(r#"{"kind":"zero"}"#).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn exact_constructors_normalize() {
        assert!(EntropyValue::exact_log_int(BigUint::one()).is_zero());
        assert!(EntropyValue::exact_int(0).is_zero());
        assert!(!EntropyValue::exact_int(1).is_zero());
    }

    #[test]
    fn consistency_check() {
        let a = EntropyValue::finite(1.0, 1e-9, None);
        let b = EntropyValue::finite(1.0 + 1.5e-9, 1e-9, None);
        assert!(a.consistent_with(&b, 0.0));
        let c = EntropyValue::finite(1.1, 1e-9, None);
        assert!(!a.consistent_with(&c, 0.0));
        assert!(!a.consistent_with(&EntropyValue::Infinity, 0.0));
    }
}
