//! Entropy values, backends, trajectory engine, Pinsker radicals, and the
//! axiom-verification harness.
//!
//! The backends realize three entropies on the representable flows:
//!
//! * `ha` — algebraic entropy; on torsion-free data it equals the Mahler
//!   measure of the acting characteristic polynomial, on torsion data the
//!   certified trajectory growth rate.
//! * `ent` — the torsion-restricted entropy; every value reduces to the
//!   torsion part of the flow.
//! * `ent_rank` — the rank growth rate; positive exactly on free shift
//!   parts, one unit each.
//!
//! Direct sums add: the value of a multi-part flow is the sum of its part
//! values.

pub mod harness;
pub mod pinsker;
pub mod trajectory;
pub mod value;

pub use harness::{verify_axioms, Axiom, AxiomReport, SampleProfile};
pub use pinsker::{classify, pinsker, Classification, TorsionClass};
pub use trajectory::{canonical_seed, trajectory, TrajectoryMode, TrajectoryReport};
pub use value::{combine, sig10, CombineOp, EntropyValue, ExactForm};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flows::{CyclicFlow, FgFlow, Flow, FlowPart};
use crate::intpoly::mahler::mahler;
use crate::intpoly::IntPoly;
use trajectory::{subgroup_trajectory, GrowthInvariant};

/// Which entropy is being computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyKind {
    /// Algebraic entropy (supremum over finite subsets).
    Ha,
    /// Torsion entropy (supremum over finite subgroups).
    Ent,
    /// Rank entropy (rank growth of trajectories).
    EntRank,
}

impl EntropyKind {
    /// Parses `ha` / `ent` / `rank` (also `ent_rank`).
    #[must_use]
    pub fn from_name(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ha" => Some(EntropyKind::Ha),
            "ent" => Some(EntropyKind::Ent),
            "rank" | "ent_rank" => Some(EntropyKind::EntRank),
            _ => None,
        }
    }

    /// Canonical flag spelling.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            EntropyKind::Ha => "ha",
            EntropyKind::Ent => "ent",
            EntropyKind::EntRank => "rank",
        }
    }
}

/// Backend selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed form when one exists, otherwise the trajectory engine.
    Auto,
    /// Closed form only; error where none exists.
    ClosedForm,
    /// Certified trajectory run; error where none can certify.
    Trajectory,
}

impl Method {
    /// Parses `auto` / `closed_form` / `trajectory`.
    #[must_use]
    pub fn from_name(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Some(Method::Auto),
            "closed_form" | "closed-form" => Some(Method::ClosedForm),
            "trajectory" => Some(Method::Trajectory),
            _ => None,
        }
    }
}

/// Computes the chosen entropy of a flow.
///
/// Values over direct sums add, so the result is the sum of per-part
/// values. `precision` is the absolute error target for numeric (Mahler)
/// evaluations; exact paths ignore it beyond validation.
///
/// # Errors
///
/// `Domain` for out-of-class requests (the full shift on ℤ\[t\] under `ha`,
/// a forced method that cannot apply); `Numerical` / `Resource` from the
/// engines; `UnsupportedBase` from radical-backed paths.
pub fn entropy(flow: &Flow, kind: EntropyKind, method: Method, precision: f64) -> Result<EntropyValue> {
    if !(precision.is_finite() && precision > 0.0) {
        return Err(Error::Domain(format!(
            "precision must be a positive finite number, got {precision}"
        )));
    }
    let mut acc = EntropyValue::Zero;
    for part in flow.parts() {
        let v = match part {
            FlowPart::Fg(f) => fg_entropy(f, kind, method, precision)?,
            FlowPart::Cyclic(c) => cyclic_entropy(c, kind, method, precision)?,
        };
        acc = acc.add(&v);
    }
    Ok(acc)
}

/// Entropy of a group part.
fn fg_entropy(f: &FgFlow, kind: EntropyKind, method: Method, precision: f64) -> Result<EntropyValue> {
    match kind {
        EntropyKind::Ha => match method {
            Method::Auto | Method::ClosedForm => {
                // Torsion part is finite (zero entropy); what remains is the
                // Mahler measure of the induced map on the free quotient.
                mahler(&f.free_quotient_matrix().charpoly(), precision)
            }
            Method::Trajectory => {
                if f.group().free_rank() > 0 {
                    return Err(Error::Domain(
                        "trajectory certificates cover torsion flows only for kind ha; \
                         this part has positive free rank (use closed_form, or the \
                         trajectory operation in subset mode for an estimate)"
                            .into(),
                    ));
                }
                torsion_trajectory_value(&Flow::single(FlowPart::Fg(f.clone())))
            }
        },
        EntropyKind::Ent => match method {
            // The torsion subgroup of a finitely generated group is finite,
            // and finite flows have zero entropy.
            Method::Auto | Method::ClosedForm => Ok(EntropyValue::Zero),
            Method::Trajectory => torsion_trajectory_value(&Flow::single(FlowPart::Fg(f.clone()))),
        },
        EntropyKind::EntRank => match method {
            // Trajectory ranks are bounded by the ambient rank, so the
            // growth rate vanishes.
            Method::Auto | Method::ClosedForm => Ok(EntropyValue::Zero),
            Method::Trajectory => rank_trajectory_value(&Flow::single(FlowPart::Fg(f.clone()))),
        },
    }
}

/// Entropy of a cyclic part.
fn cyclic_entropy(
    c: &CyclicFlow,
    kind: EntropyKind,
    method: Method,
    precision: f64,
) -> Result<EntropyValue> {
    let base = c.base();
    let f = c.poly();
    match kind {
        EntropyKind::Ha => {
            if base.is_zero() && f.is_zero() {
                return Err(Error::Domain(
                    "the full shift on Z[t] has infinite algebraic entropy, outside the \
                     certified value class"
                        .into(),
                ));
            }
            if base.is_zero() {
                // Closed form: the Mahler measure of the defining polynomial.
                if method == Method::Trajectory {
                    return Err(Error::Domain(
                        "trajectory certificates cover torsion flows only for kind ha; \
                         Z[t]/(f) has positive free rank (use closed_form)"
                            .into(),
                    ));
                }
                return mahler(f, precision);
            }
            // Positive base: the module is torsion, so ha = ent there.
            torsion_cyclic_value(c, method)
        }
        EntropyKind::Ent => {
            if base.is_zero() {
                if f.is_zero() {
                    // ℤ[t] is torsion-free: no finite subgroup grows.
                    return Ok(EntropyValue::Zero);
                }
                // The torsion subflow (g)/(f) for g = primitive part of f is
                // isomorphic to the full shift over ℤ/content, so the value
                // is log content(f).
                let content = f.content();
                match method {
                    Method::Auto | Method::ClosedForm => {
                        return Ok(EntropyValue::exact_log_int(content))
                    }
                    Method::Trajectory => {
                        let torsion = CyclicFlow::new(content, IntPoly::zero());
                        return torsion_cyclic_value(&torsion, method);
                    }
                }
            }
            torsion_cyclic_value(c, method)
        }
        EntropyKind::EntRank => {
            let closed = if base.is_zero() && f.is_zero() {
                // A free shift part contributes one unit of rank growth.
                EntropyValue::exact_int(1)
            } else {
                EntropyValue::Zero
            };
            match method {
                Method::Auto | Method::ClosedForm => Ok(closed),
                Method::Trajectory => {
                    let v = rank_trajectory_value(&Flow::single(FlowPart::Cyclic(c.clone())))?;
                    if v != closed {
                        return Err(Error::Verification(
                            "rank trajectory disagrees with the closed form".into(),
                        ));
                    }
                    Ok(v)
                }
            }
        }
    }
}

/// Value of a torsion cyclic part (positive base) under the chosen method.
fn torsion_cyclic_value(c: &CyclicFlow, method: Method) -> Result<EntropyValue> {
    debug_assert!(!c.base().is_zero());
    if c.poly().is_zero() {
        // Full shift over ℤ/c: closed form log c.
        if method != Method::Trajectory {
            return Ok(EntropyValue::exact_log_int(c.base().clone()));
        }
    } else if method == Method::ClosedForm {
        return Err(Error::Domain(
            "no closed form for cyclic flows over a positive base with a nonzero \
             polynomial; use the trajectory method"
                .into(),
        ));
    }
    let flow = Flow::single(FlowPart::Cyclic(c.clone()));
    let v = torsion_trajectory_value(&flow)?;
    if c.poly().is_zero() {
        // Cross-check the certificate against the closed form.
        let expect = EntropyValue::exact_log_int(c.base().clone());
        if v != expect {
            return Err(Error::Verification(
                "trajectory certificate disagrees with the closed form log c".into(),
            ));
        }
    }
    Ok(v)
}

/// Certified subgroup-trajectory value with the canonical torsion seed.
fn torsion_trajectory_value(flow: &Flow) -> Result<EntropyValue> {
    let seed = canonical_seed(flow);
    let report = subgroup_trajectory(flow, &seed, GrowthInvariant::LogCard, None)?;
    debug_assert!(report.stabilized);
    Ok(report.estimate)
}

/// Certified rank-growth value with the canonical module generators.
fn rank_trajectory_value(flow: &Flow) -> Result<EntropyValue> {
    use crate::flows::PartElement;
    use num_bigint::BigInt;
    use num_traits::One;
    // Module generators: every ambient basis vector on group parts, the
    // residue of 1 on cyclic parts.
    let mut gens = Vec::new();
    for (i, part) in flow.parts().iter().enumerate() {
        match part {
            FlowPart::Fg(f) => {
                for j in 0..f.group().ambient() {
                    let mut v = vec![BigInt::zero(); f.group().ambient()];
                    v[j] = BigInt::one();
                    let mut e = flow.zero_element();
                    e.parts[i] = PartElement::Vector(v);
                    gens.push(flow.reduce_element(&e));
                }
            }
            FlowPart::Cyclic(_) => {
                let mut e = flow.zero_element();
                e.parts[i] = PartElement::Poly(IntPoly::one());
                gens.push(flow.reduce_element(&e));
            }
        }
    }
    let report = subgroup_trajectory(flow, &gens, GrowthInvariant::Rank, None)?;
    debug_assert!(report.stabilized);
    Ok(report.estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::parse_flow;
    use num_bigint::BigUint;

    fn flow_of(text: &str) -> Flow {
        parse_flow(text).expect("valid document")
    }

    fn assert_log(v: &EntropyValue, n: u64) {
        assert_eq!(v.exact_form(), Some(&ExactForm::LogInt(BigUint::from(n))), "{v}");
    }

    #[test]
    fn bernoulli_normalization() {
        for p in [2u64, 3, 5, 7] {
            let flow = flow_of(&format!(r#"{{"type":"cyclic","base":{p},"poly":[]}}"#));
            for method in [Method::Auto, Method::ClosedForm, Method::Trajectory] {
                let v = entropy(&flow, EntropyKind::Ent, method, 1e-9).unwrap();
                assert_log(&v, p);
            }
            let v = entropy(&flow, EntropyKind::Ha, Method::Auto, 1e-9).unwrap();
            assert_log(&v, p);
            assert!(entropy(&flow, EntropyKind::EntRank, Method::Auto, 1e-9)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn doubling_closed_form() {
        let flow = flow_of(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#);
        let v = entropy(&flow, EntropyKind::Ha, Method::Auto, 1e-9).unwrap();
        assert!((v.as_f64().unwrap() - 2.0f64.ln()).abs() <= 1e-9);
        assert!(entropy(&flow, EntropyKind::Ent, Method::Auto, 1e-9).unwrap().is_zero());
        assert!(entropy(&flow, EntropyKind::EntRank, Method::Auto, 1e-9).unwrap().is_zero());
    }

    #[test]
    fn fibonacci_closed_form() {
        let flow = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[0,1],[1,1]]}"#);
        let v = entropy(&flow, EntropyKind::Ha, Method::Auto, 1e-9).unwrap();
        assert!((v.as_f64().unwrap() - 0.481_211_825_059_603_447_5).abs() <= 1e-9, "{v}");
    }

    #[test]
    fn half_flow_values() {
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#);
        let ha = entropy(&flow, EntropyKind::Ha, Method::Auto, 1e-9).unwrap();
        assert!((ha.as_f64().unwrap() - 2.0f64.ln()).abs() <= 1e-9);
        assert!(entropy(&flow, EntropyKind::Ent, Method::Auto, 1e-9).unwrap().is_zero());
        assert!(entropy(&flow, EntropyKind::EntRank, Method::Auto, 1e-9).unwrap().is_zero());
    }

    #[test]
    fn free_shift_values() {
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[]}"#);
        assert!(matches!(
            entropy(&flow, EntropyKind::Ha, Method::Auto, 1e-9),
            Err(Error::Domain(_))
        ));
        assert!(entropy(&flow, EntropyKind::Ent, Method::Auto, 1e-9).unwrap().is_zero());
        let r = entropy(&flow, EntropyKind::EntRank, Method::Auto, 1e-9).unwrap();
        assert_eq!(r, EntropyValue::exact_int(1));
        let r = entropy(&flow, EntropyKind::EntRank, Method::Trajectory, 1e-9).unwrap();
        assert_eq!(r, EntropyValue::exact_int(1));
    }

    #[test]
    fn torsion_content_closed_and_trajectory() {
        // ℤ[t]/(6(t−2)): ent = log 6 both ways.
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[-12,6]}"#);
        let cf = entropy(&flow, EntropyKind::Ent, Method::ClosedForm, 1e-9).unwrap();
        assert_log(&cf, 6);
        let tr = entropy(&flow, EntropyKind::Ent, Method::Trajectory, 1e-9).unwrap();
        assert_log(&tr, 6);
        // ha adds the Mahler measure of the primitive part: log 6 + log 2.
        let ha = entropy(&flow, EntropyKind::Ha, Method::Auto, 1e-9).unwrap();
        assert!((ha.as_f64().unwrap() - 12.0f64.ln()).abs() <= 1e-9);
    }

    #[test]
    fn identity_and_zero_flows() {
        let ident = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,1]]}"#);
        let zero = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[0,0],[0,0]]}"#);
        for kind in [EntropyKind::Ha, EntropyKind::Ent, EntropyKind::EntRank] {
            assert!(entropy(&ident, kind, Method::Auto, 1e-9).unwrap().is_zero());
            assert!(entropy(&zero, kind, Method::Auto, 1e-9).unwrap().is_zero());
        }
    }

    #[test]
    fn direct_sums_add() {
        let flow = flow_of(
            r#"{"type":"sum","parts":[{"type":"cyclic","base":2,"poly":[]},{"type":"cyclic","base":3,"poly":[]}]}"#,
        );
        let v = entropy(&flow, EntropyKind::Ent, Method::Auto, 1e-9).unwrap();
        assert_log(&v, 6);
    }

    #[test]
    fn finite_base_nonzero_poly_is_zero_entropy() {
        // ℤ/6[t]/(t−1) is finite: every entropy vanishes.
        let flow = flow_of(r#"{"type":"cyclic","base":6,"poly":[-1,1]}"#);
        assert!(entropy(&flow, EntropyKind::Ha, Method::Auto, 1e-9).unwrap().is_zero());
        assert!(entropy(&flow, EntropyKind::Ent, Method::Auto, 1e-9).unwrap().is_zero());
        assert!(matches!(
            entropy(&flow, EntropyKind::Ha, Method::ClosedForm, 1e-9),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mixed_base_shift_with_poly() {
        // ℤ/6[t]/(2t+2): finite mod 3, shift-like mod 2 → ent = log 2.
        let flow = flow_of(r#"{"type":"cyclic","base":6,"poly":[2,2]}"#);
        let v = entropy(&flow, EntropyKind::Ent, Method::Auto, 1e-9).unwrap();
        assert_log(&v, 2);
    }

    #[test]
    fn method_mismatches_are_domain_errors() {
        let dbl = flow_of(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#);
        assert!(matches!(
            entropy(&dbl, EntropyKind::Ha, Method::Trajectory, 1e-9),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            entropy(&dbl, EntropyKind::Ha, Method::Auto, f64::NAN),
            Err(Error::Domain(_))
        ));
    }
}
