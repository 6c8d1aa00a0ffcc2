//! Pinsker radicals and torsion-theory classification.
//!
//! For each entropy kind, the Pinsker radical is the largest invariant
//! submodule on which the entropy vanishes. On the representable flows it
//! is a closed-form radical:
//!
//! * `ha` — the quasi-periodic radical,
//! * `ent` — the torsion-and-finite-orbit content read off the defining
//!   data part by part,
//! * `ent_rank` — the algebraic radical.
//!
//! Every computation is followed by two verification passes: the entropy
//! of the radical restriction must be zero, and entropy must be positive on
//! cyclic subobjects generated by sampled nonzero points of the quotient.
//! A failed pass is an engine bug and surfaces as a verification error,
//! never as a silently wrong answer.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abgroup::{image_subgroup, Subgroup};
use crate::entropy::{entropy, EntropyKind, Method};
use crate::error::{Error, Result};
use crate::flows::{
    crt_polys, sub_quot, CyclicFlow, Element, FgFlow, Flow, FlowPart, PartElement, PartSub,
    SubmoduleDesc,
};
use crate::intpoly::factor::ModPoly;
use crate::intpoly::mahler::mahler;
use crate::intpoly::IntPoly;
use crate::radicals::{radical, RadicalKind};

/// Maximum number of quotient points sampled by the positivity spot check.
const POSITIVITY_SAMPLES: usize = 32;
/// Precision used by the verification passes.
const VERIFY_PRECISION: f64 = 1e-9;

/// Where a flow sits in the torsion theory of an entropy kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionClass {
    /// The Pinsker radical is everything: entropy vanishes hereditarily.
    Torsion,
    /// The Pinsker radical is zero: entropy is positive on every nonzero
    /// subobject.
    TorsionFree,
    /// A proper nonzero radical: the flow splits into a zero-entropy
    /// bottom and a completely positive top.
    Mixed,
}

impl std::fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TorsionClass::Torsion => "torsion",
            TorsionClass::TorsionFree => "torsion_free",
            TorsionClass::Mixed => "mixed",
        };
        write!(f, "{s}")
    }
}

/// Classification result: the class together with the exact sequence
/// `0 → P → M → M/P → 0` summarized by structure strings.
#[derive(Clone, Debug)]
pub struct Classification {
    /// Which side of the torsion theory the flow falls on.
    pub class: TorsionClass,
    /// The Pinsker radical.
    pub pinsker: SubmoduleDesc,
    /// Structure of the radical as a flow.
    pub sub_iso: String,
    /// Structure of the quotient flow.
    pub quot_iso: String,
}

/// The Pinsker radical of the flow for the given entropy kind, verified.
///
/// # Errors
///
/// `UnsupportedBase` for non-squarefree positive bases; `Verification` if
/// either internal pass fails (an engine bug, never bad input).
pub fn pinsker(flow: &Flow, kind: EntropyKind) -> Result<SubmoduleDesc> {
    let p = raw_pinsker(flow, kind)?;
    let (sub, quot) = sub_quot(flow, &p)?;

    // Pass 1: the radical restriction has zero entropy.
    let h_sub = entropy(&sub, kind, Method::Auto, VERIFY_PRECISION)?;
    if !h_sub.is_zero() {
        return Err(Error::Verification(format!(
            "Pinsker radical restriction has nonzero {} entropy {h_sub}",
            kind.name()
        )));
    }

    // Pass 2: entropy is positive on cyclic subobjects of sampled nonzero
    // quotient points (complete positivity spot check).
    for x in sample_nonzero(&quot, POSITIVITY_SAMPLES) {
        if !point_positive(&quot, &x, kind)? {
            return Err(Error::Verification(format!(
                "quotient by the Pinsker radical has a zero-entropy cyclic subobject \
                 (kind {})",
                kind.name()
            )));
        }
    }
    Ok(p)
}

/// Classifies the flow in the torsion theory of the given kind.
///
/// # Errors
///
/// As [`pinsker`].
pub fn classify(flow: &Flow, kind: EntropyKind) -> Result<Classification> {
    let p = pinsker(flow, kind)?;
    let (sub, quot) = sub_quot(flow, &p)?;
    let class = if p.is_whole(flow) {
        TorsionClass::Torsion
    } else if p.is_zero(flow) {
        TorsionClass::TorsionFree
    } else {
        TorsionClass::Mixed
    };
    Ok(Classification {
        class,
        pinsker: p,
        sub_iso: sub.iso_summary(),
        quot_iso: quot.iso_summary(),
    })
}

/// The closed-form radical, before verification.
fn raw_pinsker(flow: &Flow, kind: EntropyKind) -> Result<SubmoduleDesc> {
    match kind {
        EntropyKind::Ha => radical(flow, RadicalKind::QuasiPeriodic),
        EntropyKind::EntRank => radical(flow, RadicalKind::Algebraic),
        EntropyKind::Ent => {
            let mut parts = Vec::new();
            for part in flow.parts() {
                match part {
                    // The torsion subgroup of a finitely generated group is
                    // finite, so the whole part has zero torsion entropy.
                    FlowPart::Fg(f) => parts.push(PartSub::Lattice(f.group().whole_subgroup())),
                    FlowPart::Cyclic(c) => {
                        if c.base().is_zero() {
                            let g = if c.poly().is_zero() {
                                // ℤ[t] is torsion-free: zero entropy everywhere.
                                IntPoly::one()
                            } else {
                                // Zero entropy exactly on multiples of the
                                // content (the largest torsion-free-content
                                // submodule).
                                IntPoly::constant(BigInt::from(c.poly().content()))
                            };
                            parts.push(PartSub::Generator(g));
                        } else {
                            // Per prime: finite components are harmless, full
                            // shift components carry log p on every nonzero
                            // submodule.
                            let mut residues = Vec::new();
                            for &p in &c.squarefree_primes()? {
                                let g = if c.poly_mod(p).is_zero() {
                                    ModPoly::zero(p)
                                } else {
                                    ModPoly::one(p)
                                };
                                residues.push((p, g));
                            }
                            parts.push(PartSub::Generator(crt_polys(&residues)));
                        }
                    }
                }
            }
            SubmoduleDesc::new(flow, parts)
        }
    }
}

// ---------------------------------------------------------------------------
// Positivity spot check.
// ---------------------------------------------------------------------------

/// Deterministic nonzero sample points of a flow (up to `limit`).
fn sample_nonzero(flow: &Flow, limit: usize) -> Vec<Element> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, part) in flow.parts().iter().enumerate() {
        let payloads: Vec<PartElement> = match part {
            FlowPart::Fg(f) => {
                let k = f.group().ambient();
                let mut v = Vec::new();
                for j in 0..k {
                    let mut e = vec![BigInt::zero(); k];
                    e[j] = BigInt::one();
                    v.push(PartElement::Vector(e));
                }
                for j in 1..k {
                    let mut e = vec![BigInt::zero(); k];
                    e[0] = BigInt::one();
                    e[j] = BigInt::one();
                    v.push(PartElement::Vector(e));
                }
                v
            }
            FlowPart::Cyclic(_) => [
                IntPoly::one(),
                IntPoly::from_i64s(&[0, 1]),
                IntPoly::from_i64s(&[0, 0, 1]),
                IntPoly::from_i64s(&[1, 1]),
                IntPoly::from_i64s(&[2]),
            ]
            .into_iter()
            .map(PartElement::Poly)
            .collect(),
        };
        for payload in payloads {
            let mut e = flow.zero_element();
            e.parts[i] = payload;
            let e = flow.reduce_element(&e);
            if !flow.element_is_zero(&e) && seen.insert(e.clone()) {
                out.push(e);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Does the cyclic subobject generated by `x` have positive entropy?
///
/// Decided in closed form part by part: the entropy of `⟨x⟩` is positive
/// exactly when some component's cyclic subobject has positive entropy
/// (entropy adds over the split and is monotone under subobjects).
fn point_positive(flow: &Flow, x: &Element, kind: EntropyKind) -> Result<bool> {
    for (pe, part) in x.parts.iter().zip(flow.parts()) {
        match (pe, part) {
            (PartElement::Vector(v), FlowPart::Fg(f)) => {
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                if kind == EntropyKind::Ha && fg_point_positive_ha(f, v)? {
                    return Ok(true);
                }
                // ent and ent_rank vanish on every finitely generated group
                // part, so such components never witness positivity.
            }
            (PartElement::Poly(xp), FlowPart::Cyclic(c)) => {
                if xp.is_zero() {
                    continue;
                }
                if cyclic_point_positive(c, xp, kind)? {
                    return Ok(true);
                }
            }
            _ => return Err(Error::Domain("element does not match the flow shape".into())),
        }
    }
    Ok(false)
}

/// The smallest invariant subgroup containing `v`: the stabilized span of
/// the forward orbit (stabilization is guaranteed by the ascending chain
/// condition, with the chain cap as a monitored budget).
pub(crate) fn orbit_lattice(f: &FgFlow, v: &[BigInt]) -> Result<Subgroup> {
    let group = f.group();
    let cap = group.ambient() * (group.torsion_exponent().bits() as usize + 2) + 8;
    let mut current = group.subgroup(&[v.to_vec()]);
    for _ in 0..cap {
        let img = image_subgroup(group, f.matrix(), &current);
        let mut gens: Vec<Vec<BigInt>> =
            (0..current.basis().cols()).map(|j| current.basis().col(j)).collect();
        gens.extend((0..img.basis().cols()).map(|j| img.basis().col(j)));
        let next = group.subgroup(&gens);
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::Internal("orbit lattice failed to stabilize".into()))
}

/// `ha(⟨x⟩) > 0` on a group part: restrict to the stabilized orbit lattice
/// and evaluate the closed form.
fn fg_point_positive_ha(f: &FgFlow, v: &[BigInt]) -> Result<bool> {
    let parent = Flow::single(FlowPart::Fg(f.clone()));
    let lattice = orbit_lattice(f, v)?;
    let desc = SubmoduleDesc::new(&parent, vec![PartSub::Lattice(lattice)])?;
    let (sub, _) = sub_quot(&parent, &desc)?;
    let h = entropy(&sub, EntropyKind::Ha, Method::Auto, VERIFY_PRECISION)?;
    Ok(!h.is_zero())
}

/// Positivity of the cyclic subobject of a cyclic part.
fn cyclic_point_positive(c: &CyclicFlow, xp: &IntPoly, kind: EntropyKind) -> Result<bool> {
    let base = c.base();
    let f = c.poly();
    if base.is_zero() {
        if f.is_zero() {
            // ⟨x⟩ ≅ ℤ[t]: infinite ha, unit rank growth, zero ent.
            return Ok(matches!(kind, EntropyKind::Ha | EntropyKind::EntRank));
        }
        // ⟨x⟩ ≅ ℤ[t]/(f / gcd(f, x)).
        let ann = f.div_exact(&IntPoly::gcd(f, xp)).expect("gcd divides");
        return Ok(match kind {
            EntropyKind::Ha => !mahler(&ann, VERIFY_PRECISION)?.is_zero(),
            EntropyKind::Ent => !ann.content().is_one(),
            EntropyKind::EntRank => false,
        });
    }
    if kind == EntropyKind::EntRank {
        return Ok(false); // torsion parts have no rank growth
    }
    // ha = ent on torsion parts: positive exactly when x meets a full-shift
    // prime component.
    for &p in &c.squarefree_primes()? {
        if c.poly_mod(p).is_zero() && !ModPoly::from_intpoly(xp, p).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::parse_flow;

    fn flow_of(text: &str) -> Flow {
        parse_flow(text).expect("valid document")
    }

    #[test]
    fn bernoulli_pinsker_is_zero() {
        for p in [2u64, 3, 5] {
            let flow = flow_of(&format!(r#"{{"type":"cyclic","base":{p},"poly":[]}}"#));
            let desc = pinsker(&flow, EntropyKind::Ent).unwrap();
            assert!(desc.is_zero(&flow));
            let c = classify(&flow, EntropyKind::Ent).unwrap();
            assert_eq!(c.class, TorsionClass::TorsionFree);
        }
    }

    #[test]
    fn doubling_pinsker_ha() {
        let flow = flow_of(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#);
        let desc = pinsker(&flow, EntropyKind::Ha).unwrap();
        assert!(desc.is_zero(&flow));
        // ent sees no torsion: the same flow is ent-torsion.
        let desc = pinsker(&flow, EntropyKind::Ent).unwrap();
        assert!(desc.is_whole(&flow));
    }

    #[test]
    fn finite_flows_are_torsion() {
        let flow = flow_of(r#"{"type":"fg","rank":1,"relations":[[6]],"matrix":[[2]]}"#);
        for kind in [EntropyKind::Ha, EntropyKind::Ent, EntropyKind::EntRank] {
            let c = classify(&flow, kind).unwrap();
            assert_eq!(c.class, TorsionClass::Torsion, "{kind:?}");
        }
    }

    #[test]
    fn half_flow_classification_contrast() {
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#);
        let ha = classify(&flow, EntropyKind::Ha).unwrap();
        assert_eq!(ha.class, TorsionClass::TorsionFree);
        let rank = classify(&flow, EntropyKind::EntRank).unwrap();
        assert_eq!(rank.class, TorsionClass::Torsion);
    }

    #[test]
    fn mixed_diagonal_split() {
        let flow = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,2]]}"#);
        let c = classify(&flow, EntropyKind::Ha).unwrap();
        assert_eq!(c.class, TorsionClass::Mixed);
        let PartSub::Lattice(lat) = &c.pinsker.parts()[0] else { panic!() };
        assert_eq!(lat.lattice_rank(), 1);
        assert!(lat.contains(&[BigInt::one(), BigInt::zero()]));
        assert_eq!(c.sub_iso, "Z");
        assert_eq!(c.quot_iso, "Z");
    }

    #[test]
    fn content_flow_pinsker_ent() {
        // ℤ[t]/(6(t−2)): P_ent = (6)/(f), a proper nonzero radical.
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[-12,6]}"#);
        let c = classify(&flow, EntropyKind::Ent).unwrap();
        assert_eq!(c.class, TorsionClass::Mixed);
        let PartSub::Generator(g) = &c.pinsker.parts()[0] else { panic!() };
        assert_eq!(g, &IntPoly::from_i64s(&[6]));
    }

    #[test]
    fn rank_pinsker_of_free_shift() {
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[]}"#);
        let desc = pinsker(&flow, EntropyKind::EntRank).unwrap();
        assert!(desc.is_zero(&flow));
        // ent is blind to the free shift: everything is a zero-entropy sub.
        let desc = pinsker(&flow, EntropyKind::Ent).unwrap();
        assert!(desc.is_whole(&flow));
    }

    #[test]
    fn pinsker_on_mixed_base() {
        // Base 6 with a polynomial vanishing mod 2 only: the mod-3 finite
        // component survives in the radical, the mod-2 shift dies.
        let flow = flow_of(r#"{"type":"cyclic","base":6,"poly":[2,2]}"#);
        let desc = pinsker(&flow, EntropyKind::Ent).unwrap();
        let c = classify(&flow, EntropyKind::Ent).unwrap();
        assert_eq!(c.class, TorsionClass::Mixed);
        // 2 lands in the finite mod-3 component (zero mod 2), 3 in the
        // mod-2 shift component: only the former is zero-entropy.
        let x = Element { parts: vec![PartElement::Poly(IntPoly::from_i64s(&[2]))] };
        assert!(desc.contains_element(&flow, &x).unwrap());
        let y = Element { parts: vec![PartElement::Poly(IntPoly::from_i64s(&[3]))] };
        assert!(!desc.contains_element(&flow, &y).unwrap());
    }

    #[test]
    fn sandwich_on_samples() {
        for doc in [
            r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#,
            r#"{"type":"cyclic","base":5,"poly":[]}"#,
            r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,2]]}"#,
            r#"{"type":"cyclic","base":6,"poly":[2,2]}"#,
            r#"{"type":"fg","rank":2,"relations":[[4,0]],"matrix":[[1,1],[0,3]]}"#,
        ] {
            let flow = flow_of(doc);
            let q = radical(&flow, RadicalKind::QuasiPeriodic).unwrap();
            let w = radical(&flow, RadicalKind::Algebraic).unwrap();
            for kind in [EntropyKind::Ha, EntropyKind::Ent, EntropyKind::EntRank] {
                let p = pinsker(&flow, kind).unwrap();
                assert!(q.is_subset_of(&p, &flow), "Q ⊆ P fails for {kind:?} on {doc}");
                assert!(p.is_subset_of(&w, &flow), "P ⊆ W fails for {kind:?} on {doc}");
            }
        }
    }
}
