//! Algebraic flows: the data model.
//!
//! A flow is a module together with a distinguished endomorphism —
//! equivalently a ℤ[t]-module with t acting as the map. The representable
//! class here is finite direct sums of two kinds of parts:
//!
//! - [`FgFlow`]: a finitely generated abelian group with an integer matrix
//!   that preserves its relation lattice;
//! - [`CyclicFlow`]: a cyclic ℤ[t]-module ℤ[t]/(c, f) with t acting by
//!   multiplication — base c = 0 encodes ℤ-coefficients, c > 0 encodes
//!   ℤ/c-coefficients, and poly f = 0 encodes the right shift on (ℤ/c)[t].
//!
//! The module provides parsing and serialization of the JSON wire format,
//! element arithmetic with canonical representatives, companion-matrix
//! conversion, pointwise minimal polynomials, flow powers, and exact
//! subflow/quotient-flow formation along invariant submodules.

pub(crate) mod zideal;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::abgroup::{express_in_hnf, FgAbGroup, IMat, Subgroup};
use crate::error::{Error, Result};
use crate::intpoly::factor::ModPoly;
use crate::intpoly::{power_poly, IntPoly};
use zideal::ZtIdealBasis;

// ---------------------------------------------------------------------------
// Flow parts.
// ---------------------------------------------------------------------------

/// A self-map of a finitely generated abelian group: the matrix acts on
/// ambient coordinates and maps the relation lattice into itself.
#[derive(Clone, PartialEq, Eq)]
pub struct FgFlow {
    group: FgAbGroup,
    matrix: IMat,
}

impl FgFlow {
    /// Validates that the matrix descends to the group.
    ///
    /// # Errors
    ///
    /// `Domain` when the matrix has the wrong shape or does not preserve the
    /// relation lattice.
    pub fn new(group: FgAbGroup, matrix: IMat) -> Result<Self> {
        if matrix.rows() != group.ambient() || matrix.cols() != group.ambient() {
            return Err(Error::Domain(format!(
                "matrix is {}x{} but the group has ambient rank {}",
                matrix.rows(),
                matrix.cols(),
                group.ambient()
            )));
        }
        if !group.preserves_relations(&matrix) {
            return Err(Error::Domain(
                "matrix does not preserve the relation lattice (not an endomorphism)".into(),
            ));
        }
        Ok(FgFlow { group, matrix })
    }

    #[must_use]
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    #[must_use]
    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    /// Induced integer matrix on the free quotient M/t(M) (Smith coordinates).
    #[must_use]
    pub fn free_quotient_matrix(&self) -> IMat {
        let dec = self.group.decomposition();
        let b = dec.u.mul(&self.matrix).mul(&dec.u_inv);
        let s = dec.torsion_count;
        let r = dec.ambient - s;
        let mut out = IMat::zero(r, r);
        for i in 0..r {
            for j in 0..r {
                out.set(i, j, b.get(s + i, s + j).clone());
            }
            // Torsion maps into torsion, so the free rows of torsion columns
            // vanish identically.
            for j in 0..s {
                debug_assert!(b.get(s + i, j).is_zero());
            }
        }
        out
    }
}

impl fmt::Debug for FgFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgFlow on {}", self.group.iso_summary())
    }
}

/// A cyclic ℤ[t]-module ℤ[t]/(c, f) with t acting by multiplication.
///
/// Canonical form: for c > 0 the coefficients of f lie in [0, c) (and a
/// constant f is folded into the base via a gcd); for c = 0 the polynomial
/// has positive leading coefficient, and nonzero constants again fold into
/// the base. The pair (c, 0) is the right shift on (ℤ/c)[t]; (0, 0) is the
/// shift on ℤ[t]; (1, 0) is the zero module.
#[derive(Clone)]
pub struct CyclicFlow {
    base: BigUint,
    poly: IntPoly,
    ideal: ZtIdealBasis,
}

impl PartialEq for CyclicFlow {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.poly == other.poly
    }
}

impl Eq for CyclicFlow {}

impl CyclicFlow {
    /// Builds the canonical form of ℤ[t]/(base, poly).
    #[must_use]
    pub fn new(base: BigUint, poly: IntPoly) -> Self {
        let (mut base, mut poly) = (base, poly);
        loop {
            if !base.is_zero() {
                let c = BigInt::from(base.clone());
                let coeffs = poly.coeffs().iter().map(|a| a.mod_floor(&c)).collect();
                poly = IntPoly::new(coeffs);
            } else {
                poly = poly.normalize_sign().1;
            }
            if poly.is_zero() {
                break;
            }
            if let Some(d) = poly.degree() {
                if d > 0 {
                    break;
                }
            }
            // Constant polynomial: fold into the base and re-normalize.
            let m = poly.lc().expect("nonzero constant").magnitude().clone();
            base = if base.is_zero() { m } else { base.gcd(&m) };
            poly = IntPoly::zero();
        }
        if base.is_one() {
            poly = IntPoly::zero();
        }
        let ideal = ZtIdealBasis::for_module(&base, &poly);
        CyclicFlow { base, poly, ideal }
    }

    #[must_use]
    pub fn base(&self) -> &BigUint {
        &self.base
    }

    #[must_use]
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Defining ideal (base, poly) as a strong Gröbner basis.
    #[must_use]
    pub fn ideal(&self) -> &ZtIdealBasis {
        &self.ideal
    }

    /// Is this the zero module?
    #[must_use]
    pub fn is_trivial(&self) -> bool {
        self.ideal.is_whole_ring()
    }

    /// Is this a shift part (poly = 0)?
    #[must_use]
    pub fn is_shift(&self) -> bool {
        self.poly.is_zero()
    }

    /// Canonical representative of an element.
    #[must_use]
    pub fn reduce(&self, x: &IntPoly) -> IntPoly {
        self.ideal.normal_form(x)
    }

    /// Underlying group order (`None` when infinite).
    #[must_use]
    pub fn order(&self) -> Option<BigUint> {
        self.ideal.quotient_order()
    }

    /// Prime factorization of a positive base.
    ///
    /// # Errors
    ///
    /// `UnsupportedBase` when the base is zero, does not fit in a machine
    /// word, or resists the trial-division budget.
    pub fn base_primes(&self) -> Result<Vec<(u64, u32)>> {
        factor_base(&self.base)
    }

    /// Requires the base to be 0 or squarefree and returns the (possibly
    /// empty) list of primes; the gate for radical and subquotient work.
    ///
    /// # Errors
    ///
    /// `UnsupportedBase` for non-squarefree or oversized bases.
    pub fn squarefree_primes(&self) -> Result<Vec<u64>> {
        if self.base.is_zero() {
            return Ok(Vec::new());
        }
        let factors = self.base_primes()?;
        if let Some((p, _)) = factors.iter().find(|(_, e)| *e > 1) {
            return Err(Error::UnsupportedBase(format!(
                "base {} is divisible by {}^2; only squarefree bases are decidable here",
                self.base, p
            )));
        }
        Ok(factors.into_iter().map(|(p, _)| p).collect())
    }

    /// Reduction of the defining polynomial mod a prime of the base.
    #[must_use]
    pub(crate) fn poly_mod(&self, p: u64) -> ModPoly {
        ModPoly::from_intpoly(&self.poly, p)
    }

    #[must_use]
    pub fn iso_summary(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        if self.base.is_zero() {
            if self.poly.is_zero() {
                return "Z[t]".to_string();
            }
            return format!("Z[t]/({})", self.poly);
        }
        if self.poly.is_zero() {
            return format!("Z/{}[t]", self.base);
        }
        format!("Z[t]/({}, {})", self.base, self.poly)
    }
}

impl fmt::Debug for CyclicFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicFlow({})", self.iso_summary())
    }
}

/// One direct summand of a flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowPart {
    Fg(FgFlow),
    Cyclic(CyclicFlow),
}

impl FlowPart {
    /// Group order of the part (`None` when infinite).
    #[must_use]
    pub fn order(&self) -> Option<BigUint> {
        match self {
            FlowPart::Fg(p) => p.group().order(),
            FlowPart::Cyclic(p) => p.order(),
        }
    }

    #[must_use]
    pub fn iso_summary(&self) -> String {
        match self {
            FlowPart::Fg(p) => p.group().iso_summary(),
            FlowPart::Cyclic(p) => p.iso_summary(),
        }
    }
}

/// A direct sum of flow parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    parts: Vec<FlowPart>,
}

impl Flow {
    /// Builds from a nonempty list of parts.
    ///
    /// # Errors
    ///
    /// `Domain` on an empty part list.
    pub fn new(parts: Vec<FlowPart>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a flow needs at least one part".into()));
        }
        Ok(Flow { parts })
    }

    #[must_use]
    pub fn single(part: FlowPart) -> Self {
        Flow { parts: vec![part] }
    }

    #[must_use]
    pub fn parts(&self) -> &[FlowPart] {
        &self.parts
    }

    /// Total group order (`None` when any part is infinite).
    #[must_use]
    pub fn order(&self) -> Option<BigUint> {
        let mut total = BigUint::one();
        for part in &self.parts {
            total *= part.order()?;
        }
        Some(total)
    }

    #[must_use]
    pub fn iso_summary(&self) -> String {
        self.parts.iter().map(FlowPart::iso_summary).collect::<Vec<_>>().join(" (+) ")
    }
}

// ---------------------------------------------------------------------------
// Elements.
// ---------------------------------------------------------------------------

/// Component of an element in one flow part: an ambient integer vector for
/// group parts, a polynomial representative for cyclic parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PartElement {
    Vector(Vec<BigInt>),
    Poly(IntPoly),
}

/// An element of a flow (one component per part).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub parts: Vec<PartElement>,
}

impl Flow {
    /// The zero element.
    #[must_use]
    pub fn zero_element(&self) -> Element {
        let parts = self
            .parts
            .iter()
            .map(|p| match p {
                FlowPart::Fg(f) => PartElement::Vector(vec![BigInt::zero(); f.group().ambient()]),
                FlowPart::Cyclic(_) => PartElement::Poly(IntPoly::zero()),
            })
            .collect();
        Element { parts }
    }

    /// Validates component count and vector lengths.
    ///
    /// # Errors
    ///
    /// `Domain` on shape mismatch.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        if e.parts.len() != self.parts.len() {
            return Err(Error::Domain(format!(
                "element has {} components but the flow has {} parts",
                e.parts.len(),
                self.parts.len()
            )));
        }
        for (i, (pe, part)) in e.parts.iter().zip(&self.parts).enumerate() {
            match (pe, part) {
                (PartElement::Vector(v), FlowPart::Fg(f)) => {
                    if v.len() != f.group().ambient() {
                        return Err(Error::Domain(format!(
                            "component {i}: vector length {} != ambient rank {}",
                            v.len(),
                            f.group().ambient()
                        )));
                    }
                }
                (PartElement::Poly(_), FlowPart::Cyclic(_)) => {}
                _ => {
                    return Err(Error::Domain(format!(
                        "component {i}: payload kind does not match the part kind"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical representative (per-part residue / ideal normal form).
    #[must_use]
    pub fn reduce_element(&self, e: &Element) -> Element {
        let parts = e
            .parts
            .iter()
            .zip(&self.parts)
            .map(|(pe, part)| match (pe, part) {
                (PartElement::Vector(v), FlowPart::Fg(f)) => {
                    PartElement::Vector(f.group().residue(v))
                }
                (PartElement::Poly(x), FlowPart::Cyclic(c)) => PartElement::Poly(c.reduce(x)),
                _ => unreachable!("element checked against flow shape"),
            })
            .collect();
        Element { parts }
    }

    /// Applies the flow map once (canonical output).
    #[must_use]
    pub fn apply(&self, e: &Element) -> Element {
        let parts = e
            .parts
            .iter()
            .zip(&self.parts)
            .map(|(pe, part)| match (pe, part) {
                (PartElement::Vector(v), FlowPart::Fg(f)) => {
                    PartElement::Vector(f.group().residue(&f.matrix().mul_vec(v)))
                }
                (PartElement::Poly(x), FlowPart::Cyclic(c)) => {
                    PartElement::Poly(c.reduce(&x.shift(1)))
                }
                _ => unreachable!("element checked against flow shape"),
            })
            .collect();
        Element { parts }
    }

    /// Is the element zero (after reduction)?
    #[must_use]
    pub fn element_is_zero(&self, e: &Element) -> bool {
        self.reduce_element(e).parts.iter().all(|pe| match pe {
            PartElement::Vector(v) => v.iter().all(Zero::is_zero),
            PartElement::Poly(x) => x.is_zero(),
        })
    }
}

// ---------------------------------------------------------------------------
// Submodule descriptors.
// ---------------------------------------------------------------------------

/// Per-part description of an invariant submodule: a divisor-generator for
/// cyclic parts, an invariant subgroup lattice for group parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartSub {
    Generator(IntPoly),
    Lattice(Subgroup),
}

/// An invariant submodule of a flow, with an isomorphism-type summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleDesc {
    parts: Vec<PartSub>,
    iso: String,
}

impl SubmoduleDesc {
    /// Assembles a descriptor and computes its summary string.
    ///
    /// # Errors
    ///
    /// `Domain` when the component count does not match the flow.
    pub fn new(flow: &Flow, parts: Vec<PartSub>) -> Result<Self> {
        if parts.len() != flow.parts().len() {
            return Err(Error::Domain(format!(
                "descriptor has {} components but the flow has {} parts",
                parts.len(),
                flow.parts().len()
            )));
        }
        let iso = parts
            .iter()
            .zip(flow.parts())
            .map(|(ps, part)| part_sub_iso(part, ps))
            .collect::<Vec<_>>()
            .join(" (+) ");
        Ok(SubmoduleDesc { parts, iso })
    }

    /// The whole flow as a submodule of itself.
    #[must_use]
    pub fn whole(flow: &Flow) -> Self {
        let parts = flow
            .parts()
            .iter()
            .map(|p| match p {
                FlowPart::Fg(f) => PartSub::Lattice(f.group().whole_subgroup()),
                FlowPart::Cyclic(_) => PartSub::Generator(IntPoly::one()),
            })
            .collect();
        SubmoduleDesc::new(flow, parts).expect("shape matches by construction")
    }

    /// The zero submodule.
    #[must_use]
    pub fn zero(flow: &Flow) -> Self {
        let parts = flow
            .parts()
            .iter()
            .map(|p| match p {
                FlowPart::Fg(f) => PartSub::Lattice(f.group().zero_subgroup()),
                FlowPart::Cyclic(c) => PartSub::Generator(c.poly().clone()),
            })
            .collect();
        SubmoduleDesc::new(flow, parts).expect("shape matches by construction")
    }

    #[must_use]
    pub fn parts(&self) -> &[PartSub] {
        &self.parts
    }

    #[must_use]
    pub fn iso(&self) -> &str {
        &self.iso
    }

    /// Does the descriptor denote the whole flow?
    #[must_use]
    pub fn is_whole(&self, flow: &Flow) -> bool {
        self.parts.iter().zip(flow.parts()).all(|(ps, part)| match (ps, part) {
            (PartSub::Lattice(n), FlowPart::Fg(f)) => *n == f.group().whole_subgroup(),
            (PartSub::Generator(g), FlowPart::Cyclic(c)) => {
                let mut gens = vec![g.clone(), c.poly().clone()];
                if !c.base().is_zero() {
                    gens.push(IntPoly::constant(BigInt::from(c.base().clone())));
                }
                ZtIdealBasis::new(&gens).is_whole_ring()
            }
            _ => false,
        })
    }

    /// Does the descriptor denote the zero submodule?
    #[must_use]
    pub fn is_zero(&self, flow: &Flow) -> bool {
        self.parts.iter().zip(flow.parts()).all(|(ps, part)| match (ps, part) {
            (PartSub::Lattice(n), FlowPart::Fg(f)) => *n == f.group().zero_subgroup(),
            (PartSub::Generator(g), FlowPart::Cyclic(c)) => c.ideal().contains(g),
            _ => false,
        })
    }

    /// Containment of descriptors on the same flow.
    #[must_use]
    pub fn is_subset_of(&self, other: &SubmoduleDesc, flow: &Flow) -> bool {
        self.parts.iter().zip(&other.parts).zip(flow.parts()).all(|((a, b), part)| {
            match (a, b, part) {
                (PartSub::Lattice(n), PartSub::Lattice(m), _) => n.is_subset_of(m),
                (PartSub::Generator(g), PartSub::Generator(h), FlowPart::Cyclic(c)) => {
                    // (g) ⊆ (h) + (c, f) ⟺ g reduces to zero mod (h, c, f).
                    let mut gens = vec![h.clone(), c.poly().clone()];
                    if !c.base().is_zero() {
                        gens.push(IntPoly::constant(BigInt::from(c.base().clone())));
                    }
                    ZtIdealBasis::new(&gens).contains(g)
                }
                _ => false,
            }
        })
    }

    /// Membership of a point in the denoted submodule.
    ///
    /// # Errors
    ///
    /// `Domain` when the element does not match the flow shape.
    pub fn contains_element(&self, flow: &Flow, x: &Element) -> Result<bool> {
        flow.check_element(x)?;
        for ((ps, part), pe) in self.parts.iter().zip(flow.parts()).zip(&x.parts) {
            match (ps, part, pe) {
                (PartSub::Lattice(n), FlowPart::Fg(_), PartElement::Vector(v)) => {
                    if !n.contains(v) {
                        return Ok(false);
                    }
                }
                (PartSub::Generator(g), FlowPart::Cyclic(c), PartElement::Poly(xp)) => {
                    // x lies in the submodule generated by g exactly when it
                    // reduces to zero mod the ideal (g, f, c).
                    let mut gens = vec![g.clone(), c.poly().clone()];
                    if !c.base().is_zero() {
                        gens.push(IntPoly::constant(BigInt::from(c.base().clone())));
                    }
                    if !ZtIdealBasis::new(&gens).contains(xp) {
                        return Ok(false);
                    }
                }
                _ => {
                    return Err(Error::Domain(
                        "element component kind does not match the descriptor".into(),
                    ))
                }
            }
        }
        Ok(true)
    }

    /// Wire format: `{"iso": …, "parts": [{"part": i, "generator"|"subgroup": …}]}`.
    #[must_use]
    pub fn to_json(&self) -> Value {
        let parts: Vec<Value> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, ps)| match ps {
                PartSub::Generator(g) => json!({
                    "part": i,
                    "generator": poly_to_json(g),
                }),
                PartSub::Lattice(n) => {
                    let basis = n.basis();
                    let cols: Vec<Value> = (0..basis.cols())
                        .map(|j| Value::Array(basis.col(j).iter().map(int_to_json).collect()))
                        .collect();
                    json!({
                        "part": i,
                        "subgroup": cols,
                    })
                }
            })
            .collect();
        json!({ "iso": self.iso, "parts": parts })
    }
}

/// Summary of one submodule component.
fn part_sub_iso(part: &FlowPart, ps: &PartSub) -> String {
    match (part, ps) {
        (FlowPart::Fg(f), PartSub::Lattice(n)) => {
            // Structure of N / relations: express the relation lattice in the
            // subgroup basis and read off the quotient.
            let basis = n.basis();
            if basis.cols() == 0 {
                return "0".to_string();
            }
            let rel = f.group().relations();
            let mut coords = Vec::new();
            for j in 0..rel.cols() {
                match express_in_hnf(basis, &rel.col(j)) {
                    Some(x) => coords.push(x),
                    None => return "(subgroup)".to_string(),
                }
            }
            FgAbGroup::new(basis.cols(), &IMat::from_cols(basis.cols(), coords)).iso_summary()
        }
        (FlowPart::Cyclic(c), PartSub::Generator(g)) => {
            if c.ideal().contains(g) {
                return "0".to_string();
            }
            match cyclic_sub_quot(c, g) {
                Ok((sub, _)) => sub.iso_summary(),
                Err(_) => format!("({g}) in {}", c.iso_summary()),
            }
        }
        _ => "(mismatched)".to_string(),
    }
}

// ---------------------------------------------------------------------------
// JSON wire format.
// ---------------------------------------------------------------------------

/// Parses the flow JSON document format:
/// `{"type":"fg","rank":k,"relations":[[…]],"matrix":[[…]]}`,
/// `{"type":"cyclic","base":c,"poly":[a0,…]}`, or
/// `{"type":"sum","parts":[…]}`.
///
/// # Errors
///
/// `Parse` with a location path on schema violations; `Domain` when the
/// matrix does not define an endomorphism.
pub fn parse_flow(text: &str) -> Result<Flow> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let mut parts = Vec::new();
    parse_parts(&value, "$", &mut parts)?;
    Flow::new(parts)
}

fn parse_parts(v: &Value, path: &str, out: &mut Vec<FlowPart>) -> Result<()> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an object")))?;
    let ty = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse(format!("{path}.type: expected a string")))?;
    match ty {
        "fg" => {
            let rank = obj
                .get("rank")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("{path}.rank: expected a nonnegative integer")))?;
            let rank = usize::try_from(rank)
                .map_err(|_| Error::Parse(format!("{path}.rank: out of range")))?;
            if rank > 64 {
                return Err(Error::Parse(format!("{path}.rank: {rank} exceeds the supported 64")));
            }
            let relations = parse_int_rows(
                obj.get("relations").unwrap_or(&Value::Array(vec![])),
                &format!("{path}.relations"),
                Some(rank),
            )?;
            let matrix_rows = parse_int_rows(
                obj.get("matrix")
                    .ok_or_else(|| Error::Parse(format!("{path}.matrix: missing")))?,
                &format!("{path}.matrix"),
                Some(rank),
            )?;
            if matrix_rows.len() != rank {
                return Err(Error::Parse(format!(
                    "{path}.matrix: expected {rank} rows, found {}",
                    matrix_rows.len()
                )));
            }
            // Relation vectors arrive as rows; the lattice is their span.
            let rel_mat = IMat::from_rows(relations, rank)
                .map_err(|e| Error::Parse(format!("{path}.relations: {e}")))?
                .transpose();
            let group = FgAbGroup::new(rank, &rel_mat);
            let matrix = IMat::from_rows(matrix_rows, rank)
                .map_err(|e| Error::Parse(format!("{path}.matrix: {e}")))?;
            out.push(FlowPart::Fg(FgFlow::new(group, matrix)?));
            Ok(())
        }
        "cyclic" => {
            let base_val = obj
                .get("base")
                .ok_or_else(|| Error::Parse(format!("{path}.base: missing")))?;
            let base_int = parse_int(base_val, &format!("{path}.base"))?;
            if base_int.is_negative() {
                return Err(Error::Parse(format!("{path}.base: must be nonnegative")));
            }
            let poly_val = obj.get("poly").unwrap_or(&Value::Array(vec![])).clone();
            let coeffs = parse_int_array(&poly_val, &format!("{path}.poly"))?;
            out.push(FlowPart::Cyclic(CyclicFlow::new(
                base_int.magnitude().clone(),
                IntPoly::new(coeffs),
            )));
            Ok(())
        }
        "sum" => {
            let parts = obj
                .get("parts")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("{path}.parts: expected an array")))?;
            if parts.is_empty() {
                return Err(Error::Parse(format!("{path}.parts: must be nonempty")));
            }
            for (i, p) in parts.iter().enumerate() {
                parse_parts(p, &format!("{path}.parts[{i}]"), out)?;
            }
            Ok(())
        }
        other => Err(Error::Parse(format!(
            "{path}.type: unknown flow type {other:?} (expected fg, cyclic, or sum)"
        ))),
    }
}

fn parse_int(v: &Value, path: &str) -> Result<BigInt> {
    let n = v
        .as_number()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an integer")))?;
    let s = n.to_string();
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::Parse(format!("{path}: expected an integer, found {s}")));
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
        .ok_or_else(|| Error::Parse(format!("{path}: cannot read integer {s}")))
}

fn parse_int_array(v: &Value, path: &str) -> Result<Vec<BigInt>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_int(x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_int_rows(v: &Value, path: &str, want_len: Option<usize>) -> Result<Vec<Vec<BigInt>>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an array of arrays")))?;
    let mut rows = Vec::new();
    for (i, row) in arr.iter().enumerate() {
        let row = parse_int_array(row, &format!("{path}[{i}]"))?;
        if let Some(k) = want_len {
            if row.len() != k {
                return Err(Error::Parse(format!(
                    "{path}[{i}]: expected length {k}, found {}",
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn int_to_json(x: &BigInt) -> Value {
    let n: serde_json::Number = x
        .to_string()
        .parse()
        .expect("decimal integer strings are valid arbitrary-precision numbers");
    Value::Number(n)
}

fn poly_to_json(f: &IntPoly) -> Value {
    Value::Array(f.coeffs().iter().map(int_to_json).collect())
}

/// Serializes a flow to its canonical JSON document (single parts bare,
/// sums wrapped; matrices row-major; relation vectors as rows).
#[must_use]
pub fn serialize_flow(flow: &Flow) -> String {
    let parts: Vec<Value> = flow.parts().iter().map(part_to_json).collect();
    let doc = if parts.len() == 1 {
        parts.into_iter().next().expect("nonempty")
    } else {
        json!({ "type": "sum", "parts": parts })
    };
    serde_json::to_string(&doc).expect("JSON values serialize")
}

fn part_to_json(part: &FlowPart) -> Value {
    match part {
        FlowPart::Fg(f) => {
            let k = f.group().ambient();
            let rel = f.group().relations();
            let relations: Vec<Value> = (0..rel.cols())
                .map(|j| Value::Array(rel.col(j).iter().map(int_to_json).collect()))
                .collect();
            let matrix: Vec<Value> = (0..k)
                .map(|i| Value::Array(f.matrix().row(i).iter().map(int_to_json).collect()))
                .collect();
            json!({ "type": "fg", "rank": k, "relations": relations, "matrix": matrix })
        }
        FlowPart::Cyclic(c) => {
            json!({
                "type": "cyclic",
                "base": int_to_json(&BigInt::from(c.base().clone())),
                "poly": poly_to_json(c.poly()),
            })
        }
    }
}

/// Parses one element of the given flow. Multi-part flows expect an array of
/// per-part payloads; single-part flows also accept the flat payload.
///
/// # Errors
///
/// `Parse`/`Domain` on malformed payloads.
pub fn parse_element(flow: &Flow, v: &Value, path: &str) -> Result<Element> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an array")))?;
    let flat_single = flow.parts().len() == 1
        && (arr.is_empty() || arr.iter().all(Value::is_number));
    let payloads: Vec<Value> = if flat_single {
        vec![v.clone()]
    } else {
        arr.clone()
    };
    if payloads.len() != flow.parts().len() {
        return Err(Error::Parse(format!(
            "{path}: expected {} component payloads, found {}",
            flow.parts().len(),
            payloads.len()
        )));
    }
    let mut parts = Vec::new();
    for (i, (payload, part)) in payloads.iter().zip(flow.parts()).enumerate() {
        let ints = parse_int_array(payload, &format!("{path}[{i}]"))?;
        match part {
            FlowPart::Fg(_) => parts.push(PartElement::Vector(ints)),
            FlowPart::Cyclic(_) => parts.push(PartElement::Poly(IntPoly::new(ints))),
        }
    }
    let element = Element { parts };
    flow.check_element(&element)?;
    Ok(element)
}

/// Parses a polynomial given as a JSON array of ascending coefficients,
/// for example `[-1, -1, 1]` for t² − t − 1.
///
/// # Errors
///
/// `Parse` on malformed documents or non-integer entries.
pub fn parse_poly_text(text: &str) -> Result<IntPoly> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("poly: {e}")))?;
    Ok(IntPoly::new(parse_int_array(&v, "poly")?))
}

// ---------------------------------------------------------------------------
// Constructions.
// ---------------------------------------------------------------------------

/// Companion flow of a monic polynomial: (ℤⁿ, companion matrix), isomorphic
/// as a ℤ[t]-module to ℤ[t]/(f).
///
/// # Errors
///
/// `Domain` unless f is monic of degree ≥ 1.
pub fn companion(f: &IntPoly) -> Result<FgFlow> {
    let Some(n) = f.degree() else {
        return Err(Error::Domain("companion requires a monic polynomial, got 0".into()));
    };
    if n == 0 || !f.is_monic() {
        return Err(Error::Domain(format!("companion requires a monic polynomial, got {f}")));
    }
    let mut m = IMat::zero(n, n);
    for i in 0..n - 1 {
        m.set(i + 1, i, BigInt::one());
    }
    for i in 0..n {
        m.set(i, n - 1, -f.coeff(i));
    }
    FgFlow::new(FgAbGroup::free(n), m)
}

/// Minimal monic rational polynomial of a point on the free quotient.
///
/// `poly` is primitive with positive leading coefficient; the minimal monic
/// polynomial is `poly / lc(poly)`, and `integral` says whether that is
/// already integral (lc = 1), which characterizes pointwise-integral points
/// on torsion-free parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPolyPoint {
    pub poly: IntPoly,
    pub integral: bool,
}

/// Computes the minimal polynomial of the image of `x` in M/t(M).
///
/// # Errors
///
/// `Domain` when the vector length does not match.
pub fn min_poly_point(flow: &FgFlow, x: &[BigInt]) -> Result<MinPolyPoint> {
    let k = flow.group().ambient();
    if x.len() != k {
        return Err(Error::Domain(format!(
            "point has length {} but the ambient rank is {k}",
            x.len()
        )));
    }
    let dec = flow.group().decomposition();
    let s = dec.torsion_count;
    let r = k - s;
    let y = dec.u.mul_vec(x);
    let free: Vec<BigInt> = y[s..].to_vec();
    let b = flow.free_quotient_matrix();
    // Iterate x, Bx, B²x, … until the first integer dependence.
    let mut iterates: Vec<Vec<BigInt>> = vec![free.clone()];
    for _ in 0..=r {
        let mat = IMat::from_cols(r, iterates.clone());
        let ker = mat.kernel();
        if ker.cols() > 0 {
            debug_assert_eq!(ker.cols(), 1, "first dependence has a 1-dimensional kernel");
            let rel = ker.col(0);
            let g = IntPoly::new(rel).normalize_sign().1.primitive_part();
            let integral = g.is_monic();
            return Ok(MinPolyPoint { poly: g, integral });
        }
        let last = iterates.last().expect("nonempty");
        iterates.push(b.mul_vec(last));
    }
    Err(Error::Internal(
        "no linear dependence found within rank+1 iterates".into(),
    ))
}

/// The k-th power of a flow: matrices are raised to the k-th power; cyclic
/// polynomials are replaced by the characteristic polynomial of the k-th
/// power of their companion action. A shift part splits into k shift
/// copies: under the powered action the monomial residues `t^j` for
/// `j < k` each generate an independent shift orbit.
///
/// # Errors
///
/// `Domain` for k = 0.
pub fn power_flow(flow: &Flow, k: u32) -> Result<Flow> {
    if k == 0 {
        return Err(Error::Domain("flow powers require k >= 1".into()));
    }
    if k == 1 {
        return Ok(flow.clone());
    }
    let mut parts = Vec::new();
    for part in flow.parts() {
        match part {
            FlowPart::Fg(f) => {
                let m = f.matrix().pow(&BigUint::from(k));
                parts.push(FlowPart::Fg(FgFlow::new(f.group().clone(), m)?));
            }
            FlowPart::Cyclic(c) => {
                if c.poly().is_zero() {
                    for _ in 0..k {
                        parts.push(FlowPart::Cyclic(c.clone()));
                    }
                } else {
                    let powered = power_poly(c.poly(), k)?;
                    parts.push(FlowPart::Cyclic(CyclicFlow::new(c.base().clone(), powered)));
                }
            }
        }
    }
    Flow::new(parts)
}

// ---------------------------------------------------------------------------
// Subflows and quotient flows.
// ---------------------------------------------------------------------------

/// Splits a flow along an invariant submodule into (subflow, quotient flow).
///
/// # Errors
///
/// `Domain` when the descriptor is not invariant or a cyclic generator does
/// not divide the defining data; `UnsupportedBase` for non-squarefree
/// positive bases.
pub fn sub_quot(flow: &Flow, n: &SubmoduleDesc) -> Result<(Flow, Flow)> {
    if n.parts().len() != flow.parts().len() {
        return Err(Error::Domain("descriptor does not match the flow shape".into()));
    }
    let mut subs = Vec::new();
    let mut quots = Vec::new();
    for (part, ps) in flow.parts().iter().zip(n.parts()) {
        match (part, ps) {
            (FlowPart::Fg(f), PartSub::Lattice(lat)) => {
                let (s, q) = fg_sub_quot(f, lat)?;
                subs.push(FlowPart::Fg(s));
                quots.push(FlowPart::Fg(q));
            }
            (FlowPart::Cyclic(c), PartSub::Generator(g)) => {
                let (s, q) = cyclic_sub_quot(c, g)?;
                subs.push(FlowPart::Cyclic(s));
                quots.push(FlowPart::Cyclic(q));
            }
            _ => {
                return Err(Error::Domain(
                    "descriptor component kind does not match the part kind".into(),
                ))
            }
        }
    }
    Ok((Flow::new(subs)?, Flow::new(quots)?))
}

/// Restriction and quotient of a group flow along an invariant subgroup.
fn fg_sub_quot(f: &FgFlow, n: &Subgroup) -> Result<(FgFlow, FgFlow)> {
    let basis = n.basis();
    let s = basis.cols();
    // Relations of the subgroup in its own coordinates.
    let rel = f.group().relations();
    let mut rel_coords = Vec::new();
    for j in 0..rel.cols() {
        let x = express_in_hnf(basis, &rel.col(j)).ok_or_else(|| {
            Error::Domain("subgroup does not contain the relation lattice".into())
        })?;
        rel_coords.push(x);
    }
    let sub_group = FgAbGroup::new(s, &IMat::from_cols(s, rel_coords));
    // Restricted matrix: images of basis columns in basis coordinates.
    let mut mat_cols = Vec::new();
    for j in 0..s {
        let img = f.matrix().mul_vec(&basis.col(j));
        let x = express_in_hnf(basis, &img)
            .ok_or_else(|| Error::Domain("subgroup is not invariant under the flow".into()))?;
        mat_cols.push(x);
    }
    let sub = FgFlow::new(sub_group, IMat::from_cols(s, mat_cols))?;
    let quot_group = f.group().quotient(n);
    let quot = FgFlow::new(quot_group, f.matrix().clone())?;
    Ok((sub, quot))
}

/// Split of a cyclic part along a divisor-generator: the submodule (g)/(c,f)
/// is isomorphic to ℤ[t]/(c, f/g) via multiplication by g, and the quotient
/// is ℤ[t]/(c, g).
fn cyclic_sub_quot(c: &CyclicFlow, g: &IntPoly) -> Result<(CyclicFlow, CyclicFlow)> {
    let base = c.base();
    if base.is_zero() {
        let f = c.poly();
        if g.is_zero() {
            return Ok((
                CyclicFlow::new(BigUint::one(), IntPoly::zero()),
                c.clone(),
            ));
        }
        if f.is_zero() {
            // (g) ⊆ ℤ[t] is free of rank one again.
            return Ok((
                CyclicFlow::new(BigUint::zero(), IntPoly::zero()),
                CyclicFlow::new(BigUint::zero(), g.clone()),
            ));
        }
        let q = f.div_exact(g).ok_or_else(|| {
            Error::Domain(format!("generator {g} does not divide the defining polynomial {f}"))
        })?;
        return Ok((
            CyclicFlow::new(BigUint::zero(), q),
            CyclicFlow::new(BigUint::zero(), g.clone()),
        ));
    }
    // Positive base: per-prime PID splits glued back by CRT.
    let primes = c.squarefree_primes()?;
    let mut sub_residues = Vec::new();
    let mut quot_residues = Vec::new();
    for &p in &primes {
        let fp = c.poly_mod(p);
        let gp = ModPoly::from_intpoly(g, p);
        let (sub_p, quot_p) = match (fp.is_zero(), gp.is_zero()) {
            (_, true) => (ModPoly::one(p), fp.clone()),
            (true, false) => (ModPoly::zero(p), gp.make_monic()),
            (false, false) => {
                let gp = gp.make_monic();
                let (q, r) = fp.make_monic().divrem(&gp);
                if !r.is_zero() {
                    return Err(Error::Domain(format!(
                        "generator does not divide the defining polynomial mod {p}"
                    )));
                }
                (q, gp)
            }
        };
        sub_residues.push((p, sub_p));
        quot_residues.push((p, quot_p));
    }
    Ok((
        CyclicFlow::new(base.clone(), crt_polys(&sub_residues)),
        CyclicFlow::new(base.clone(), crt_polys(&quot_residues)),
    ))
}

/// Chinese-remainder combination of per-prime polynomials into one with
/// coefficients modulo the product.
pub(crate) fn crt_polys(residues: &[(u64, ModPoly)]) -> IntPoly {
    let modulus: BigUint = residues.iter().map(|(p, _)| BigUint::from(*p)).product();
    let deg = residues.iter().map(|(_, f)| f.deg_or_0()).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (p, f) in residues {
        let p_big = BigUint::from(*p);
        let others = &modulus / &p_big;
        // Inverse of `others` mod p via Fermat on machine words.
        let o_mod = (&others % &p_big).to_u64().expect("prime fits in u64");
        let inv = mod_inv_u64(o_mod % p, *p);
        let weight = BigInt::from(&others * inv);
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let a = f.coeff(i);
            if a != 0 {
                *slot += &weight * BigInt::from(a);
            }
        }
    }
    let m = BigInt::from(modulus);
    IntPoly::new(coeffs.into_iter().map(|a| a.mod_floor(&m)).collect())
}

fn mod_inv_u64(a: u64, p: u64) -> u64 {
    // p is prime and a ≢ 0.
    let mut result = 1u128;
    let mut base = u128::from(a % p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % u128::from(p);
        }
        base = base * base % u128::from(p);
        e >>= 1;
    }
    u64::try_from(result).expect("residue fits")
}

/// Factors a positive base integer by trial division.
///
/// # Errors
///
/// `UnsupportedBase` for base 0, bases beyond 64 bits, or bases with a prime
/// factor above the trial-division budget.
pub(crate) fn factor_base(base: &BigUint) -> Result<Vec<(u64, u32)>> {
    if base.is_zero() {
        return Err(Error::UnsupportedBase("base 0 has no prime decomposition".into()));
    }
    let mut n = base.to_u64().ok_or_else(|| {
        Error::UnsupportedBase(format!("base {base} exceeds the supported 64-bit range"))
    })?;
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e2 = 0;
    while n % 2 == 0 {
        n /= 2;
        e2 += 1;
    }
    push(2, e2);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        if p > 1_000_000 {
            return Err(Error::UnsupportedBase(format!(
                "base {base} has a prime factor beyond the factoring budget"
            )));
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if n > 1 {
        push(n, 1);
    }
    Ok(out)
}
