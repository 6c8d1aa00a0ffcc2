//! Radical submodules, their ascending towers, and torsion-theoretic
//! closures.
//!
//! Each radical kind is keyed by a class of special polynomials — powers of
//! t (nilpotent), powers of t − 1 (unipotent), products of t and cyclotomics
//! (quasi-periodic), monic polynomials (integral), all nonzero polynomials
//! (algebraic). A point belongs to the radical when some member of the class
//! annihilates it modulo the part's defining data; the radical is the largest
//! invariant submodule all of whose points qualify.
//!
//! Group parts are handled by stabilized preimage iteration (kernel chains
//! for t and t − 1, pullbacks of the torsion subgroup under a cyclotomic
//! resolvent for quasi-periodicity). Cyclic parts reduce to factor
//! arithmetic: stripping the special factors of the defining polynomial
//! leaves a generator of the radical.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abgroup::{image_subgroup, preimage_subgroup, IMat, Subgroup};
use crate::error::{Error, Result};
use crate::flows::zideal::ZtIdealBasis;
use crate::flows::{
    crt_polys, CyclicFlow, Element, FgFlow, Flow, FlowPart, PartElement, PartSub, SubmoduleDesc,
};
use crate::intpoly::factor::{factor, special_part, FactorClass, ModPoly};
use crate::intpoly::{euler_phi, IntPoly};

/// State budget for direct orbit iteration before falling back to the
/// algebraic certificate.
pub const QP_ITERATION_BUDGET: usize = 1_000_000;

// ---------------------------------------------------------------------------
// Radical kinds.
// ---------------------------------------------------------------------------

/// The five radical kinds, in increasing order of generosity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RadicalKind {
    /// Points eventually killed by the map itself (special class: powers of t).
    Nilpotent,
    /// Points eventually fixed (powers of t − 1).
    Unipotent,
    /// Points with finite forward orbit (t and cyclotomic polynomials).
    QuasiPeriodic,
    /// Points annihilated by a monic polynomial in the map.
    Integral,
    /// Points annihilated by any nonzero polynomial in the map.
    Algebraic,
}

impl RadicalKind {
    /// All kinds, in containment-compatible order.
    pub const ALL: [RadicalKind; 5] = [
        RadicalKind::Nilpotent,
        RadicalKind::Unipotent,
        RadicalKind::QuasiPeriodic,
        RadicalKind::Integral,
        RadicalKind::Algebraic,
    ];

    /// One-letter tag (O, I, Q, A, W) used by the command line and reports.
    #[must_use]
    pub fn letter(self) -> char {
        match self {
            RadicalKind::Nilpotent => 'O',
            RadicalKind::Unipotent => 'I',
            RadicalKind::QuasiPeriodic => 'Q',
            RadicalKind::Integral => 'A',
            RadicalKind::Algebraic => 'W',
        }
    }

    /// Parses the one-letter tag (case-insensitive).
    #[must_use]
    pub fn from_letter(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "O" => Some(RadicalKind::Nilpotent),
            "I" => Some(RadicalKind::Unipotent),
            "Q" => Some(RadicalKind::QuasiPeriodic),
            "A" => Some(RadicalKind::Integral),
            "W" => Some(RadicalKind::Algebraic),
            _ => None,
        }
    }

    /// The class of special polynomials defining the kind.
    #[must_use]
    pub fn factor_class(self) -> FactorClass {
        match self {
            RadicalKind::Nilpotent => FactorClass::PowersOfT,
            RadicalKind::Unipotent => FactorClass::PowersOfTMinusOne,
            RadicalKind::QuasiPeriodic => FactorClass::CyclotomicOrT,
            RadicalKind::Integral => FactorClass::Monic,
            RadicalKind::Algebraic => FactorClass::AllNonzero,
        }
    }

    /// Containment order on the radicals: nilpotent and unipotent both sit
    /// inside quasi-periodic, which sits inside integral, then algebraic.
    /// Nilpotent and unipotent are incomparable.
    #[must_use]
    pub fn leq(self, other: Self) -> bool {
        use RadicalKind::{Algebraic, Integral, Nilpotent, QuasiPeriodic, Unipotent};
        match (self, other) {
            (a, b) if a == b => true,
            (Nilpotent | Unipotent, QuasiPeriodic | Integral | Algebraic)
            | (QuasiPeriodic, Integral | Algebraic)
            | (Integral, Algebraic) => true,
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Radicals.
// ---------------------------------------------------------------------------

/// The radical submodule of the given kind.
///
/// # Errors
///
/// `UnsupportedBase` for cyclic parts over a non-squarefree positive base.
pub fn radical(flow: &Flow, kind: RadicalKind) -> Result<SubmoduleDesc> {
    let mut parts = Vec::new();
    for part in flow.parts() {
        match part {
            FlowPart::Fg(f) => parts.push(PartSub::Lattice(fg_radical(f, kind))),
            FlowPart::Cyclic(c) => parts.push(PartSub::Generator(cyclic_radical(c, kind)?)),
        }
    }
    SubmoduleDesc::new(flow, parts)
}

/// Radical lattice on a group part.
fn fg_radical(f: &FgFlow, kind: RadicalKind) -> Subgroup {
    match kind {
        RadicalKind::Nilpotent => stabilize(f, |cur| preimage_subgroup(f.group(), f.matrix(), cur)),
        RadicalKind::Unipotent => {
            let shifted = f.matrix().sub(&IMat::identity(f.group().ambient()));
            stabilize(f, |cur| preimage_subgroup(f.group(), &shifted, cur))
        }
        RadicalKind::QuasiPeriodic => stabilize(f, |cur| fg_qp_step(f, cur)),
        // Every point satisfies the characteristic polynomial of the matrix,
        // which is monic with integer coefficients, so the integral and
        // algebraic radicals exhaust any group part.
        RadicalKind::Integral | RadicalKind::Algebraic => f.group().whole_subgroup(),
    }
}

/// Iterates an ascending-step operator from the zero subgroup to its fixpoint.
fn stabilize(f: &FgFlow, step: impl Fn(&Subgroup) -> Subgroup) -> Subgroup {
    let cap = chain_cap(f);
    let mut current = f.group().zero_subgroup();
    for _ in 0..cap {
        let next = step(&current);
        if next == current {
            return current;
        }
        current = next;
    }
    unreachable!("radical chain failed to stabilize within its length bound");
}

/// Length bound for ascending invariant chains: each strict step either
/// raises the lattice rank (at most `ambient` times) or refines a torsion
/// index, whose bit size it must strictly decrease somewhere.
fn chain_cap(f: &FgFlow) -> usize {
    let ambient = f.group().ambient();
    let bits = f.group().torsion_exponent().bits() as usize;
    ambient * (bits + 2) + 8
}

/// One quasi-periodicity step: the points of `M / current` with finite
/// forward orbit, pulled back to the ambient lattice. A point has finite
/// orbit exactly when the cyclotomic resolvent of the free-quotient rank
/// sends it into the torsion subgroup.
fn fg_qp_step(f: &FgFlow, current: &Subgroup) -> Subgroup {
    let torsion = f.group().quotient(current).torsion_subgroup();
    let r = f.group().ambient() - current.lattice_rank();
    let resolvent = f.matrix().poly_eval(&qp_poly(r));
    preimage_subgroup(f.group(), &resolvent, &torsion)
}

/// The quasi-periodicity resolvent tʳ · lcm{tᵈ − 1 : φ(d) ≤ r}.
///
/// A point of a rank-r torsion-free part has finite orbit exactly when this
/// polynomial, evaluated at the matrix, kills it: the tʳ factor absorbs the
/// preperiod, and the squarefree cyclotomic factor covers every root of
/// unity whose minimal polynomial fits inside rank r.
fn qp_poly(r: usize) -> IntPoly {
    let r64 = r as u64;
    let mut acc = IntPoly::one();
    // φ(d) ≥ √(d/2), so φ(d) ≤ r forces d ≤ 2r² + 1.
    for d in 1..=2 * r64 * r64 + 1 {
        if euler_phi(d) <= r64 {
            let mut coeffs = vec![BigInt::zero(); usize::try_from(d).expect("small") + 1];
            coeffs[0] = -BigInt::one();
            let deg = coeffs.len() - 1;
            coeffs[deg] = BigInt::one();
            acc = IntPoly::lcm(&acc, &IntPoly::new(coeffs));
        }
    }
    acc.shift(r)
}

/// Radical generator on a cyclic part.
fn cyclic_radical(c: &CyclicFlow, kind: RadicalKind) -> Result<IntPoly> {
    let class = kind.factor_class();
    if c.base().is_zero() {
        if c.poly().is_zero() {
            // The shift on ℤ[t] is torsion-free over ℤ[t]: no nonzero point
            // is annihilated by any nonzero polynomial, special or not.
            return Ok(IntPoly::zero());
        }
        return Ok(special_part(c.poly(), class)?.out_s);
    }
    // Positive squarefree base: per-prime answers glued by the Chinese
    // remainder theorem (the generator's residue mod p cuts out the
    // p-component of the radical).
    let primes = c.squarefree_primes()?;
    let mut residues = Vec::new();
    for &p in &primes {
        let fp = c.poly_mod(p);
        residues.push((p, cyclic_radical_mod_p(&fp, kind, p)));
    }
    Ok(crt_polys(&residues))
}

/// Radical generator of the p-component ℤ[t]/(p, f̄).
///
/// When f̄ ≠ 0 the component is finite, so every point is quasi-periodic —
/// and every irreducible of 𝔽_p[t] other than t divides some t^(pᵈ−1) − 1,
/// which makes the quasi-periodic, integral, and algebraic radicals the
/// whole component. When f̄ = 0 the component is the shift on 𝔽_p[t]: the
/// class members built from t and monic polynomials stay nonzero mod p and
/// kill nothing, while the algebraic class contains the prime itself and
/// swallows everything.
fn cyclic_radical_mod_p(fp: &ModPoly, kind: RadicalKind, p: u64) -> ModPoly {
    if fp.is_zero() {
        return match kind {
            RadicalKind::Algebraic => ModPoly::one(p),
            _ => ModPoly::zero(p),
        };
    }
    match kind {
        RadicalKind::Nilpotent => strip_t_mod_p(fp, usize::MAX),
        RadicalKind::Unipotent => strip_t_minus_one_mod_p(fp, usize::MAX),
        RadicalKind::QuasiPeriodic | RadicalKind::Integral | RadicalKind::Algebraic => {
            ModPoly::one(p)
        }
    }
}

/// Divides out up to `levels` factors of t.
fn strip_t_mod_p(fp: &ModPoly, levels: usize) -> ModPoly {
    let coeffs = &fp.c;
    let v = coeffs.iter().take_while(|&&a| a == 0).count().min(levels);
    ModPoly::new(fp.p, coeffs[v..].to_vec()).make_monic()
}

/// Divides out up to `levels` factors of t − 1.
fn strip_t_minus_one_mod_p(fp: &ModPoly, levels: usize) -> ModPoly {
    let t_minus_one = ModPoly::new(fp.p, vec![fp.p - 1, 1]);
    let mut g = fp.make_monic();
    for _ in 0..levels {
        if g.deg_or_0() == 0 {
            break;
        }
        let (q, r) = g.divrem(&t_minus_one);
        if !r.is_zero() {
            break;
        }
        g = q;
    }
    g.make_monic()
}

// ---------------------------------------------------------------------------
// Towers.
// ---------------------------------------------------------------------------

/// The ascending tower X₀ = 0 ⊆ X₁ ⊆ … ⊆ X_{n_max} of the given kind
/// (levels beyond stabilization repeat the fixpoint). Defined for the
/// nilpotent, unipotent, and quasi-periodic kinds.
///
/// # Errors
///
/// `Domain` for the integral/algebraic kinds; `UnsupportedBase` as for
/// [`radical`].
pub fn tower(flow: &Flow, kind: RadicalKind, n_max: usize) -> Result<Vec<SubmoduleDesc>> {
    if !matches!(
        kind,
        RadicalKind::Nilpotent | RadicalKind::Unipotent | RadicalKind::QuasiPeriodic
    ) {
        return Err(Error::Domain(format!(
            "towers are defined for the O, I, Q kinds, not {}",
            kind.letter()
        )));
    }
    // Per-part level sequences, each of length n_max + 1.
    let mut part_levels: Vec<Vec<PartSub>> = Vec::new();
    for part in flow.parts() {
        match part {
            FlowPart::Fg(f) => {
                let mut levels = vec![f.group().zero_subgroup()];
                for _ in 0..n_max {
                    let next = fg_tower_step(f, kind, levels.last().expect("nonempty"));
                    levels.push(next);
                }
                for w in levels.windows(2) {
                    assert!(w[0].is_subset_of(&w[1]), "tower must ascend");
                    let img = image_subgroup(f.group(), f.matrix(), &w[1]);
                    assert!(img.is_subset_of(&w[1]), "tower levels must be invariant");
                }
                part_levels.push(levels.into_iter().map(PartSub::Lattice).collect());
            }
            FlowPart::Cyclic(c) => {
                let gens = cyclic_tower(c, kind, n_max)?;
                if c.base().is_zero() && c.poly().is_monic() && c.poly().deg_or_0() >= 1 {
                    companion_tower_check(c.poly(), kind, &gens)?;
                }
                part_levels.push(gens.into_iter().map(PartSub::Generator).collect());
            }
        }
    }
    let mut out = Vec::new();
    for n in 0..=n_max {
        let parts: Vec<PartSub> = part_levels.iter().map(|seq| seq[n].clone()).collect();
        out.push(SubmoduleDesc::new(flow, parts)?);
    }
    Ok(out)
}

/// One tower step on a group part.
fn fg_tower_step(f: &FgFlow, kind: RadicalKind, current: &Subgroup) -> Subgroup {
    match kind {
        RadicalKind::Nilpotent => preimage_subgroup(f.group(), f.matrix(), current),
        RadicalKind::Unipotent => {
            let shifted = f.matrix().sub(&IMat::identity(f.group().ambient()));
            preimage_subgroup(f.group(), &shifted, current)
        }
        RadicalKind::QuasiPeriodic => fg_qp_step(f, current),
        _ => unreachable!("tower kinds checked by the caller"),
    }
}

/// Generator sequence of the tower on a cyclic part: at each level one more
/// layer of special factors is divided out of the defining polynomial (for
/// the quasi-periodic kind on a finite positive-base component, level one is
/// already everything).
fn cyclic_tower(c: &CyclicFlow, kind: RadicalKind, n_max: usize) -> Result<Vec<IntPoly>> {
    if c.base().is_zero() {
        if c.poly().is_zero() {
            return Ok(vec![IntPoly::zero(); n_max + 1]);
        }
        let class = kind.factor_class();
        let fac = factor(c.poly())?;
        let mut out = Vec::new();
        for n in 0..=n_max {
            let mut g = IntPoly::constant(BigInt::from(fac.content.clone()));
            for (q, m) in &fac.factors {
                let e = if class.contains_irreducible(q) {
                    (*m as usize).saturating_sub(n)
                } else {
                    *m as usize
                };
                if e > 0 {
                    g = g.mul(&q.pow(u32::try_from(e).expect("exponent fits")));
                }
            }
            out.push(g);
        }
        return Ok(out);
    }
    let primes = c.squarefree_primes()?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        let mut residues = Vec::new();
        for &p in &primes {
            let fp = c.poly_mod(p);
            let g = if fp.is_zero() {
                ModPoly::zero(p)
            } else {
                match kind {
                    RadicalKind::Nilpotent => strip_t_mod_p(&fp, n),
                    RadicalKind::Unipotent => strip_t_minus_one_mod_p(&fp, n),
                    RadicalKind::QuasiPeriodic => {
                        if n == 0 {
                            fp.make_monic()
                        } else {
                            ModPoly::one(p)
                        }
                    }
                    _ => unreachable!("tower kinds checked by the caller"),
                }
            };
            residues.push((p, g));
        }
        out.push(crt_polys(&residues));
    }
    Ok(out)
}

/// Cross-checks a cyclic tower against kernel iteration on the companion
/// matrix: the lattice spanned by the shifted generator must coincide with
/// the lattice the group-side step machinery computes.
fn companion_tower_check(f: &IntPoly, kind: RadicalKind, gens: &[IntPoly]) -> Result<()> {
    let d = f.deg_or_0();
    if d > 24 {
        return Ok(()); // validation sample only; large degrees are wasteful
    }
    let comp = crate::flows::companion(f)?;
    let ideal_f = ZtIdealBasis::new(&[f.clone()]);
    let mut current = comp.group().zero_subgroup();
    for (n, g) in gens.iter().enumerate() {
        if n > 0 {
            current = fg_tower_step(&comp, kind, &current);
        }
        let expected = generator_lattice(&ideal_f, g, d, comp.group());
        if current != expected {
            return Err(Error::Internal(format!(
                "tower level {n} disagrees between factor stripping and companion iteration"
            )));
        }
    }
    Ok(())
}

/// Lattice of the submodule generated by `g` inside ℤ[t]/(f) in the basis
/// 1, t, …, t^(d−1), where `ideal_f` reduces mod the monic `f`.
fn generator_lattice(
    ideal_f: &ZtIdealBasis,
    g: &IntPoly,
    d: usize,
    group: &crate::abgroup::FgAbGroup,
) -> Subgroup {
    let mut gens = Vec::new();
    for j in 0..d {
        let nf = ideal_f.normal_form(&g.shift(j));
        let mut v = vec![BigInt::zero(); d];
        for (i, a) in nf.coeffs().iter().enumerate() {
            v[i] = a.clone();
        }
        gens.push(v);
    }
    group.subgroup(&gens)
}

// ---------------------------------------------------------------------------
// Quasi-periodic points.
// ---------------------------------------------------------------------------

/// Witness for a quasi-periodic point: φⁿx = φᵐx with n > m ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QpWitness {
    pub n: u64,
    pub m: u64,
}

/// Outcome of a quasi-periodicity query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QpAnswer {
    /// The orbit is finite. The witness is the lexicographically minimal
    /// (n, m) when direct iteration found the repeat within budget; `None`
    /// when the point was certified algebraically but its orbit exceeds the
    /// iteration budget.
    QuasiPeriodic { witness: Option<QpWitness> },
    /// The orbit is infinite, with a human-readable algebraic reason.
    NotQuasiPeriodic { certificate: String },
}

/// Decides whether a point has finite forward orbit.
///
/// Membership is decided algebraically first (so divergent orbits are never
/// iterated); the minimal witness is then recovered by direct iteration,
/// capped at [`QP_ITERATION_BUDGET`] distinct states.
///
/// # Errors
///
/// `Domain` on element shape mismatch, `UnsupportedBase` for non-squarefree
/// positive bases.
pub fn is_quasi_periodic_point(flow: &Flow, x: &Element) -> Result<QpAnswer> {
    flow.check_element(x)?;
    let x = flow.reduce_element(x);
    for (i, (pe, part)) in x.parts.iter().zip(flow.parts()).enumerate() {
        if let Some(reason) = part_qp_failure(pe, part, i)? {
            return Ok(QpAnswer::NotQuasiPeriodic { certificate: reason });
        }
    }
    // The point is quasi-periodic; find the minimal witness by iteration.
    let mut seen: HashMap<Element, u64> = HashMap::new();
    let mut current = x;
    let mut step: u64 = 0;
    while seen.len() < QP_ITERATION_BUDGET {
        if let Some(&m) = seen.get(&current) {
            return Ok(QpAnswer::QuasiPeriodic {
                witness: Some(QpWitness { n: step, m }),
            });
        }
        seen.insert(current.clone(), step);
        current = flow.apply(&current);
        step += 1;
    }
    Ok(QpAnswer::QuasiPeriodic { witness: None })
}

/// Why a component fails to be quasi-periodic, if it does.
fn part_qp_failure(pe: &PartElement, part: &FlowPart, index: usize) -> Result<Option<String>> {
    match (pe, part) {
        (PartElement::Vector(v), FlowPart::Fg(f)) => {
            let torsion = f.group().torsion_subgroup();
            let r = f.group().ambient();
            let resolvent = f.matrix().poly_eval(&qp_poly(r));
            if torsion.contains(&resolvent.mul_vec(v)) {
                return Ok(None);
            }
            let mp = crate::flows::min_poly_point(f, v)?;
            let fac = factor(&mp.poly)?;
            let reason = fac
                .factors
                .iter()
                .find_map(|(q, m)| {
                    if !FactorClass::CyclotomicOrT.contains_irreducible(q) {
                        Some(format!("has the non-cyclotomic factor {q}"))
                    } else if !q.is_t() && *m > 1 {
                        Some(format!("repeats the cyclotomic factor {q}"))
                    } else {
                        None
                    }
                })
                .unwrap_or_else(|| "does not divide the quasi-periodicity resolvent".to_string());
            Ok(Some(format!(
                "component {index}: the minimal polynomial {} of the point {reason}",
                mp.poly
            )))
        }
        (PartElement::Poly(xp), FlowPart::Cyclic(c)) => {
            if c.base().is_zero() {
                if c.poly().is_zero() {
                    if xp.is_zero() {
                        return Ok(None);
                    }
                    return Ok(Some(format!(
                        "component {index}: the shift moves the support of every nonzero polynomial"
                    )));
                }
                let layer = strip_special_layer(c.poly(), FactorClass::CyclotomicOrT)?;
                if IntPoly::divides(&layer, xp) {
                    return Ok(None);
                }
                return Ok(Some(format!(
                    "component {index}: the co-cyclotomic part {layer} of the defining polynomial does not divide the point"
                )));
            }
            for &p in &c.squarefree_primes()? {
                if c.poly_mod(p).is_zero() && !ModPoly::from_intpoly(xp, p).is_zero() {
                    return Ok(Some(format!(
                        "component {index}: the point is nonzero in the shift component mod {p}"
                    )));
                }
            }
            Ok(None)
        }
        _ => Err(Error::Domain(
            "element component kind does not match the part kind".into(),
        )),
    }
}

/// Divides each distinct special factor out of `f` once.
fn strip_special_layer(f: &IntPoly, class: FactorClass) -> Result<IntPoly> {
    let fac = factor(f)?;
    let mut g = f.normalize_sign().1;
    for (q, _) in &fac.factors {
        if class.contains_irreducible(q) {
            g = g.div_exact(q).expect("listed factor divides");
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Closures and trajectory-finiteness submodules.
// ---------------------------------------------------------------------------

/// The rank-torsion closure (purification) of an invariant submodule:
/// all points with a nonzero integer multiple inside it.
///
/// # Errors
///
/// `Domain` when the descriptor does not match the flow shape.
pub fn istar_closure(flow: &Flow, n: &SubmoduleDesc) -> Result<SubmoduleDesc> {
    if n.parts().len() != flow.parts().len() {
        return Err(Error::Domain("descriptor does not match the flow shape".into()));
    }
    let mut parts = Vec::new();
    for (ps, part) in n.parts().iter().zip(flow.parts()) {
        match (ps, part) {
            (PartSub::Lattice(lat), FlowPart::Fg(f)) => {
                // Saturation of the lattice: the torsion subgroup of the
                // quotient, read in ambient coordinates.
                parts.push(PartSub::Lattice(f.group().quotient(lat).torsion_subgroup()));
            }
            (PartSub::Generator(g), FlowPart::Cyclic(c)) => {
                if !c.base().is_zero() {
                    // Every point is base-torsion, so the closure of any
                    // submodule is the whole component.
                    parts.push(PartSub::Generator(IntPoly::one()));
                } else if g.is_zero() {
                    parts.push(PartSub::Generator(IntPoly::zero()));
                } else {
                    // k·x ∈ (g) for some k ≠ 0 exactly when the primitive
                    // part of g divides x.
                    parts.push(PartSub::Generator(g.primitive_part()));
                }
            }
            _ => {
                return Err(Error::Domain(
                    "descriptor component kind does not match the part kind".into(),
                ))
            }
        }
    }
    SubmoduleDesc::new(flow, parts)
}

/// Invariant selecting which finiteness notion `t_phi` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrajectoryInvariant {
    /// Finite cardinality of the generated trajectory.
    LogCard,
    /// Finite rank of the generated trajectory.
    Rank,
}

/// Points whose generated trajectory is finite in the chosen sense: for
/// `LogCard` the points of the torsion part with finite orbit, for `Rank`
/// the algebraic radical.
///
/// # Errors
///
/// `UnsupportedBase` for non-squarefree positive bases.
pub fn t_phi(flow: &Flow, invariant: TrajectoryInvariant) -> Result<SubmoduleDesc> {
    match invariant {
        TrajectoryInvariant::Rank => radical(flow, RadicalKind::Algebraic),
        TrajectoryInvariant::LogCard => {
            let mut parts = Vec::new();
            for part in flow.parts() {
                match part {
                    FlowPart::Fg(f) => {
                        // The torsion subgroup is finite, so all of it is
                        // quasi-periodic and trajectory-finite.
                        parts.push(PartSub::Lattice(f.group().torsion_subgroup()));
                    }
                    FlowPart::Cyclic(c) => {
                        if c.base().is_zero() {
                            // Torsion points of ℤ[t]/(f) form a shifted copy
                            // of (ℤ/content)[t], on which the shift has no
                            // nonzero finite trajectory.
                            parts.push(PartSub::Generator(c.poly().clone()));
                        } else {
                            let mut residues = Vec::new();
                            for &p in &c.squarefree_primes()? {
                                let fp = c.poly_mod(p);
                                let g = if fp.is_zero() { ModPoly::zero(p) } else { ModPoly::one(p) };
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::parse_flow;

    fn flow_of(text: &str) -> Flow {
        parse_flow(text).expect("valid document")
    }

    fn gen_of(desc: &SubmoduleDesc, i: usize) -> &IntPoly {
        match &desc.parts()[i] {
            PartSub::Generator(g) => g,
            PartSub::Lattice(_) => panic!("expected a generator component"),
        }
    }

    #[test]
    fn containment_order() {
        use RadicalKind::*;
        assert!(Nilpotent.leq(QuasiPeriodic) && Unipotent.leq(QuasiPeriodic));
        assert!(QuasiPeriodic.leq(Integral) && Integral.leq(Algebraic));
        assert!(!Nilpotent.leq(Unipotent) && !Unipotent.leq(Nilpotent));
        assert!(!Algebraic.leq(QuasiPeriodic));
        for k in RadicalKind::ALL {
            assert!(k.leq(k));
            assert_eq!(RadicalKind::from_letter(&k.letter().to_string()), Some(k));
        }
    }

    #[test]
    fn cyclic_content_examples() {
        // ℤ[t]/(3t²): 𝔒 is generated by 3 and is a copy of ℤ[t]/(t²).
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[0,0,3]}"#);
        let o = radical(&flow, RadicalKind::Nilpotent).unwrap();
        assert_eq!(gen_of(&o, 0), &IntPoly::from_i64s(&[3]));
        assert_eq!(o.iso(), "Z[t]/(t^2)");
        // 𝔚 is the whole module.
        let w = radical(&flow, RadicalKind::Algebraic).unwrap();
        assert!(w.is_whole(&flow));
    }

    #[test]
    fn half_flow_radicals() {
        // ℤ[t]/(2t−1): Q and A vanish, W is everything.
        let flow = flow_of(r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#);
        let q = radical(&flow, RadicalKind::QuasiPeriodic).unwrap();
        let a = radical(&flow, RadicalKind::Integral).unwrap();
        let w = radical(&flow, RadicalKind::Algebraic).unwrap();
        assert!(q.is_zero(&flow) && a.is_zero(&flow));
        assert!(w.is_whole(&flow));
    }

    #[test]
    fn bernoulli_radicals() {
        // ℤ[t]/(p) is the shift on (ℤ/p)[t]: Q = 0, W = whole.
        let flow = flow_of(r#"{"type":"cyclic","base":5,"poly":[]}"#);
        let q = radical(&flow, RadicalKind::QuasiPeriodic).unwrap();
        let w = radical(&flow, RadicalKind::Algebraic).unwrap();
        assert!(q.is_zero(&flow));
        assert!(w.is_whole(&flow));
    }

    #[test]
    fn finite_fg_is_quasi_periodic_everywhere() {
        let flow = flow_of(r#"{"type":"fg","rank":1,"relations":[[6]],"matrix":[[2]]}"#);
        let q = radical(&flow, RadicalKind::QuasiPeriodic).unwrap();
        assert!(q.is_whole(&flow));
    }

    #[test]
    fn mixed_fg_quasi_periodic_lattice() {
        // diag(1, 2) on ℤ²: only the first axis is quasi-periodic.
        let flow = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,2]]}"#);
        let q = radical(&flow, RadicalKind::QuasiPeriodic).unwrap();
        let PartSub::Lattice(lat) = &q.parts()[0] else { panic!() };
        assert_eq!(lat.lattice_rank(), 1);
        assert!(lat.contains(&[BigInt::one(), BigInt::zero()]));
        assert!(!lat.contains(&[BigInt::zero(), BigInt::one()]));
    }

    #[test]
    fn unitriangular_towers_climb_one_axis_per_level() {
        let flow = flow_of(
            r#"{"type":"fg","rank":3,"relations":[],"matrix":[[1,1,1],[0,1,1],[0,0,1]]}"#,
        );
        let levels = tower(&flow, RadicalKind::QuasiPeriodic, 4).unwrap();
        let expect_rank = [0usize, 1, 2, 3, 3];
        for (n, desc) in levels.iter().enumerate() {
            let PartSub::Lattice(lat) = &desc.parts()[0] else { panic!() };
            assert_eq!(lat.lattice_rank(), expect_rank[n], "level {n}");
        }
        // e₂ sits in Q₂ but not Q₁.
        let PartSub::Lattice(q1) = &levels[1].parts()[0] else { panic!() };
        let PartSub::Lattice(q2) = &levels[2].parts()[0] else { panic!() };
        let e2 = [BigInt::zero(), BigInt::one(), BigInt::zero()];
        assert!(!q1.contains(&e2) && q2.contains(&e2));
        assert!(radical(&flow, RadicalKind::QuasiPeriodic).unwrap().is_whole(&flow));
    }

    #[test]
    fn nilpotent_tower_example() {
        let flow = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[0,1],[0,0]]}"#);
        let levels = tower(&flow, RadicalKind::Nilpotent, 2).unwrap();
        let PartSub::Lattice(o1) = &levels[1].parts()[0] else { panic!() };
        let PartSub::Lattice(o2) = &levels[2].parts()[0] else { panic!() };
        assert_eq!(o1.lattice_rank(), 1);
        assert!(o1.contains(&[BigInt::one(), BigInt::zero()]));
        assert_eq!(o2.lattice_rank(), 2);
        let ident = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,1]]}"#);
        let i_levels = tower(&ident, RadicalKind::Unipotent, 1).unwrap();
        assert!(i_levels[1].is_whole(&ident));
        assert!(tower(&flow, RadicalKind::Algebraic, 1).is_err());
    }

    #[test]
    fn cyclic_tower_strips_one_layer_per_level() {
        // (t−1)²·(t−2): unipotent layers peel off one at a time.
        let f = IntPoly::from_i64s(&[-1, 1]).pow(2).mul(&IntPoly::from_i64s(&[-2, 1]));
        let doc = format!(
            r#"{{"type":"cyclic","base":0,"poly":[{}]}}"#,
            f.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        );
        let flow = flow_of(&doc);
        let levels = tower(&flow, RadicalKind::Unipotent, 3).unwrap();
        let expected = [
            f.clone(),
            IntPoly::from_i64s(&[-1, 1]).mul(&IntPoly::from_i64s(&[-2, 1])),
            IntPoly::from_i64s(&[-2, 1]),
            IntPoly::from_i64s(&[-2, 1]),
        ];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(gen_of(&levels[n], 0), e, "level {n}");
        }
    }

    #[test]
    fn quasi_periodic_witness_on_finite_flow() {
        // ×2 on ℤ/6 starting at 1: 1, 2, 4, 8 ≡ 2 gives (n, m) = (3, 1).
        let flow = flow_of(r#"{"type":"fg","rank":1,"relations":[[6]],"matrix":[[2]]}"#);
        let x = Element { parts: vec![PartElement::Vector(vec![BigInt::one()])] };
        let QpAnswer::QuasiPeriodic { witness } = is_quasi_periodic_point(&flow, &x).unwrap()
        else {
            panic!("finite flows are quasi-periodic everywhere")
        };
        assert_eq!(witness, Some(QpWitness { n: 3, m: 1 }));
        // The zero point repeats immediately: (1, 0).
        let z = flow.zero_element();
        let QpAnswer::QuasiPeriodic { witness } = is_quasi_periodic_point(&flow, &z).unwrap()
        else {
            panic!()
        };
        assert_eq!(witness, Some(QpWitness { n: 1, m: 0 }));
    }

    #[test]
    fn shift_points_are_not_quasi_periodic() {
        let flow = flow_of(r#"{"type":"cyclic","base":2,"poly":[]}"#);
        let x = Element { parts: vec![PartElement::Poly(IntPoly::one())] };
        let QpAnswer::NotQuasiPeriodic { certificate } =
            is_quasi_periodic_point(&flow, &x).unwrap()
        else {
            panic!("the Bernoulli shift has no nonzero quasi-periodic points")
        };
        assert!(certificate.contains("mod 2"), "{certificate}");
        // Doubling on ℤ: certificate names the offending minimal polynomial.
        let dbl = flow_of(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#);
        let one = Element { parts: vec![PartElement::Vector(vec![BigInt::one()])] };
        let QpAnswer::NotQuasiPeriodic { certificate } =
            is_quasi_periodic_point(&dbl, &one).unwrap()
        else {
            panic!("doubling has no nonzero quasi-periodic points")
        };
        assert!(certificate.contains("t - 2"), "{certificate}");
    }

    #[test]
    fn purification_examples() {
        // ⟨2e₁⟩ in (ℤ², id) purifies to ⟨e₁⟩.
        let flow = flow_of(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,1]]}"#);
        let FlowPart::Fg(f) = &flow.parts()[0] else { panic!() };
        let n = f.group().subgroup(&[vec![BigInt::from(2), BigInt::zero()]]);
        let desc = SubmoduleDesc::new(&flow, vec![PartSub::Lattice(n)]).unwrap();
        let closed = istar_closure(&flow, &desc).unwrap();
        let PartSub::Lattice(lat) = &closed.parts()[0] else { panic!() };
        assert!(lat.contains(&[BigInt::one(), BigInt::zero()]));
        assert_eq!(lat.lattice_rank(), 1);
        // Whole and zero are fixed points.
        let whole = SubmoduleDesc::whole(&flow);
        assert_eq!(istar_closure(&flow, &whole).unwrap(), whole);
        let zero = SubmoduleDesc::zero(&flow);
        assert_eq!(istar_closure(&flow, &zero).unwrap(), zero);
        // The zero submodule of ℤ[t]/(3t²) closes up to the torsion copy.
        let cyc = flow_of(r#"{"type":"cyclic","base":0,"poly":[0,0,3]}"#);
        let z = SubmoduleDesc::zero(&cyc);
        let closed = istar_closure(&cyc, &z).unwrap();
        assert_eq!(gen_of(&closed, 0), &IntPoly::from_i64s(&[0, 0, 1]));
    }

    #[test]
    fn trajectory_finiteness_submodules() {
        // β_{ℤ(p)}: no nonzero point has finite trajectory.
        let bern = flow_of(r#"{"type":"cyclic","base":5,"poly":[]}"#);
        assert!(t_phi(&bern, TrajectoryInvariant::LogCard).unwrap().is_zero(&bern));
        // (ℤ, ×2): torsion part is trivial.
        let dbl = flow_of(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#);
        assert!(t_phi(&dbl, TrajectoryInvariant::LogCard).unwrap().is_zero(&dbl));
        // ℤ[t]/(2t−1) has full rank-finite part.
        let half = flow_of(r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#);
        assert!(t_phi(&half, TrajectoryInvariant::Rank).unwrap().is_whole(&half));
        // Shift component mod 2 plus finite component mod 3 under base 6.
        let mixed = flow_of(r#"{"type":"cyclic","base":6,"poly":[2,2]}"#);
        let t = t_phi(&mixed, TrajectoryInvariant::LogCard).unwrap();
        let g = gen_of(&t, 0);
        // Generator ≡ 0 mod 2 (shift part dies), ≡ 1 mod 3 (finite part stays).
        assert!(g.coeff(0) % 2 == BigInt::zero());
        assert!(g.coeff(0) % 3 == BigInt::one());
        // If every prime component is finite, everything is trajectory-finite.
        let finite = flow_of(r#"{"type":"cyclic","base":6,"poly":[4,3]}"#);
        assert!(t_phi(&finite, TrajectoryInvariant::LogCard).unwrap().is_whole(&finite));
    }

    #[test]
    fn radical_containments_on_samples() {
        for doc in [
            r#"{"type":"cyclic","base":0,"poly":[0,0,3]}"#,
            r#"{"type":"cyclic","base":0,"poly":[-1,2]}"#,
            r#"{"type":"cyclic","base":6,"poly":[4,3]}"#,
            r#"{"type":"fg","rank":2,"relations":[[4,0]],"matrix":[[1,1],[0,3]]}"#,
        ] {
            let flow = flow_of(doc);
            let descs: Vec<(RadicalKind, SubmoduleDesc)> = RadicalKind::ALL
                .iter()
                .map(|&k| (k, radical(&flow, k).unwrap()))
                .collect();
            for (ka, da) in &descs {
                for (kb, db) in &descs {
                    if ka.leq(*kb) {
                        assert!(
                            da.is_subset_of(db, &flow),
                            "{} ⊆ {} fails on {doc}",
                            ka.letter(),
                            kb.letter()
                        );
                    }
                }
            }
        }
    }
}
