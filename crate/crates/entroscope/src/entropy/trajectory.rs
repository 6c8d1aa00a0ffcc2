//! The trajectory engine: exact growth of `T_n = F + φF + … + φ^{n−1}F`.
//!
//! Two modes. **Subgroup** mode tracks the subgroup generated by the
//! partial orbit; all sizes are exact group orders, and because consecutive
//! trajectory subgroups nest, the size ratios are exact integers, are
//! monotone nonincreasing (monitored), and certify the growth rate the
//! moment they hold still for a full stabilization window. **Subset** mode
//! enumerates Minkowski sumsets exactly — exponential, so it is tightly
//! capped, and its endpoint quotient `log τ_n / n` is an estimate rather
//! than a certificate.
//!
//! All group arithmetic happens in a windowed embedding: group parts keep
//! their ambient lattice, and each cyclic part contributes the lattice of
//! polynomials below a degree window, with the window's exact relation
//! lattice as relations. The window grows with the orbit so every computed
//! order is the true order.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::abgroup::{FgAbGroup, IMat};
use crate::entropy::value::{sig10, EntropyValue};
use crate::error::{Error, Result};
use crate::flows::{Element, Flow, FlowPart, PartElement};
use crate::intpoly::mahler::ln_biguint_pub;

/// Hard cap on subset-mode steps.
pub const SUBSET_STEP_CAP: usize = 25;
/// Hard cap on subset-mode distinct states.
pub const SUBSET_STATE_CAP: usize = 4_000_000;
/// Hard cap on auto-length subgroup runs.
pub const SUBGROUP_STEP_CAP: usize = 400;

/// How the seed data `F` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrajectoryMode {
    /// `F` is the subgroup generated by the seed elements.
    Subgroup,
    /// `F` is the finite set of seed elements (zero adjoined).
    Subset,
}

impl TrajectoryMode {
    /// Parses `subgroup` / `subset`.
    #[must_use]
    pub fn from_name(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "subgroup" => Some(TrajectoryMode::Subgroup),
            "subset" => Some(TrajectoryMode::Subset),
            _ => None,
        }
    }
}

/// Which size invariant the subgroup engine tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum GrowthInvariant {
    /// Group order; growth rate is `log` of the stabilized ratio.
    LogCard,
    /// Free rank; growth rate is the stabilized first difference.
    Rank,
}

/// Exact record of one trajectory run.
#[derive(Clone, Debug)]
pub struct TrajectoryReport {
    /// Mode the run used.
    pub mode: TrajectoryMode,
    /// Invariant values `τ₀ … τ_n` (orders, set sizes, or ranks).
    pub sizes: Vec<BigUint>,
    /// Consecutive quotients `τ_{k+1}/τ_k` as floats (diagnostic view).
    pub ratios: Vec<f64>,
    /// Whether the growth certificate fired (constant exact ratio across a
    /// full stabilization window).
    pub stabilized: bool,
    /// Growth rate: certified exactly when `stabilized`, otherwise the
    /// endpoint estimate with the trivial error bound.
    pub estimate: EntropyValue,
    /// Human-readable tag for how `estimate` was produced.
    pub method: String,
}

impl TrajectoryReport {
    /// CSV export with columns `n, tau, log_tau_over_n, ratio`.
    #[must_use]
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,tau,log_tau_over_n,ratio\n");
        for (n, tau) in self.sizes.iter().enumerate() {
            let log_over = if n == 0 {
                String::new()
            } else {
                sig10(ln_biguint_pub(tau).0 / n as f64)
            };
            let ratio = if n == 0 { String::new() } else { sig10(self.ratios[n - 1]) };
            out.push_str(&format!("{n},{tau},{log_over},{ratio}\n"));
        }
        out
    }
}

/// Runs the trajectory engine.
///
/// `steps = None` lets subgroup mode run to its stabilization certificate
/// (capped); subset mode defaults to [`SUBSET_STEP_CAP`].
///
/// # Errors
///
/// `Domain` for malformed seeds or an infinite seed subgroup; `Resource`
/// when a cap is exceeded; `Internal` if the monitored ratio monotonicity
/// is violated.
pub fn trajectory(
    flow: &Flow,
    gens: &[Element],
    mode: TrajectoryMode,
    steps: Option<usize>,
) -> Result<TrajectoryReport> {
    match mode {
        TrajectoryMode::Subgroup => {
            subgroup_trajectory(flow, gens, GrowthInvariant::LogCard, steps)
        }
        TrajectoryMode::Subset => subset_trajectory(flow, gens, steps),
    }
}

/// Canonical seed generators: for each part, the elements whose trajectory
/// realizes the part's entropy under the torsion invariant — torsion-lattice
/// basis vectors on group parts, the residue of `1` on finite-base cyclic
/// parts, and the primitive part of `f` (the generator of the torsion
/// subflow) on `ℤ[t]/(f)`.
#[must_use]
pub fn canonical_seed(flow: &Flow) -> Vec<Element> {
    let mut gens = Vec::new();
    for (i, part) in flow.parts().iter().enumerate() {
        match part {
            FlowPart::Fg(f) => {
                let basis = f.group().torsion_subgroup();
                for j in 0..basis.basis().cols() {
                    gens.push(place(flow, i, PartElement::Vector(basis.basis().col(j))));
                }
            }
            FlowPart::Cyclic(c) => {
                let seed = if c.base().is_zero() && !c.poly().is_zero() {
                    c.poly().primitive_part()
                } else if c.base().is_zero() {
                    continue; // torsion-free shift: empty seed
                } else {
                    crate::intpoly::IntPoly::one()
                };
                gens.push(place(flow, i, PartElement::Poly(seed)));
            }
        }
    }
    gens
}

/// An element supported on one part.
fn place(flow: &Flow, index: usize, pe: PartElement) -> Element {
    let mut e = flow.zero_element();
    e.parts[index] = pe;
    flow.reduce_element(&e)
}

/// Componentwise sum, reduced to canonical form.
fn add_elements(flow: &Flow, a: &Element, b: &Element) -> Element {
    let parts = a
        .parts
        .iter()
        .zip(&b.parts)
        .map(|(x, y)| match (x, y) {
            (PartElement::Vector(u), PartElement::Vector(v)) => {
                PartElement::Vector(u.iter().zip(v).map(|(p, q)| p + q).collect())
            }
            (PartElement::Poly(p), PartElement::Poly(q)) => PartElement::Poly(p.add(q)),
            _ => unreachable!("element shapes validated by the caller"),
        })
        .collect();
    flow.reduce_element(&Element { parts })
}

/// Stabilization window: the ratio must hold still this many consecutive
/// steps before the engine certifies it as the limit. Documented heuristic
/// (degree bound or ambient rank, plus two), overridable via `steps`.
fn stabilization_window(flow: &Flow) -> usize {
    let mut deg_bound = 0usize;
    let mut ambient = 0usize;
    for part in flow.parts() {
        match part {
            FlowPart::Fg(f) => ambient += f.group().ambient(),
            FlowPart::Cyclic(c) => deg_bound = deg_bound.max(c.poly().deg_or_0()),
        }
    }
    deg_bound.max(ambient) + 2
}

// ---------------------------------------------------------------------------
// Windowed embedding.
// ---------------------------------------------------------------------------

/// Per-part window widths for the embedding lattice.
struct Windows(Vec<usize>);

impl Windows {
    fn new(flow: &Flow) -> Self {
        let w = flow
            .parts()
            .iter()
            .map(|p| match p {
                FlowPart::Fg(f) => f.group().ambient(),
                FlowPart::Cyclic(_) => 1,
            })
            .collect();
        Windows(w)
    }

    /// Widens cyclic windows to fit the element; reports whether anything grew.
    fn grow_for(&mut self, e: &Element) -> bool {
        let mut grew = false;
        for (w, pe) in self.0.iter_mut().zip(&e.parts) {
            if let PartElement::Poly(p) = pe {
                let need = p.coeffs().len().max(1);
                if need > *w {
                    *w = need;
                    grew = true;
                }
            }
        }
        grew
    }

    /// The ambient group of the embedding: group parts keep their relation
    /// lattice, cyclic parts contribute the exact window lattice of their
    /// defining ideal, blocks concatenated diagonally.
    fn ambient_group(&self, flow: &Flow) -> FgAbGroup {
        let total: usize = self.0.iter().sum();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        let mut offset = 0usize;
        for (w, part) in self.0.iter().zip(flow.parts()) {
            let block: Vec<Vec<BigInt>> = match part {
                FlowPart::Fg(f) => {
                    let rel = f.group().relations();
                    (0..rel.cols()).map(|j| rel.col(j)).collect()
                }
                FlowPart::Cyclic(c) => c.ideal().truncation_relations(*w),
            };
            for v in block {
                let mut col = vec![BigInt::zero(); total];
                col[offset..offset + w].clone_from_slice(&v);
                cols.push(col);
            }
            offset += w;
        }
        FgAbGroup::new(total, &IMat::from_cols(total, cols))
    }

    /// Coordinates of an element in the embedding.
    fn embed(&self, e: &Element) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (w, pe) in self.0.iter().zip(&e.parts) {
            match pe {
                PartElement::Vector(v) => out.extend(v.iter().cloned()),
                PartElement::Poly(p) => {
                    let mut block = vec![BigInt::zero(); *w];
                    for (i, c) in p.coeffs().iter().enumerate() {
                        block[i] = c.clone();
                    }
                    out.extend(block);
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Subgroup mode.
// ---------------------------------------------------------------------------

pub(crate) fn subgroup_trajectory(
    flow: &Flow,
    gens: &[Element],
    invariant: GrowthInvariant,
    steps: Option<usize>,
) -> Result<TrajectoryReport> {
    for g in gens {
        flow.check_element(g)?;
    }
    let seed: Vec<Element> = gens.iter().map(|g| flow.reduce_element(g)).collect();
    let window = stabilization_window(flow);
    let cap = steps.unwrap_or(SUBGROUP_STEP_CAP);

    let mut windows = Windows::new(flow);
    for e in &seed {
        windows.grow_for(e);
    }
    let mut ambient = windows.ambient_group(flow);
    let mut orbit: Vec<Element> = Vec::new(); // φ^j g for all j < n, all g
    let mut layer: Vec<Element> = seed.clone();
    let mut sizes: Vec<BigUint> = vec![measure(&ambient, &windows, &orbit, invariant)?];
    let mut ratios_exact: Vec<BigUint> = Vec::new();
    let mut stabilized = false;

    for n in 1..=cap {
        let mut grew = false;
        for e in &layer {
            grew |= windows.grow_for(e);
        }
        if grew {
            ambient = windows.ambient_group(flow);
        }
        orbit.extend(layer.iter().cloned());
        let tau = measure(&ambient, &windows, &orbit, invariant)?;
        // Exact step quotient (LogCard: Lagrange ratio; Rank: difference).
        let prev = sizes.last().expect("nonempty").clone();
        let ratio = match invariant {
            GrowthInvariant::LogCard => {
                let (q, r) = num_integer::Integer::div_rem(&tau, &prev);
                if !r.is_zero() {
                    return Err(Error::Internal(
                        "trajectory subgroup orders failed Lagrange divisibility".into(),
                    ));
                }
                q
            }
            GrowthInvariant::Rank => &tau - &prev,
        };
        if let Some(last) = ratios_exact.last() {
            if ratio > *last {
                return Err(Error::Internal(
                    "trajectory growth ratio increased; the ratio sequence must be nonincreasing"
                        .into(),
                ));
            }
        }
        ratios_exact.push(ratio);
        sizes.push(tau);

        let tail_stable = ratios_exact.len() >= window
            && ratios_exact[ratios_exact.len() - window..]
                .windows(2)
                .all(|w| w[0] == w[1]);
        if tail_stable && steps.is_none() {
            stabilized = true;
            break;
        }
        if steps.is_some() && n == cap {
            stabilized = tail_stable;
        }
        // Advance the orbit one application of φ.
        layer = layer.iter().map(|e| flow.apply(e)).collect();
    }
    if steps.is_none() && !stabilized {
        return Err(Error::Resource(format!(
            "subgroup trajectory did not stabilize within {SUBGROUP_STEP_CAP} steps"
        )));
    }

    let (estimate, method) = if stabilized {
        let r = ratios_exact.last().expect("at least one step").clone();
        match invariant {
            GrowthInvariant::LogCard => {
                (EntropyValue::exact_log_int(r), "subgroup-ratio-certificate".to_string())
            }
            GrowthInvariant::Rank => (
                EntropyValue::exact_int(r.to_u64().expect("rank step fits")),
                "subgroup-rank-certificate".to_string(),
            ),
        }
    } else {
        let n = sizes.len() - 1;
        let tail = match invariant {
            GrowthInvariant::LogCard => ln_biguint_pub(sizes.last().expect("nonempty")).0
                / n.max(1) as f64,
            GrowthInvariant::Rank => {
                sizes.last().expect("nonempty").to_f64().unwrap_or(f64::MAX) / n.max(1) as f64
            }
        };
        // Subadditivity makes the endpoint quotient an upper bound for the
        // limit, so "err = value" is a sound (if weak) enclosure.
        (EntropyValue::finite(tail, tail, None), "subgroup-endpoint-unstabilized".to_string())
    };

    let ratios = float_ratios(&sizes, invariant);
    Ok(TrajectoryReport { mode: TrajectoryMode::Subgroup, sizes, ratios, stabilized, estimate, method })
}

/// The tracked invariant of the subgroup generated by the orbit.
fn measure(
    ambient: &FgAbGroup,
    windows: &Windows,
    orbit: &[Element],
    invariant: GrowthInvariant,
) -> Result<BigUint> {
    let vecs: Vec<Vec<BigInt>> = orbit.iter().map(|e| windows.embed(e)).collect();
    let sub = ambient.subgroup(&vecs);
    match invariant {
        GrowthInvariant::LogCard => sub.order_in(ambient).ok_or_else(|| {
            Error::Domain(
                "subgroup mode requires the seed to generate a finite subgroup".into(),
            )
        }),
        GrowthInvariant::Rank => {
            Ok(BigUint::from(sub.lattice_rank() - ambient.relations().cols()))
        }
    }
}

/// Diagnostic float view of the step quotients.
fn float_ratios(sizes: &[BigUint], invariant: GrowthInvariant) -> Vec<f64> {
    sizes
        .windows(2)
        .map(|w| match invariant {
            GrowthInvariant::LogCard => {
                (ln_biguint_pub(&w[1]).0 - ln_biguint_pub(&w[0]).0).exp()
            }
            GrowthInvariant::Rank => {
                w[1].to_f64().unwrap_or(f64::MAX) - w[0].to_f64().unwrap_or(f64::MAX)
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Subset mode.
// ---------------------------------------------------------------------------

fn subset_trajectory(
    flow: &Flow,
    gens: &[Element],
    steps: Option<usize>,
) -> Result<TrajectoryReport> {
    for g in gens {
        flow.check_element(g)?;
    }
    let n_steps = steps.unwrap_or(SUBSET_STEP_CAP);
    if n_steps > SUBSET_STEP_CAP {
        return Err(Error::Resource(format!(
            "subset mode is capped at {SUBSET_STEP_CAP} steps (sumsets are exponential)"
        )));
    }
    let rank_measure: usize = flow
        .parts()
        .iter()
        .map(|p| match p {
            FlowPart::Fg(f) => f.group().ambient(),
            FlowPart::Cyclic(c) => {
                if c.base().is_zero() && !c.poly().is_zero() {
                    c.poly().deg_or_0()
                } else {
                    1
                }
            }
        })
        .sum();
    if rank_measure > 3 {
        return Err(Error::Resource(format!(
            "subset mode is capped at ambient rank 3 (this flow measures {rank_measure})"
        )));
    }

    // F with zero adjoined, so the trajectory is monotone nondecreasing.
    let mut seed: HashSet<Element> = gens.iter().map(|g| flow.reduce_element(g)).collect();
    seed.insert(flow.zero_element());
    let seed: Vec<Element> = seed.into_iter().collect();

    let mut current: HashSet<Element> = HashSet::new();
    current.insert(flow.zero_element());
    let mut layer: Vec<Element> = seed.clone(); // φ^k F as a list
    let mut sizes = vec![BigUint::one()];
    for _ in 1..=n_steps {
        if current.len().saturating_mul(layer.len()) > SUBSET_STATE_CAP {
            return Err(Error::Resource(format!(
                "subset sumset exceeded the {SUBSET_STATE_CAP}-state cap"
            )));
        }
        let mut next: HashSet<Element> = HashSet::with_capacity(current.len() * 2);
        for a in &current {
            for b in &layer {
                next.insert(add_elements(flow, a, b));
            }
        }
        current = next;
        sizes.push(BigUint::from(current.len()));
        layer = layer.iter().map(|e| flow.apply(e)).collect();
    }

    let n = sizes.len() - 1;
    let endpoint = ln_biguint_pub(sizes.last().expect("nonempty")).0 / n.max(1) as f64;
    // Subadditive sizes: the endpoint quotient bounds the limit from above.
    let estimate = EntropyValue::finite(endpoint, endpoint, None);
    let ratios = float_ratios(&sizes, GrowthInvariant::LogCard);
    Ok(TrajectoryReport {
        mode: TrajectoryMode::Subset,
        sizes,
        ratios,
        stabilized: false,
        estimate,
        method: "subset-endpoint".to_string(),
    })
}
