//! End-to-end acceptance checks, one test per headline guarantee.
//!
//! Every check here runs the full public surface — parsers, exact backends,
//! radicals, Pinsker machinery, trajectory engines, harness, CLI — against
//! closed-form oracles and frozen reference values. Randomized checks use
//! fixed seeds, so a failure is always reproducible verbatim.

mod util;

use std::path::PathBuf;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use entroscope::abgroup::{FgAbGroup, IMat};
use entroscope::entropy::{
    classify, combine, entropy, pinsker, trajectory, CombineOp, EntropyKind, EntropyValue,
    ExactForm, Method, TorsionClass, TrajectoryMode,
};
use entroscope::flows::{
    parse_element, parse_flow, power_flow, sub_quot, CyclicFlow, Element, FgFlow, Flow, FlowPart,
    PartSub, SubmoduleDesc,
};
use entroscope::intpoly::mahler::mahler;
use entroscope::radicals::{radical, tower, RadicalKind};
use entroscope::IntPoly;
use util::{orbit_closure, sample_cyclic, sample_fg, sample_flow, sample_poly};

const LN2: f64 = core::f64::consts::LN_2;
/// log((1 + √5)/2), the algebraic entropy of the Fibonacci companion flow.
const FIB_ENTROPY: f64 = 0.481_211_825_059_603_5;
/// Mahler measure of Lehmer's degree-10 polynomial.
const LEHMER_MEASURE: f64 = 0.162_357_612_007_738;

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn corpus_flow(name: &str) -> Flow {
    let text = std::fs::read_to_string(corpus_path(name)).expect("corpus file readable");
    parse_flow(&text).expect("corpus documents parse")
}

fn doc(text: &str) -> Flow {
    parse_flow(text).expect("inline documents parse")
}

fn num(v: &EntropyValue) -> f64 {
    v.as_f64().expect("finite entropy value")
}

fn element(flow: &Flow, payload: serde_json::Value) -> Element {
    parse_element(flow, &payload, "element").expect("payload in range")
}

// ---------------------------------------------------------------------------
// 1. Bernoulli normalization: the shift over ℤ/p has torsion entropy log p,
//    certified exactly by the trajectory engine, in under a second each.
// ---------------------------------------------------------------------------

#[test]
fn bernoulli_normalization_is_exact() {
    for p in [2u64, 3, 5, 7] {
        let flow = doc(&format!(r#"{{"type":"cyclic","base":{p},"poly":[]}}"#));
        let start = Instant::now();
        let value = entropy(&flow, EntropyKind::Ent, Method::Trajectory, 1e-9)
            .expect("shift trajectories stabilize");
        let elapsed = start.elapsed();
        match &value {
            EntropyValue::Finite { value: mid, err, exact: Some(ExactForm::LogInt(n)) } => {
                assert_eq!(n, &BigUint::from(p), "wrong exact form for p = {p}");
                assert!(*err <= 1e-12, "err {err} too large for p = {p}");
                assert!((mid - (p as f64).ln()).abs() <= 1e-12);
            }
            other => panic!("expected an exact log {p}, got {other:?}"),
        }
        assert!(elapsed.as_secs_f64() < 1.0, "p = {p} took {elapsed:?}");
    }
    println!("PASS bernoulli normalization: ent(shift over Z/p) = log p exactly, p in {{2,3,5,7}}");
}

// ---------------------------------------------------------------------------
// 2. Doubling and Fibonacci: closed forms against trajectory growth.
// ---------------------------------------------------------------------------

#[test]
fn doubling_and_fibonacci_growth() {
    // Closed form for (Z, ×2) through the measure of the characteristic
    // polynomial.
    let doubling = doc(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#);
    let ha = entropy(&doubling, EntropyKind::Ha, Method::ClosedForm, 1e-9).expect("closed form");
    assert!((num(&ha) - LN2).abs() <= 1e-9);

    // Subset growth of F = {0, 1}: the n-th sumset is exactly {0, …, 2ⁿ−1},
    // so log τₙ / n equals log 2 on the nose for every n ≤ 20.
    let gens = [element(&doubling, json!([1]))];
    let report = trajectory(&doubling, &gens, TrajectoryMode::Subset, Some(20))
        .expect("within subset caps");
    assert_eq!(report.sizes.len(), 21);
    for (n, size) in report.sizes.iter().enumerate() {
        assert_eq!(size, &(BigUint::one() << n), "tau_{n} is not 2^{n}");
    }

    // Fibonacci companion: closed form …
    let fib = corpus_flow("fibonacci.json");
    let ha = entropy(&fib, EntropyKind::Ha, Method::Auto, 1e-9).expect("closed form");
    assert!((num(&ha) - FIB_ENTROPY).abs() <= 1e-9);

    // … and the subset estimate at n = 15 lands within 0.1 of it.
    let gens = [element(&fib, json!([1, 0]))];
    let report =
        trajectory(&fib, &gens, TrajectoryMode::Subset, Some(15)).expect("within subset caps");
    assert!(
        (num(&report.estimate) - FIB_ENTROPY).abs() <= 0.1,
        "subset estimate {} too far from {FIB_ENTROPY}",
        num(&report.estimate),
    );
    println!("PASS doubling and fibonacci: mahler closed forms match exact subset growth");
}

// ---------------------------------------------------------------------------
// 3. Lehmer's polynomial: the frozen reference measure at 1e-8, fast.
// ---------------------------------------------------------------------------

#[test]
fn lehmer_measure_reference_value() {
    let coeffs = IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let start = Instant::now();
    let value = mahler(&coeffs, 1e-9).expect("nonzero polynomial");
    let elapsed = start.elapsed();
    assert!((num(&value) - LEHMER_MEASURE).abs() <= 1e-8);
    assert!(value.err_bound() <= 1e-8);
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS lehmer: m = 0.1623576120 ± 1e-8 in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// 4. Addition theorem suite: measure additivity on 100 cyclic pairs and
//    exact torsion-entropy additivity on 100 finite flows.
// ---------------------------------------------------------------------------

#[test]
fn addition_theorem_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AD1);
    for trial in 0..100 {
        let f = sample_poly(&mut rng, 6, 9);
        let g = sample_poly(&mut rng, 6, 9);
        let hf = entropy(
            &Flow::single(FlowPart::Cyclic(CyclicFlow::new(BigUint::zero(), f.clone()))),
            EntropyKind::Ha,
            Method::Auto,
            1e-9,
        )
        .expect("cyclic closed form");
        let hg = entropy(
            &Flow::single(FlowPart::Cyclic(CyclicFlow::new(BigUint::zero(), g.clone()))),
            EntropyKind::Ha,
            Method::Auto,
            1e-9,
        )
        .expect("cyclic closed form");
        let hfg = entropy(
            &Flow::single(FlowPart::Cyclic(CyclicFlow::new(BigUint::zero(), f.mul(&g)))),
            EntropyKind::Ha,
            Method::Auto,
            1e-9,
        )
        .expect("cyclic closed form");
        let gap = (num(&hfg) - num(&hf) - num(&hg)).abs();
        assert!(gap <= 2e-9, "trial {trial}: |ha(fg) - ha(f) - ha(g)| = {gap} for f={f}, g={g}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x0AD2);
    for trial in 0..100 {
        let fgf = sample_fg(&mut rng, true);
        let flow = Flow::single(FlowPart::Fg(fgf.clone()));
        let v: Vec<BigInt> = (0..fgf.group().ambient())
            .map(|_| BigInt::from(rng.gen_range(-2..=2i64)))
            .collect();
        let sub = orbit_closure(&fgf, v);
        let desc = SubmoduleDesc::new(&flow, vec![PartSub::Lattice(sub)])
            .expect("orbit closures are invariant");
        let (n, q) = sub_quot(&flow, &desc).expect("invariant submodule");
        let hm = entropy(&flow, EntropyKind::Ent, Method::Auto, 1e-9).expect("finite flow");
        let hn = entropy(&n, EntropyKind::Ent, Method::Auto, 1e-9).expect("finite flow");
        let hq = entropy(&q, EntropyKind::Ent, Method::Auto, 1e-9).expect("finite flow");
        assert_eq!(hm, hn.add(&hq), "trial {trial}: ent additivity must be exact");
        assert!(hm.is_zero(), "finite flows have zero torsion entropy");
    }
    println!("PASS addition theorem: 100 cyclic pairs within 2e-9, 100 finite splits exact");
}

// ---------------------------------------------------------------------------
// 5. Logarithmic law: entropy of the k-th power is k times the entropy.
// ---------------------------------------------------------------------------

#[test]
fn logarithmic_law_on_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10C);
    let mut flows = Vec::new();
    for _ in 0..30 {
        flows.push(Flow::single(FlowPart::Cyclic(CyclicFlow::new(
            BigUint::zero(),
            sample_poly(&mut rng, 4, 5),
        ))));
    }
    for _ in 0..20 {
        flows.push(Flow::single(FlowPart::Fg(sample_fg(&mut rng, false))));
    }
    for (i, flow) in flows.iter().enumerate() {
        let base = entropy(flow, EntropyKind::Ha, Method::Auto, 1e-9).expect("closed form");
        for k in 2u32..=4 {
            let powered = power_flow(flow, k).expect("powers stay representable");
            let hk = entropy(&powered, EntropyKind::Ha, Method::Auto, 1e-9).expect("closed form");
            let gap = (num(&hk) - f64::from(k) * num(&base)).abs();
            let tol = f64::from(k + 1) * 1e-9;
            assert!(gap <= tol, "flow {i}, k = {k}: gap {gap} > {tol}");
        }
    }
    println!("PASS logarithmic law: 50 flows, k in {{2,3,4}}, within (k+1)e-9");
}

// ---------------------------------------------------------------------------
// 6. Radical structure: containments, the radical property, heredity, and
//    brute-force agreement on small finite flows.
// ---------------------------------------------------------------------------

#[test]
fn radical_structure_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6AD);
    let mut brute_forced = 0usize;
    for trial in 0..200 {
        let flow = sample_flow(&mut rng);
        let descs: Vec<(RadicalKind, SubmoduleDesc)> = RadicalKind::ALL
            .iter()
            .map(|&k| (k, radical(&flow, k).expect("squarefree bases")))
            .collect();
        // Containment lattice O, I ⊆ Q ⊆ A ⊆ W.
        for (a, da) in &descs {
            for (b, db) in &descs {
                if a.leq(*b) {
                    assert!(
                        da.is_subset_of(db, &flow),
                        "trial {trial}: {} ⊄ {} on {}",
                        a.letter(),
                        b.letter(),
                        flow.iso_summary()
                    );
                }
            }
        }
        for (kind, desc) in &descs {
            // Radical property: the quotient by the radical has zero radical.
            let (sub, quot) = sub_quot(&flow, desc).expect("radicals are invariant");
            let again = radical(&quot, *kind).expect("squarefree bases");
            assert!(
                again.is_zero(&quot),
                "trial {trial}: r(M/r(M)) = {} for {} on {}",
                again.iso(),
                kind.letter(),
                flow.iso_summary()
            );
            // Heredity: the radical is all of itself as a subflow.
            let hereditary = radical(&sub, *kind).expect("squarefree bases");
            assert!(
                hereditary.is_whole(&sub),
                "trial {trial}: r(r(M)) proper for {} on {}",
                kind.letter(),
                flow.iso_summary()
            );
        }
        // Brute force on finite lattices: decide membership per element by
        // walking orbits, then compare against the computed radicals.
        if let [FlowPart::Fg(f)] = flow.parts() {
            if let Some(order) = f.group().order() {
                if order <= BigUint::from(10_000u32) {
                    brute_force_fg(&flow, f, &descs, trial);
                    brute_forced += 1;
                }
            }
        }
    }
    assert!(brute_forced >= 20, "sampler produced only {brute_forced} small finite flows");
    println!("PASS radical structure: 200 flows; {brute_forced} brute-forced finite lattices");
}

/// Does iterating `m` from `v` inside `g` eventually reach the zero residue?
fn iterates_to_zero(g: &FgAbGroup, m: &IMat, v: &[BigInt]) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut x = g.residue(v);
    loop {
        if x.iter().all(BigInt::is_zero) {
            return true;
        }
        if !seen.insert(x.clone()) {
            return false;
        }
        x = g.residue(&m.mul_vec(&x));
    }
}

fn brute_force_fg(
    flow: &Flow,
    f: &FgFlow,
    descs: &[(RadicalKind, SubmoduleDesc)],
    trial: usize,
) {
    let elements = f.group().enumerate_elements(10_000).expect("small finite group");
    let shifted = f.matrix().sub(&IMat::identity(f.group().ambient()));
    for v in &elements {
        // A point lies in the nilpotent radical exactly when powers of the
        // map kill it, and in the unipotent radical when powers of (map − 1)
        // do. On a finite flow every orbit is eventually periodic, so the
        // quasi-periodic, integral, and algebraic radicals hold everything.
        let eventually_zero = iterates_to_zero(f.group(), f.matrix(), v);
        let unipotent_kills = iterates_to_zero(f.group(), &shifted, v);
        let elem = Element { parts: vec![entroscope::flows::PartElement::Vector(v.clone())] };
        for (kind, desc) in descs {
            let member = desc.contains_element(flow, &elem).expect("element in range");
            let expected = match kind {
                RadicalKind::Nilpotent => eventually_zero,
                RadicalKind::Unipotent => unipotent_kills,
                RadicalKind::QuasiPeriodic | RadicalKind::Integral | RadicalKind::Algebraic => {
                    true
                }
            };
            assert_eq!(
                member,
                expected,
                "trial {trial}: {} membership of {v:?} in {}",
                kind.letter(),
                flow.iso_summary()
            );
        }
    }
}

// ---------------------------------------------------------------------------
// 7. The unitriangular tower: one axis per level, full lattice at the top.
// ---------------------------------------------------------------------------

#[test]
fn unitriangular_tower_climbs_axes() {
    let flow = corpus_flow("big_matrix_k5.json");
    let chain = tower(&flow, RadicalKind::QuasiPeriodic, 5).expect("torsion-free flow");
    assert_eq!(chain.len(), 6);
    for n in 1..=4usize {
        let level = &chain[n];
        for (i, expect) in (0..5).map(|i| (i, i < n)) {
            let mut coords = vec![0; 5];
            coords[i] = 1;
            let e = element(&flow, json!(coords));
            assert_eq!(
                level.contains_element(&flow, &e).expect("unit vectors in range"),
                expect,
                "level {n}, axis {i}"
            );
        }
        assert!(!level.is_whole(&flow));
    }
    assert!(chain[5].is_whole(&flow), "Q_5 must be the whole lattice");
    println!("PASS unitriangular tower: Q_n = <e_1..e_n> for n ≤ 4, Q_5 = Z^5");
}

// ---------------------------------------------------------------------------
// 8. Pinsker identities: the verified radicals agree with their
//    torsion-theoretic closed forms, and the sandwich always holds.
// ---------------------------------------------------------------------------

#[test]
fn pinsker_identities_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x715);

    // Torsion flows: the torsion-entropy Pinsker subgroup is exactly the
    // quasi-periodic radical.
    for trial in 0..100 {
        let flow = if trial % 2 == 0 {
            Flow::single(FlowPart::Fg(sample_fg(&mut rng, true)))
        } else {
            Flow::single(FlowPart::Cyclic(sample_cyclic(&mut rng, true)))
        };
        let p = pinsker(&flow, EntropyKind::Ent).expect("verification passes");
        let q = radical(&flow, RadicalKind::QuasiPeriodic).expect("squarefree bases");
        assert!(
            p.is_subset_of(&q, &flow) && q.is_subset_of(&p, &flow),
            "trial {trial}: P_ent = {} vs Q = {} on {}",
            p.iso(),
            q.iso(),
            flow.iso_summary()
        );
        sandwich(&flow, EntropyKind::Ent, &p, trial);
    }

    // General flows: the algebraic-entropy Pinsker subgroup is the
    // quasi-periodic radical.
    for trial in 0..100 {
        let flow = sample_flow(&mut rng);
        let p = pinsker(&flow, EntropyKind::Ha).expect("verification passes");
        let q = radical(&flow, RadicalKind::QuasiPeriodic).expect("squarefree bases");
        assert!(
            p.is_subset_of(&q, &flow) && q.is_subset_of(&p, &flow),
            "trial {trial}: P_ha = {} vs Q = {} on {}",
            p.iso(),
            q.iso(),
            flow.iso_summary()
        );
        sandwich(&flow, EntropyKind::Ha, &p, trial);
    }

    // Cyclic flows: the rank-entropy Pinsker subgroup is the full pointwise
    // algebraic radical.
    for trial in 0..60 {
        let flow = Flow::single(FlowPart::Cyclic(sample_cyclic(&mut rng, false)));
        let p = pinsker(&flow, EntropyKind::EntRank).expect("verification passes");
        let w = radical(&flow, RadicalKind::Algebraic).expect("squarefree bases");
        assert!(
            p.is_subset_of(&w, &flow) && w.is_subset_of(&p, &flow),
            "trial {trial}: P_rank = {} vs W = {} on {}",
            p.iso(),
            w.iso(),
            flow.iso_summary()
        );
        sandwich(&flow, EntropyKind::EntRank, &p, trial);
    }
    println!("PASS pinsker identities: P_ent = Q on torsion, P_ha = Q, P_rank = W on cyclic");
}

fn sandwich(flow: &Flow, kind: EntropyKind, p: &SubmoduleDesc, trial: usize) {
    let q = radical(flow, RadicalKind::QuasiPeriodic).expect("squarefree bases");
    let w = radical(flow, RadicalKind::Algebraic).expect("squarefree bases");
    assert!(
        q.is_subset_of(p, flow),
        "trial {trial}: Q = {} ⊄ P_{} = {} on {}",
        q.iso(),
        kind.name(),
        p.iso(),
        flow.iso_summary()
    );
    assert!(
        p.is_subset_of(&w, flow),
        "trial {trial}: P_{} = {} ⊄ W = {} on {}",
        kind.name(),
        p.iso(),
        w.iso(),
        flow.iso_summary()
    );
}

// ---------------------------------------------------------------------------
// 9. Classification contrasts: the same flow on opposite sides of two
//    torsion theories, and a genuinely mixed lattice flow.
// ---------------------------------------------------------------------------

#[test]
fn classification_contrasts() {
    let half = corpus_flow("half.json");
    let ha = classify(&half, EntropyKind::Ha).expect("verification passes");
    assert_eq!(ha.class, TorsionClass::TorsionFree);
    let rank = classify(&half, EntropyKind::EntRank).expect("verification passes");
    assert_eq!(rank.class, TorsionClass::Torsion);

    let diag = doc(r#"{"type":"fg","rank":2,"relations":[],"matrix":[[1,0],[0,2]]}"#);
    let report = classify(&diag, EntropyKind::Ha).expect("verification passes");
    assert_eq!(report.class, TorsionClass::Mixed);
    let e1 = element(&diag, json!([1, 0]));
    let e2 = element(&diag, json!([0, 1]));
    assert!(report.pinsker.contains_element(&diag, &e1).expect("in range"));
    assert!(!report.pinsker.contains_element(&diag, &e2).expect("in range"));
    assert_eq!(report.sub_iso, "Z");
    assert_eq!(report.quot_iso, "Z");
    println!("PASS classification: half flow flips sides; diag(1,2) is mixed with P = <e1>");
}

// ---------------------------------------------------------------------------
// 10. The value algebra: binary hulls and combination conventions.
// ---------------------------------------------------------------------------

#[test]
fn binary_hull_and_combine_laws() {
    let variants = [
        EntropyValue::Zero,
        EntropyValue::exact_log_int(BigUint::from(5u32)),
        EntropyValue::exact_int(3),
        EntropyValue::finite(0.75, 1e-12, None),
        EntropyValue::Infinity,
    ];
    for v in &variants {
        let hull = v.binary_hull();
        assert!(
            matches!(hull, EntropyValue::Zero | EntropyValue::Infinity),
            "hull of {v:?} is {hull:?}"
        );
        assert_eq!(hull.is_zero(), v.is_zero(), "hull must vanish exactly on zero");
        // Idempotence.
        assert_eq!(hull.binary_hull(), hull);
    }
    // x + ∞ = ∞ and sup(x, ∞) = ∞ for every variant, on both sides.
    for v in &variants {
        assert!(v.add(&EntropyValue::Infinity).is_infinite());
        assert!(EntropyValue::Infinity.add(v).is_infinite());
        assert!(v.sup(&EntropyValue::Infinity).is_infinite());
        assert_eq!(
            combine(&[v.clone(), EntropyValue::Infinity], CombineOp::Sum),
            EntropyValue::Infinity
        );
        assert_eq!(
            combine(&[v.clone(), EntropyValue::Infinity], CombineOp::Sup),
            EntropyValue::Infinity
        );
    }
    // Exact forms compose: log 2 + log 3 = log 6, 3 · (rank 1) = rank 3.
    let sum = EntropyValue::exact_log_int(BigUint::from(2u32))
        .add(&EntropyValue::exact_log_int(BigUint::from(3u32)));
    assert_eq!(sum.exact_form(), Some(&ExactForm::LogInt(BigUint::from(6u32))));
    let scaled = EntropyValue::exact_int(1).scale_int(3);
    assert_eq!(scaled.exact_form(), Some(&ExactForm::Int(3)));
    println!("PASS value algebra: binary hulls two-valued, infinity absorbs under + and sup");
}

// ---------------------------------------------------------------------------
// 11. CLI determinism: repeated invocations are byte-identical, and the
//     installed binary agrees with the in-process surface.
// ---------------------------------------------------------------------------

#[test]
fn cli_runs_are_byte_identical() {
    let bernoulli = corpus_path("bernoulli_p3.json");
    let big = corpus_path("big_matrix_k5.json");
    let arg_sets: Vec<Vec<String>> = vec![
        vec![
            "entropy".into(),
            "--kind".into(),
            "ent".into(),
            bernoulli.to_string_lossy().into_owned(),
        ],
        vec![
            "tower".into(),
            "--letter".into(),
            "Q".into(),
            "--depth".into(),
            "5".into(),
            "--format".into(),
            "json".into(),
            big.to_string_lossy().into_owned(),
        ],
        vec![
            "verify".into(),
            "--kind".into(),
            "ha".into(),
            "--axioms".into(),
            "AT,A4*".into(),
            "--trials".into(),
            "6".into(),
            "--seed".into(),
            "7".into(),
            "--format".into(),
            "json".into(),
        ],
    ];
    for args in &arg_sets {
        let argv =
            || std::iter::once("entroscope".to_string()).chain(args.iter().cloned());
        let first = entroscope::cli::run(argv());
        let second = entroscope::cli::run(argv());
        assert_eq!(first.code, 0, "stderr: {}", first.stderr);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(first.stderr, second.stderr);
    }

    // The binary front end prints exactly what the library surface returns.
    let in_process = entroscope::cli::run(
        ["entroscope", "entropy", "--kind", "ent", &bernoulli.to_string_lossy()]
            .into_iter()
            .map(String::from),
    );
    let spawned = std::process::Command::new(env!("CARGO_BIN_EXE_entroscope"))
        .args(["entropy", "--kind", "ent", &bernoulli.to_string_lossy()])
        .output()
        .expect("binary runs");
    assert_eq!(String::from_utf8_lossy(&spawned.stdout), in_process.stdout);
    assert_eq!(spawned.status.code(), Some(0));
    println!("PASS cli determinism: three command families byte-identical across reruns");
}
