//! Trajectory growth: entropy as the growth rate of finite data under the
//! map.
//!
//! The n-th trajectory of seed data F is F + φF + … + φⁿ⁻¹F. In subgroup
//! mode the engine tracks the subgroup generated (exact lattice or
//! finite-group arithmetic); in subset mode it enumerates plain sumsets.
//! `log τₙ / n` converges to the entropy, and the stabilized integer ratio
//! τₙ₊₁/τₙ certifies the limit on finite data.
//!
//! Run with `cargo run --example trajectory_growth`.

use entroscope::entropy::{canonical_seed, trajectory, TrajectoryMode};
use entroscope::flows::{parse_element, parse_flow};

fn main() {
    // Bernoulli shift over Z/3: each step adjoins one fresh Z/3 axis, so
    // the subgroup trajectory grows by a ratio of exactly 3.
    let bernoulli = parse_flow(r#"{"type":"cyclic","base":3,"poly":[]}"#).expect("parses");
    let seed = canonical_seed(&bernoulli);
    let report =
        trajectory(&bernoulli, &seed, TrajectoryMode::Subgroup, None).expect("finite data");
    println!("bernoulli shift over Z/3 — subgroup mode ({})", report.method);
    println!("  stabilized: {}  estimate: {}", report.stabilized, report.estimate);
    print!("{}", report.to_csv());
    println!();

    // Doubling on Z with the subset F = {0, 1}: the sumsets are intervals,
    // so log τ_n / n reproduces log 2 exactly at every step.
    let doubling =
        parse_flow(r#"{"type":"fg","rank":1,"relations":[],"matrix":[[2]]}"#).expect("parses");
    let gens = [parse_element(&doubling, &serde_json::json!([1]), "gens[0]").expect("in range")];
    let report =
        trajectory(&doubling, &gens, TrajectoryMode::Subset, Some(10)).expect("capped run");
    println!("doubling on Z with F = {{0, 1}} — subset mode ({})", report.method);
    for (n, size) in report.sizes.iter().enumerate() {
        println!("  tau_{n} = {size}");
    }
    println!("  estimate: {}", report.estimate);
}
