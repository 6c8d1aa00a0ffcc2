//! Command-line surface: parse flow documents, dispatch computations, and
//! emit deterministic reports.
//!
//! Every run with identical inputs and seed produces byte-identical output.
//! JSON documents render with sorted keys, text reports carry no timestamps
//! or machine-specific paths, and all randomized work goes through the
//! seeded generators of the verification harness.
//!
//! Exit codes: `0` success, `1` domain/parse/usage errors (diagnostic on
//! stderr), `2` verification failures or internal invariant violations —
//! scripted runs can tell "bad input" from "property violated".

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::entropy::{
    canonical_seed, classify, entropy, pinsker, sig10, trajectory, verify_axioms, Axiom,
    EntropyKind, EntropyValue, Method, TrajectoryMode,
};
use crate::error::{Error, Result};
use crate::flows::{parse_element, parse_flow, parse_poly_text, serialize_flow, Flow};
use crate::intpoly::mahler::mahler;
use crate::radicals::{radical, tower, RadicalKind};

/// Completed run: exit code plus captured output streams.
///
/// The process front end prints `stdout`/`stderr` verbatim and exits with
/// `code`; tests call [`run`] in-process and compare the captured bytes.
#[derive(Debug)]
pub struct RunOutput {
    /// Process exit code (0 success, 1 usage/domain, 2 verification).
    pub code: i32,
    /// Bytes for standard output.
    pub stdout: String,
    /// Bytes for standard error.
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "entroscope",
    version,
    about = "Exact algebraic entropy, Mahler measures, and radical towers",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Entropy of a flow under a chosen entropy kind.
    Entropy(EntropyArgs),
    /// Mahler measure of an integer polynomial.
    Mahler(MahlerArgs),
    /// One radical submodule of a flow (O, I, Q, A, or W).
    Radical(RadicalArgs),
    /// Iterated radical tower of a flow.
    Tower(TowerArgs),
    /// Pinsker subgroup of a flow under an entropy kind.
    Pinsker(PinskerArgs),
    /// Torsion-theory classification of a flow.
    Classify(ClassifyArgs),
    /// Trajectory growth table, with optional CSV export.
    Trajectory(TrajectoryArgs),
    /// Randomized verification of the entropy axioms.
    Verify(VerifyArgs),
}

/// Flow input shared by every flow-consuming subcommand: a file path or an
/// inline JSON document (detected by a leading `{`).
#[derive(Args)]
struct FlowArg {
    /// Flow document: path to a JSON file, or the document itself inline.
    flow: String,
}

impl FlowArg {
    fn load(&self) -> Result<Flow> {
        let trimmed = self.flow.trim_start();
        let text = if trimmed.starts_with('{') {
            self.flow.clone()
        } else {
            std::fs::read_to_string(&self.flow)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", self.flow)))?
        };
        parse_flow(&text)
    }
}

#[derive(Args)]
struct KindArg {
    /// Entropy kind: ha (algebraic), ent (torsion), or rank.
    #[arg(long, default_value = "ha")]
    kind: String,
}

impl KindArg {
    fn parse(&self) -> Result<EntropyKind> {
        EntropyKind::from_name(&self.kind)
            .ok_or_else(|| Error::Parse(format!("--kind: unknown entropy kind {:?}", self.kind)))
    }
}

#[derive(Args)]
struct FormatArg {
    /// Output format: text (aligned report) or json (sorted-key document).
    #[arg(long, default_value = "text")]
    format: String,
}

impl FormatArg {
    fn json(&self) -> Result<bool> {
        match self.format.as_str() {
            "text" => Ok(false),
            "json" => Ok(true),
            other => Err(Error::Parse(format!("--format: expected text or json, got {other:?}"))),
        }
    }
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    flow: FlowArg,
    #[command(flatten)]
    kind: KindArg,
    /// Computation method: auto, closed_form, or trajectory.
    #[arg(long, default_value = "auto")]
    method: String,
    /// Absolute error bound for certified numeric answers.
    #[arg(long, default_value_t = 1e-9)]
    precision: f64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct MahlerArgs {
    /// Polynomial as a JSON array of ascending coefficients, e.g.
    /// "[-1,-1,1]", or the path of a file holding one.
    #[arg(long)]
    poly: String,
    /// Absolute error bound for the certified measure.
    #[arg(long, default_value_t = 1e-9)]
    precision: f64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct RadicalArgs {
    #[command(flatten)]
    flow: FlowArg,
    /// Radical tag: O (nilpotent), I (unipotent), Q (quasi-periodic),
    /// A (integral), W (algebraic).
    #[arg(long, default_value = "Q")]
    letter: String,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct TowerArgs {
    #[command(flatten)]
    flow: FlowArg,
    /// Radical tag: O, I, or Q (towers of the idempotent kinds are trivial).
    #[arg(long, default_value = "Q")]
    letter: String,
    /// Maximum tower depth.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct PinskerArgs {
    #[command(flatten)]
    flow: FlowArg,
    #[command(flatten)]
    kind: KindArg,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    flow: FlowArg,
    #[command(flatten)]
    kind: KindArg,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct TrajectoryArgs {
    #[command(flatten)]
    flow: FlowArg,
    /// Growth mode: subgroup (generated subgroups) or subset (plain sumsets).
    #[arg(long, default_value = "subgroup")]
    mode: String,
    /// Seed elements as a JSON array of element payloads; defaults to the
    /// canonical seed of the flow.
    #[arg(long)]
    gens: Option<String>,
    /// Number of steps; defaults to the stabilization window heuristic.
    #[arg(long)]
    steps: Option<usize>,
    /// Write the growth table as CSV to this path.
    #[arg(long)]
    csv: Option<String>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    kind: KindArg,
    /// Comma-separated axiom labels (A0, A1, A2*, A3, A4*, A5, AT,
    /// SANDWICH); defaults to all of them.
    #[arg(long)]
    axioms: Option<String>,
    /// Number of sampled instances per axiom.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Seed for the deterministic instance generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: FormatArg,
}

/// Parses `argv` and runs one command, capturing both output streams.
///
/// This is the whole CLI as a pure function: the binary front end only
/// prints the captured streams and exits with the returned code.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful output, not errors.
            let message = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code: 1, stdout: String::new(), stderr: message }
            } else {
                RunOutput { code: 0, stdout: message, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((stdout, code)) => RunOutput { code, stdout, stderr: String::new() },
        Err(e) => RunOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: &Cmd) -> Result<(String, i32)> {
    match cmd {
        Cmd::Entropy(a) => cmd_entropy(a).map(ok),
        Cmd::Mahler(a) => cmd_mahler(a).map(ok),
        Cmd::Radical(a) => cmd_radical(a).map(ok),
        Cmd::Tower(a) => cmd_tower(a).map(ok),
        Cmd::Pinsker(a) => cmd_pinsker(a).map(ok),
        Cmd::Classify(a) => cmd_classify(a).map(ok),
        Cmd::Trajectory(a) => cmd_trajectory(a).map(ok),
        Cmd::Verify(a) => cmd_verify(a),
    }
}

fn ok(stdout: String) -> (String, i32) {
    (stdout, 0)
}

// ---------------------------------------------------------------------------
// Rendering helpers.
// ---------------------------------------------------------------------------

/// One-line value rendering: exact forms beat decimals.
fn render_value(v: &EntropyValue) -> String {
    match v {
        EntropyValue::Zero => "0 (exact)".to_string(),
        EntropyValue::Infinity => "infinity".to_string(),
        EntropyValue::Finite { value, err, exact } => match exact {
            Some(form) => format!("{} (exact)", form.render()),
            None => format!("{} ± {err:.1e}", sig10(*value)),
        },
    }
}

/// JSON view of a value: the wire enclosure plus rendering and exact form.
fn value_json(v: &EntropyValue) -> Value {
    let mut doc = serde_json::to_value(v).expect("entropy values serialize");
    if let (Value::Object(map), Some(form)) = (&mut doc, v.exact_form()) {
        map.insert("exact".to_string(), Value::String(form.render()));
    }
    doc
}

/// Aligned `name:  value` report from label/value pairs.
fn text_report(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k}:{pad} {v}", pad = " ".repeat(width - k.len()));
    }
    out
}

/// Canonical JSON document of a flow, for embedding in reports.
fn flow_json(flow: &Flow) -> Value {
    serde_json::from_str(&serialize_flow(flow)).expect("canonical flow documents parse")
}

fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn big_to_json(n: &BigUint) -> Value {
    let num: serde_json::Number =
        n.to_string().parse().expect("decimal integer strings are valid numbers");
    Value::Number(num)
}

fn parse_radical_letter(s: &str) -> Result<RadicalKind> {
    RadicalKind::from_letter(s)
        .ok_or_else(|| Error::Parse(format!("--letter: expected one of O I Q A W, got {s:?}")))
}

fn radical_name(kind: RadicalKind) -> &'static str {
    match kind {
        RadicalKind::Nilpotent => "nilpotent",
        RadicalKind::Unipotent => "unipotent",
        RadicalKind::QuasiPeriodic => "quasi-periodic",
        RadicalKind::Integral => "integral",
        RadicalKind::Algebraic => "algebraic",
    }
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

fn cmd_entropy(a: &EntropyArgs) -> Result<String> {
    let kind = a.kind.parse()?;
    let method = Method::from_name(&a.method)
        .ok_or_else(|| Error::Parse(format!("--method: unknown method {:?}", a.method)))?;
    let flow = a.flow.load()?;
    let value = entropy(&flow, kind, method, a.precision)?;
    if a.format.json()? {
        return Ok(json_doc(&json!({
            "command": "entropy",
            "flow": flow_json(&flow),
            "kind": kind.name(),
            "method": a.method,
            "precision": a.precision,
            "value": value_json(&value),
            "rendered": render_value(&value),
        })));
    }
    Ok(text_report(&[
        ("flow", flow.iso_summary()),
        ("kind", kind.name().to_string()),
        ("method", a.method.clone()),
        ("value", render_value(&value)),
    ]))
}

fn cmd_mahler(a: &MahlerArgs) -> Result<String> {
    let text = if a.poly.trim_start().starts_with('[') {
        a.poly.clone()
    } else {
        std::fs::read_to_string(&a.poly)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", a.poly)))?
    };
    let poly = parse_poly_text(&text)?;
    let value = mahler(&poly, a.precision)?;
    if a.format.json()? {
        return Ok(json_doc(&json!({
            "command": "mahler",
            "poly": a.poly.trim(),
            "value": value_json(&value),
            "rendered": render_value(&value),
        })));
    }
    Ok(text_report(&[("poly", poly.to_string()), ("value", render_value(&value))]))
}

fn cmd_radical(a: &RadicalArgs) -> Result<String> {
    let kind = parse_radical_letter(&a.letter)?;
    let flow = a.flow.load()?;
    let desc = radical(&flow, kind)?;
    if a.format.json()? {
        return Ok(json_doc(&json!({
            "command": "radical",
            "flow": flow_json(&flow),
            "kind": kind.letter().to_string(),
            "radical": desc.to_json(),
            "whole": desc.is_whole(&flow),
            "zero": desc.is_zero(&flow),
        })));
    }
    Ok(text_report(&[
        ("flow", flow.iso_summary()),
        ("kind", format!("{} ({})", kind.letter(), radical_name(kind))),
        ("radical", desc.iso().to_string()),
        ("whole", desc.is_whole(&flow).to_string()),
        ("zero", desc.is_zero(&flow).to_string()),
    ]))
}

fn cmd_tower(a: &TowerArgs) -> Result<String> {
    let kind = parse_radical_letter(&a.letter)?;
    let flow = a.flow.load()?;
    let chain = tower(&flow, kind, a.depth)?;
    if a.format.json()? {
        let levels: Vec<Value> = chain.iter().map(|d| d.to_json()).collect();
        return Ok(json_doc(&json!({
            "command": "tower",
            "flow": flow_json(&flow),
            "kind": kind.letter().to_string(),
            "tower": levels,
            "stable": chain.last().is_some_and(|d| d.is_whole(&flow)),
        })));
    }
    let mut rows: Vec<(&str, String)> = vec![
        ("flow", flow.iso_summary()),
        ("kind", format!("{} ({})", kind.letter(), radical_name(kind))),
    ];
    let labels: Vec<String> =
        (0..chain.len()).map(|i| format!("{}_{i}", kind.letter())).collect();
    for (label, desc) in labels.iter().zip(&chain) {
        rows.push((label.as_str(), desc.iso().to_string()));
    }
    Ok(text_report(&rows))
}

fn cmd_pinsker(a: &PinskerArgs) -> Result<String> {
    let kind = a.kind.parse()?;
    let flow = a.flow.load()?;
    let desc = pinsker(&flow, kind)?;
    if a.format.json()? {
        return Ok(json_doc(&json!({
            "command": "pinsker",
            "flow": flow_json(&flow),
            "kind": kind.name(),
            "pinsker": desc.to_json(),
            "whole": desc.is_whole(&flow),
            "zero": desc.is_zero(&flow),
        })));
    }
    Ok(text_report(&[
        ("flow", flow.iso_summary()),
        ("kind", kind.name().to_string()),
        ("pinsker", desc.iso().to_string()),
        ("whole", desc.is_whole(&flow).to_string()),
        ("zero", desc.is_zero(&flow).to_string()),
    ]))
}

fn cmd_classify(a: &ClassifyArgs) -> Result<String> {
    let kind = a.kind.parse()?;
    let flow = a.flow.load()?;
    let report = classify(&flow, kind)?;
    if a.format.json()? {
        return Ok(json_doc(&json!({
            "command": "classify",
            "flow": flow_json(&flow),
            "kind": kind.name(),
            "class": report.class.to_string(),
            "pinsker": report.pinsker.to_json(),
            "sub": report.sub_iso,
            "quotient": report.quot_iso,
        })));
    }
    Ok(text_report(&[
        ("flow", flow.iso_summary()),
        ("kind", kind.name().to_string()),
        ("class", report.class.to_string()),
        ("pinsker", report.pinsker.iso().to_string()),
        ("sub", report.sub_iso.clone()),
        ("quotient", report.quot_iso.clone()),
    ]))
}

fn cmd_trajectory(a: &TrajectoryArgs) -> Result<String> {
    let mode = TrajectoryMode::from_name(&a.mode)
        .ok_or_else(|| Error::Parse(format!("--mode: expected subgroup or subset, got {:?}", a.mode)))?;
    let flow = a.flow.load()?;
    let gens = match &a.gens {
        None => canonical_seed(&flow),
        Some(text) => {
            let doc: Value = serde_json::from_str(text)
                .map_err(|e| Error::Parse(format!("--gens: {e}")))?;
            let arr = doc
                .as_array()
                .ok_or_else(|| Error::Parse("--gens: expected a JSON array".into()))?;
            arr.iter()
                .enumerate()
                .map(|(i, v)| parse_element(&flow, v, &format!("gens[{i}]")))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let report = trajectory(&flow, &gens, mode, a.steps)?;
    let csv = report.to_csv();
    if let Some(path) = &a.csv {
        std::fs::write(path, &csv)
            .map_err(|e| Error::Parse(format!("cannot write {path}: {e}")))?;
    }
    if a.format.json()? {
        let sizes: Vec<Value> = report.sizes.iter().map(big_to_json).collect();
        return Ok(json_doc(&json!({
            "command": "trajectory",
            "flow": flow_json(&flow),
            "mode": a.mode,
            "method": report.method,
            "sizes": sizes,
            "ratios": report.ratios,
            "stabilized": report.stabilized,
            "estimate": value_json(&report.estimate),
            "rendered": render_value(&report.estimate),
        })));
    }
    let mut out = text_report(&[
        ("flow", flow.iso_summary()),
        ("mode", a.mode.clone()),
        ("method", report.method.clone()),
        ("stabilized", report.stabilized.to_string()),
        ("estimate", render_value(&report.estimate)),
    ]);
    out.push('\n');
    out.push_str(&csv);
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, i32)> {
    let kind = a.kind.parse()?;
    let axioms: Vec<Axiom> = match &a.axioms {
        None => Axiom::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Axiom::parse)
            .collect::<Result<Vec<_>>>()?,
    };
    let reports = verify_axioms(kind, &axioms, a.trials, a.seed)?;
    let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
    let code = if failed == 0 { 0 } else { 2 };
    if a.format.json()? {
        let docs: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "axiom": r.axiom.name(),
                    "trials": r.trials,
                    "passes": r.passes,
                    "failures": r.failures,
                    "notes": r.notes,
                })
            })
            .collect();
        let doc = json!({
            "command": "verify",
            "kind": kind.name(),
            "seed": a.seed,
            "trials": a.trials,
            "reports": docs,
            "failed": failed,
        });
        return Ok((json_doc(&doc), code));
    }
    let mut out = text_report(&[
        ("kind", kind.name().to_string()),
        ("seed", a.seed.to_string()),
        ("trials", a.trials.to_string()),
    ]);
    for r in &reports {
        let verdict = if r.failures.is_empty() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:<9} {:>4}/{:<4} {verdict}", r.axiom.name(), r.passes, r.trials);
        for note in &r.notes {
            let _ = writeln!(out, "  note: {note}");
        }
    }
    if failed > 0 {
        // Failing instances as one machine-readable document.
        let dump: Vec<Value> = reports
            .iter()
            .flat_map(|r| {
                r.failures
                    .iter()
                    .map(|f| json!({ "axiom": r.axiom.name(), "failure": f }))
            })
            .collect();
        let _ = writeln!(out, "failing instances:");
        out.push_str(&json_doc(&Value::Array(dump)));
    }
    Ok((out, code))
}
