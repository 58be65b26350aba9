//! JSON and text rendering of command results.
//!
//! JSON objects are built from `serde_json::Value`, whose maps keep keys
//! sorted, and printed pretty with a trailing newline. `report_hash` is the
//! SHA-256 of the same document with `timing_ms` and `report_hash` removed.

use std::fmt::Write as _;

use amorph_core::discrepancy::DiscrepancyType;
use amorph_core::invariants::{Ac, AnalysisReport, KernelDescriptor, NullWitness};
use amorph_core::matrices::format_rate;
use amorph_core::Substitution;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const TOOL_NAME: &str = "amorph";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Wraps a command result with provenance fields and the stable hash.
pub fn envelope(command: &str, input: Option<(&str, &[u8])>, seed: Option<u64>, result: Value, timing_ms: u128) -> Value {
    let mut doc = Map::new();
    doc.insert("command".into(), json!(command));
    doc.insert("tool".into(), json!({ "name": TOOL_NAME, "version": VERSION }));
    doc.insert(
        "input".into(),
        match input {
            Some((name, bytes)) => json!({ "name": name, "sha256": sha256_hex(bytes) }),
            None => Value::Null,
        },
    );
    doc.insert("seed".into(), seed.map_or(Value::Null, |s| json!(s)));
    doc.insert("result".into(), result);
    let stable = to_pretty(&Value::Object(doc.clone()));
    doc.insert("report_hash".into(), json!(sha256_hex(stable.as_bytes())));
    doc.insert("timing_ms".into(), json!(timing_ms as u64));
    Value::Object(doc)
}

pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialise");
    s.push('\n');
    s
}

pub fn ac_json(ac: &Ac) -> Value {
    match ac {
        Ac::Infinity => json!("infinity"),
        other => json!(other.value()),
    }
}

fn discrepancy_json(t: &DiscrepancyType) -> Value {
    json!({
        "lambda": t.exact_rate(),
        "lambda_exact_integer": t.integer_rate,
        "degree": t.degree,
        "charpoly": t.critical.as_ref().map(|c| c.charpoly.to_string()),
    })
}

pub fn analysis_json(subst: &Substitution, report: &AnalysisReport, d_m: &[String]) -> Value {
    let pairs: Vec<Value> = report
        .pairs
        .iter()
        .map(|p| {
            json!({
                "pair": p.label,
                "rule": p.rule,
                "rate": p.growth.rate,
                "degree": p.growth.degree,
                "maximal": p.maximal,
            })
        })
        .collect();
    json!({
        "alphabet": report.alphabet,
        "rules": subst.letters().map(|a| subst.render_rule(a)).collect::<Vec<_>>(),
        "length_k": report.length,
        "primitive": report.primitive,
        "height": report.height,
        "pure_base": report.pure_base_rules,
        "discrepancy": {
            "pairs": pairs,
            "maximal_pairs": report.pairs.iter().filter(|p| p.maximal).map(|p| p.label.clone()).collect::<Vec<_>>(),
        },
        "lambda_s": report.lambda_s(),
        "lambda_s_exact_integer": report.discrepancy.integer_rate,
        "charpoly": report.discrepancy.critical.as_ref().map(|c| c.charpoly.to_string()),
        "d_s": report.d_s(),
        "ac": ac_json(&report.ac),
        "ac_class": report.ac.class(),
        "finite_system": report.finite_system,
        "discrete_spectrum": report.discrete_spectrum,
        "null_and_tame": report.null_and_tame,
        "graph_condition": report.graph_condition,
        "mef": report.mef,
        "unpurified_discrepancy": report.unpurified.as_ref().map(discrepancy_json),
        "d_m": d_m,
    })
}

fn rate_with_poly(t: &DiscrepancyType) -> String {
    let rate = format_rate(t.exact_rate());
    match &t.critical {
        Some(c) => format!("{rate} (root of {})", c.charpoly),
        None => rate,
    }
}

pub fn analysis_text(subst: &Substitution, report: &AnalysisReport, d_m: &[String]) -> String {
    let mut out = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "substitution");
    for a in subst.letters() {
        let _ = writeln!(out, "  {}", subst.render_rule(a));
    }
    let _ = writeln!(out, "length k           {}", report.length);
    let _ = writeln!(out, "primitive          {}", yes_no(report.primitive));
    let _ = writeln!(out, "height             {}", report.height);
    if report.height > 1 {
        let _ = writeln!(out, "pure base");
        for rule in &report.pure_base_rules {
            let _ = writeln!(out, "  {rule}");
        }
    }
    let _ = writeln!(out, "discrepancy substitution");
    if report.pairs.is_empty() {
        let _ = writeln!(out, "  (no pairs)");
    }
    let width = report.pairs.iter().map(|p| p.rule.chars().count()).max().unwrap_or(0);
    for p in &report.pairs {
        let _ = writeln!(
            out,
            "  {:<width$}  type {}{}",
            p.rule,
            p.growth,
            if p.maximal { "  maximal" } else { "" }
        );
    }
    let _ = writeln!(out, "lambda_s           {}", rate_with_poly(&report.discrepancy));
    let _ = writeln!(out, "d_s                {}", report.d_s());
    let _ = writeln!(out, "ac                 {}", report.ac);
    let _ = writeln!(out, "finite system      {}", yes_no(report.finite_system));
    let _ = writeln!(out, "discrete spectrum  {}", yes_no(report.discrete_spectrum));
    let _ = writeln!(out, "null and tame      {}", yes_no(report.null_and_tame));
    let _ = writeln!(out, "graph condition    {}", yes_no(report.graph_condition));
    if let Some(mef) = &report.mef {
        let _ = writeln!(out, "MEF                {mef}");
    }
    if let Some(raw) = &report.unpurified {
        let _ = writeln!(out, "unpurified discrepancy eigenvalue = {}", rate_with_poly(raw));
    }
    let _ = writeln!(out, "d_m (m = 0..{})     {}", d_m.len().saturating_sub(1), d_m.join(" "));
    out
}

/// Name of the kernel sequence `τ(x)` for each monoid element: `x` for the
/// identity, `c^ω` for constants, `y1`, `y2`, … otherwise.
pub fn kernel_names(subst: &Substitution, kernel: &KernelDescriptor) -> Vec<String> {
    let mut next = 0;
    kernel
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if i == 0 {
                "x".to_string()
            } else if e.is_constant() {
                format!("{}^ω", subst.alphabet().token(e.map.table()[0]))
            } else {
                next += 1;
                format!("y{next}")
            }
        })
        .collect()
}

fn map_text(subst: &Substitution, table: &[u32]) -> String {
    subst
        .letters()
        .map(|a| format!("{}→{}", subst.alphabet().token(a), subst.alphabet().token(table[a as usize])))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn kernel_json(subst: &Substitution, height: usize, kernel: &KernelDescriptor) -> Value {
    let names = kernel_names(subst, kernel);
    let elements: Vec<Value> = kernel
        .elements()
        .iter()
        .zip(&names)
        .map(|(e, name)| {
            json!({
                "sequence": name,
                "columns": e.word,
                "map": e.map.table().iter().map(|&b| subst.alphabet().token(b)).collect::<Vec<_>>(),
                "constant": e.is_constant(),
            })
        })
        .collect();
    json!({
        "height": height,
        "substitution": subst.letters().map(|a| subst.render_rule(a)).collect::<Vec<_>>(),
        "alphabet": subst.alphabet().letters(),
        "monoid_size": kernel.len(),
        "elements": elements,
        "kernel": names,
    })
}

pub fn kernel_text(subst: &Substitution, height: usize, kernel: &KernelDescriptor) -> String {
    let names = kernel_names(subst, kernel);
    let mut out = String::new();
    if height > 1 {
        let _ = writeln!(out, "height {height}; kernel of the pure base");
        for a in subst.letters() {
            let _ = writeln!(out, "  {}", subst.render_rule(a));
        }
    }
    let _ = writeln!(out, "monoid of column maps ({} elements)", kernel.len());
    for (e, name) in kernel.elements().iter().zip(&names) {
        let word = if e.word.is_empty() {
            "id".to_string()
        } else {
            e.word.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(".")
        };
        let _ = writeln!(out, "  {name:<6} columns {word:<10} {}", map_text(subst, e.map.table()));
    }
    let _ = writeln!(out, "kernel = {{{}}}", names.join(", "));
    out
}

pub fn witness_json(subst: &Substitution, witness: Option<&NullWitness>, t: usize, window: usize, prefix: usize) -> Value {
    json!({
        "t": t,
        "window": window,
        "prefix_length": prefix,
        "witness": witness.map(|w| json!({
            "positions": w.positions,
            "letters": [subst.alphabet().token(w.letters.0), subst.alphabet().token(w.letters.1)],
        })),
    })
}

pub fn witness_text(subst: &Substitution, witness: Option<&NullWitness>, t: usize, window: usize, prefix: usize) -> String {
    match witness {
        Some(w) => format!(
            "witness: G = {:?}, letters {} and {}; the sequence is not {t}-null\n",
            w.positions,
            subst.alphabet().token(w.letters.0),
            subst.alphabet().token(w.letters.1)
        ),
        None => format!("no witness for t = {t} within window {window} on a prefix of {prefix} symbols\n"),
    }
}
