use std::fmt::Write as _;

use btangent::index::VerificationReport;
use btangent::obstruction::BmReport;
use btangent::sphere::CheckReport;
use btangent::{BGraph, ClassificationVerdict, Coloring, EulerReport, SphereMapReport};

use crate::report::{ColorReport, EdgeReport, IndexReport};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn coloring_table(out: &mut String, c: &Coloring) {
    out.push_str("| region | sign |\n|---|---|\n");
    for (label, s) in c.iter() {
        let _ = writeln!(out, "| {label} | {s} |");
    }
}

pub fn verdict(v: &ClassificationVerdict) -> String {
    let mut out = String::from("# Classification\n\n| condition | holds |\n|---|---|\n");
    for (name, value) in [
        ("associated graph two-colorable", v.two_colorable),
        ("line bundle L trivial", v.line_bundle_trivial),
        ("Stiefel–Whitney classes of TM and ᵇTM agree", v.sw_classes_equal),
        ("ᵇTM orientable", v.b_tangent_orientable),
        ("global defining function exists", v.global_defining_function),
        ("KO classes of TM and ᵇTM agree", v.ko_classes_equal),
    ] {
        let _ = writeln!(out, "| {name} | {} |", yes_no(value));
    }
    let _ = writeln!(out, "\nPontrjagin classes: {}", v.pontrjagin_note);
    if let Some(c) = &v.coloring {
        out.push_str("\n## Coloring\n\n");
        coloring_table(&mut out, c);
    }
    if let Some(BmReport { m, class }) = &v.bm_classification {
        let _ = writeln!(out, "\nbᵐ-tangent bundle for m = {m}: {class:?}");
    }
    out
}

pub fn euler(r: &EulerReport) -> String {
    let mut out = String::from("# Euler numbers\n\n");
    let _ = writeln!(out, "- b-Euler number χ(ᵇTM): {}", r.b_euler);
    let _ = writeln!(out, "- classical Euler number χ(M): {}", r.classical_euler);
    let _ = writeln!(out, "- note: {}\n", r.note);
    coloring_table(&mut out, &r.coloring_used);
    out
}

pub fn color(r: &ColorReport) -> String {
    let mut out = format!("# Two-coloring\n\n{}\n", r.verdict);
    if let Some(c) = &r.coloring {
        out.push('\n');
        coloring_table(&mut out, c);
    }
    out
}

pub fn index(r: &IndexReport) -> String {
    let mut out = String::from("# Index\n\n");
    let _ = writeln!(out, "- field: {} ({} frame)", r.field, r.frame);
    let _ = writeln!(out, "- center: ({}, {})", r.center.0, r.center.1);
    let _ = writeln!(out, "- radius: {}", r.result.radius_used);
    let _ = writeln!(out, "- samples: {}", r.result.samples_used);
    let _ = writeln!(out, "- largest angular step: {:.6} rad", r.result.max_step_radians);
    let _ = writeln!(out, "- **index: {}**", r.result.index);
    out
}

pub fn sphere(r: &SphereMapReport) -> String {
    let mut out = format!("# Degree of μf on S^{}\n\n", r.n - 1);
    let _ = writeln!(out, "- samples: {} (seed {})", r.samples, r.seed);
    let _ = writeln!(out, "- Monte Carlo degree: {:.6}", r.degree_integral);
    let _ = writeln!(out, "- signed preimage count: {}", r.degree_preimage);
    let _ = writeln!(out, "- agreement within 0.1: {}", yes_no(r.agreement));
    out
}

pub fn edge(r: &EdgeReport) -> String {
    let mut out = String::from("# Edge structure\n\n");
    let _ = writeln!(out, "- dim M = {}, dim F = {} (codimension {})", r.dim_m, r.dim_f, r.codimension);
    let _ = writeln!(out, "- associated graph two-colorable: {}", yes_no(r.two_colorable));
    let _ = writeln!(out, "- **verdict: {:?}**", r.verdict);
    out
}

pub fn checks(r: &CheckReport) -> String {
    let mut out = format!("# {}\n\n| check | max error | tolerance | passed |\n|---|---|---|---|\n", r.name);
    for c in &r.checks {
        let _ = writeln!(out, "| {} | {:.3e} | {:.0e} | {} |", c.name, c.max_error, c.tolerance, yes_no(c.passed));
    }
    if !r.metrics.is_empty() {
        out.push('\n');
        for (k, v) in &r.metrics {
            let _ = writeln!(out, "- {k}: {v}");
        }
    }
    let _ = writeln!(out, "\npassed: {}", yes_no(r.passed));
    out
}

pub fn verification(r: &VerificationReport) -> String {
    let mut out = String::from("# Poincaré–Hopf check\n\n| chart | center | region | c(p) | index |\n|---|---|---|---|---|\n");
    for z in &r.zeros {
        let _ = writeln!(
            out,
            "| {} | ({}, {}) | {} | {} | {} |",
            z.chart, z.center.0, z.center.1, z.region, z.color, z.index
        );
    }
    let _ = writeln!(out, "\n- colored index sum: {}", r.colored_sum);
    let _ = writeln!(out, "- unsigned index sum: {}", r.unsigned_sum);
    let _ = writeln!(out, "- b-Euler number from the graph: {}", r.b_euler);
    let _ = writeln!(out, "- passed: {}", yes_no(r.passed));
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// Undirected DOT rendering of the associated graph: `+1` regions white,
/// `−1` regions gray, uncolored regions dashed; loops are ordinary self-edges.
pub fn dot(g: &BGraph, coloring: Option<&Coloring>) -> String {
    let mut out = String::from("graph associated {\n  node [shape=circle, style=filled];\n");
    for r in &g.regions {
        let style = match coloring.and_then(|c| c.get(&r.label)) {
            Some(s) if s.value() > 0 => "fillcolor=white",
            Some(_) => "fillcolor=gray",
            None => "style=dashed",
        };
        let _ = writeln!(
            out,
            "  {} [label=\"{}\\nχ = {}\", {style}];",
            quote(&r.label),
            escape(&r.label),
            r.euler_char
        );
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(&e.side_a),
            quote(&e.side_b),
            quote(&e.label)
        );
    }
    out.push_str("}\n");
    out
}
