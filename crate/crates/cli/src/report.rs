//! The `paper` regeneration report.

use std::fmt::Write as _;

use credal::golden::{Outcome, Status};

use crate::render::Format;

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Known => "KNOWN",
    }
}

pub fn render(outcomes: &[Outcome], tolerance: f64, format: Format) -> String {
    match format {
        Format::Csv => csv(outcomes),
        Format::Json => json(outcomes, tolerance),
        Format::Text => text(outcomes, tolerance),
    }
}

fn text(outcomes: &[Outcome], tolerance: f64) -> String {
    let width = outcomes.iter().map(|o| o.cell.id.len()).max().unwrap_or(4);
    let line = |o: &Outcome| {
        format!(
            "{:<5} {:<width$}  expected {:>10.6}  actual {:>10.6}  diff {:.2e}\n",
            status_name(o.status),
            o.cell.id,
            o.cell.expected,
            o.cell.actual,
            o.deviation
        )
    };

    let mut out = format!("reference values, tolerance {tolerance:e}\n\n");
    for o in outcomes.iter().filter(|o| o.status != Status::Known) {
        out.push_str(&line(o));
    }

    let known: Vec<&Outcome> = outcomes
        .iter()
        .filter(|o| o.status == Status::Known)
        .collect();
    if !known.is_empty() {
        out.push_str("\nknown discrepancies (not gating):\n");
        for o in &known {
            out.push_str(&line(o));
            if let Some(note) = o.cell.discrepancy {
                let _ = writeln!(out, "      {note}");
            }
        }
    }

    let failed: Vec<&Outcome> = outcomes
        .iter()
        .filter(|o| o.status == Status::Fail)
        .collect();
    if !failed.is_empty() {
        out.push_str("\nmismatches:\n");
        for o in &failed {
            let _ = writeln!(
                out,
                "  {}: expected {}, got {}, off by {:e}",
                o.cell.id, o.cell.expected, o.cell.actual, o.deviation
            );
        }
    }

    let count = |s| outcomes.iter().filter(|o| o.status == s).count();
    let _ = writeln!(
        out,
        "\n{} cells: {} pass, {} fail, {} known",
        outcomes.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Known)
    );
    out
}

fn csv(outcomes: &[Outcome]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "status", "expected", "actual", "deviation"])
        .expect("in-memory write");
    for o in outcomes {
        w.write_record([
            o.cell.id.clone(),
            status_name(o.status).to_string(),
            o.cell.expected.to_string(),
            o.cell.actual.to_string(),
            o.deviation.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn json(outcomes: &[Outcome], tolerance: f64) -> String {
    let cells: Vec<serde_json::Value> = outcomes
        .iter()
        .map(|o| {
            serde_json::json!({
                "id": o.cell.id,
                "status": status_name(o.status),
                "expected": o.cell.expected,
                "actual": o.cell.actual,
                "deviation": o.deviation,
                "note": o.cell.discrepancy,
            })
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&serde_json::json!({
        "tolerance": tolerance,
        "cells": cells,
    }))
    .expect("valid json");
    out.push('\n');
    out
}
