//! Table rendering shared by the subcommands.

use std::fmt::Write as _;

use credal::doc::mass_to_json;
use credal::{Frame, MassFunction, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A named column of masses over a common frame.
pub struct Column {
    pub name: String,
    pub mass: MassFunction,
    /// Inputs are shown in text and CSV tables but not serialised.
    pub input: bool,
}

impl Column {
    pub fn input(name: &str, mass: MassFunction) -> Column {
        Column {
            name: name.to_string(),
            mass,
            input: true,
        }
    }

    pub fn output(name: &str, mass: MassFunction) -> Column {
        Column {
            name: name.to_string(),
            mass,
            input: false,
        }
    }
}

/// Subsets carrying mass in any column, plus ∅ and Ω, ascending by bitmask.
fn rows(frame: &Frame, columns: &[Column]) -> Vec<Subset> {
    let mut rows: Vec<Subset> = columns
        .iter()
        .flat_map(|c| c.mass.focal().map(|(s, _)| s))
        .chain([Subset::EMPTY, frame.full()])
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

pub fn text_table(frame: &Frame, columns: &[Column], digits: usize) -> String {
    let rows = rows(frame, columns);
    let labels: Vec<String> = rows.iter().map(|&s| frame.display(s)).collect();
    let first = labels
        .iter()
        .map(|l| l.chars().count())
        .chain([6])
        .max()
        .unwrap_or(6);
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| c.name.chars().count().max(digits + 2))
        .collect();

    let mut out = String::new();
    let _ = write!(out, "{:<first$}", "subset");
    for (c, w) in columns.iter().zip(&widths) {
        let _ = write!(out, "  {:>w$}", c.name);
    }
    out.push('\n');
    for (row, label) in rows.iter().zip(&labels) {
        let _ = write!(out, "{label:<first$}");
        for (c, w) in columns.iter().zip(&widths) {
            let _ = write!(out, "  {:>w$.digits$}", c.mass.mass(*row));
        }
        out.push('\n');
    }
    out
}

pub fn csv_table(frame: &Frame, columns: &[Column]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header =
        std::iter::once("subset".to_string()).chain(columns.iter().map(|c| c.name.clone()));
    w.write_record(header).expect("in-memory write");
    for row in rows(frame, columns) {
        let record = std::iter::once(frame.display(row))
            .chain(columns.iter().map(|c| format!("{:.6}", c.mass.mass(row))));
        w.write_record(record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// One output column becomes a mass document; several become an array.
pub fn json_masses(columns: &[Column]) -> String {
    let docs: Vec<&Column> = columns.iter().filter(|c| !c.input).collect();
    let mut out = match docs.as_slice() {
        [one] => mass_to_json(&one.mass, Some(one.name.clone())),
        many => {
            let values: Vec<serde_json::Value> = many
                .iter()
                .map(|c| {
                    serde_json::from_str(&mass_to_json(&c.mass, Some(c.name.clone())))
                        .expect("valid json")
                })
                .collect();
            serde_json::to_string_pretty(&values).expect("valid json")
        }
    };
    out.push('\n');
    out
}

pub fn masses(frame: &Frame, columns: &[Column], format: Format) -> String {
    match format {
        Format::Text => text_table(frame, columns, 6),
        Format::Csv => csv_table(frame, columns),
        Format::Json => json_masses(columns),
    }
}

/// `[0.6931, 0.1733, 0.0462]`
pub fn vector(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.4}")).collect();
    format!("[{}]", parts.join(", "))
}
