//! Report rendering. Three formats: aligned text tables, CSV, and
//! line-delimited JSON. Reals carry 12 significant digits, which is above
//! every tolerance in the toolkit and stable through a parse/re-emit
//! round-trip; the `parse_*` functions exist so that round-trip can be
//! checked mechanically.

use clap::ValueEnum;
use specrad_core::search::{format_real, ClaimVerdict, ExtremalRecord, Outcome};
use specrad_core::spectral::BoundReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv_emit(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn csv_parse(text: &str) -> Result<Vec<Vec<String>>, String> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| e.to_string())?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// mu
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct MuRow {
    pub g6: String,
    pub mu: f64,
    pub residual: f64,
    pub iterations: u64,
}

pub fn emit_mu(rows: &[MuRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut t = vec![vec![
                "g6".to_string(),
                "mu".to_string(),
                "residual".to_string(),
                "iterations".to_string(),
            ]];
            for r in rows {
                t.push(vec![
                    r.g6.clone(),
                    format_real(r.mu),
                    format!("{:e}", r.residual),
                    r.iterations.to_string(),
                ]);
            }
            table(&t)
        }
        OutputFormat::Csv => csv_emit(
            &["g6", "mu", "residual", "iterations"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.g6.clone(),
                        format_real(r.mu),
                        format!("{:e}", r.residual),
                        r.iterations.to_string(),
                    ]
                })
                .collect(),
        ),
        OutputFormat::Json => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&format!(
                    "{{\"g6\":{},\"mu\":{},\"residual\":{:e},\"iterations\":{}}}\n",
                    json_str(&r.g6),
                    format_real(r.mu),
                    r.residual,
                    r.iterations
                ));
            }
            out
        }
    }
}

pub fn parse_mu(text: &str, format: OutputFormat) -> Result<Vec<MuRow>, String> {
    match format {
        OutputFormat::Table => Err("table output is not machine-parsed".to_string()),
        OutputFormat::Csv => csv_parse(text)?
            .into_iter()
            .map(|row| {
                Ok(MuRow {
                    g6: row[0].clone(),
                    mu: row[1].parse().map_err(|_| "bad mu")?,
                    residual: row[2].parse().map_err(|_| "bad residual")?,
                    iterations: row[3].parse().map_err(|_| "bad iterations")?,
                })
            })
            .collect(),
        OutputFormat::Json => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let v: serde_json::Value =
                    serde_json::from_str(line).map_err(|e| e.to_string())?;
                Ok(MuRow {
                    g6: v["g6"].as_str().ok_or("missing g6")?.to_string(),
                    mu: v["mu"].as_f64().ok_or("missing mu")?,
                    residual: v["residual"].as_f64().ok_or("missing residual")?,
                    iterations: v["iterations"].as_u64().ok_or("missing iterations")?,
                })
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

fn bound_cells(r: &BoundReport) -> Vec<String> {
    vec![
        r.name.to_string(),
        format_real(r.lhs),
        format_real(r.rhs),
        r.holds.to_string(),
        format_real(r.slack),
        r.vacuous.to_string(),
    ]
}

pub fn emit_bounds(reports: &[BoundReport], format: OutputFormat) -> String {
    let header = ["name", "lhs", "rhs", "holds", "slack", "vacuous"];
    match format {
        OutputFormat::Table => {
            let mut t = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            t.extend(reports.iter().map(bound_cells));
            table(&t)
        }
        OutputFormat::Csv => csv_emit(&header, reports.iter().map(bound_cells).collect()),
        OutputFormat::Json => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!(
                    "{{\"name\":{},\"lhs\":{},\"rhs\":{},\"holds\":{},\"slack\":{},\"vacuous\":{}}}\n",
                    json_str(r.name),
                    format_real(r.lhs),
                    format_real(r.rhs),
                    r.holds,
                    format_real(r.slack),
                    r.vacuous
                ));
            }
            out
        }
    }
}

/// Parsed shape of a bounds row; names become owned strings.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub slack: f64,
    pub vacuous: bool,
}

pub fn parse_bounds(text: &str, format: OutputFormat) -> Result<Vec<BoundRow>, String> {
    let from_cells = |cells: &[String]| -> Result<BoundRow, String> {
        Ok(BoundRow {
            name: cells[0].clone(),
            lhs: cells[1].parse().map_err(|_| "bad lhs")?,
            rhs: cells[2].parse().map_err(|_| "bad rhs")?,
            holds: cells[3].parse().map_err(|_| "bad holds")?,
            slack: cells[4].parse().map_err(|_| "bad slack")?,
            vacuous: cells[5].parse().map_err(|_| "bad vacuous")?,
        })
    };
    match format {
        OutputFormat::Table => Err("table output is not machine-parsed".to_string()),
        OutputFormat::Csv => csv_parse(text)?.iter().map(|r| from_cells(r)).collect(),
        OutputFormat::Json => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let v: serde_json::Value =
                    serde_json::from_str(line).map_err(|e| e.to_string())?;
                Ok(BoundRow {
                    name: v["name"].as_str().ok_or("missing name")?.to_string(),
                    lhs: v["lhs"].as_f64().ok_or("missing lhs")?,
                    rhs: v["rhs"].as_f64().ok_or("missing rhs")?,
                    holds: v["holds"].as_bool().ok_or("missing holds")?,
                    slack: v["slack"].as_f64().ok_or("missing slack")?,
                    vacuous: v["vacuous"].as_bool().ok_or("missing vacuous")?,
                })
            })
            .collect(),
    }
}

/// Re-emission of parsed bound rows; byte-identical to the original
/// emission for CSV and JSON.
pub fn emit_bound_rows(rows: &[BoundRow], format: OutputFormat) -> String {
    let cells = |r: &BoundRow| {
        vec![
            r.name.clone(),
            format_real(r.lhs),
            format_real(r.rhs),
            r.holds.to_string(),
            format_real(r.slack),
            r.vacuous.to_string(),
        ]
    };
    let header = ["name", "lhs", "rhs", "holds", "slack", "vacuous"];
    match format {
        OutputFormat::Table => {
            let mut t = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            t.extend(rows.iter().map(cells));
            table(&t)
        }
        OutputFormat::Csv => csv_emit(&header, rows.iter().map(cells).collect()),
        OutputFormat::Json => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&format!(
                    "{{\"name\":{},\"lhs\":{},\"rhs\":{},\"holds\":{},\"slack\":{},\"vacuous\":{}}}\n",
                    json_str(&r.name),
                    format_real(r.lhs),
                    format_real(r.rhs),
                    r.holds,
                    format_real(r.slack),
                    r.vacuous
                ));
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// detect
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct DetectRow {
    pub pattern: String,
    pub present: bool,
}

pub fn emit_detect(g6: &str, rows: &[DetectRow], admissible: bool, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut t = vec![vec!["pattern".to_string(), "present".to_string()]];
            for r in rows {
                t.push(vec![r.pattern.clone(), r.present.to_string()]);
            }
            let mut out = table(&t);
            out.push_str(&format!("admissible  {admissible}\n"));
            out
        }
        OutputFormat::Csv => csv_emit(
            &["pattern", "present"],
            rows.iter()
                .map(|r| vec![r.pattern.clone(), r.present.to_string()])
                .collect(),
        ),
        OutputFormat::Json => {
            let patterns: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"pattern\":{},\"present\":{}}}",
                        json_str(&r.pattern),
                        r.present
                    )
                })
                .collect();
            format!(
                "{{\"g6\":{},\"patterns\":[{}],\"admissible\":{}}}\n",
                json_str(g6),
                patterns.join(","),
                admissible
            )
        }
    }
}

// ---------------------------------------------------------------------------
// extremal records
// ---------------------------------------------------------------------------

pub fn emit_extremal(records: &[ExtremalRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => specrad_core::search::render_extremal_table(records),
        OutputFormat::Csv => csv_emit(
            &[
                "n",
                "forbid",
                "connected_only",
                "enumerated",
                "admissible",
                "max_mu",
                "witnesses",
            ],
            records
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.forbid.to_string(),
                        r.connected_only.to_string(),
                        r.census.enumerated.to_string(),
                        r.census.admissible.to_string(),
                        format_real(r.max_mu),
                        r.witnesses
                            .iter()
                            .map(|w| w.as_str())
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect(),
        ),
        OutputFormat::Json => {
            let mut out = String::new();
            for r in records {
                let witnesses: Vec<String> =
                    r.witnesses.iter().map(|w| json_str(w.as_str())).collect();
                out.push_str(&format!(
                    "{{\"n\":{},\"forbid\":{},\"connected_only\":{},\"max_mu\":{},\"witnesses\":[{}],\"census\":{{\"enumerated\":{},\"admissible\":{}}}}}\n",
                    r.n,
                    json_str(&r.forbid.to_string()),
                    r.connected_only,
                    format_real(r.max_mu),
                    witnesses.join(","),
                    r.census.enumerated,
                    r.census.admissible
                ));
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// claim verdicts
// ---------------------------------------------------------------------------

fn outcome_kind(outcome: &Outcome) -> &'static str {
    match outcome {
        Outcome::VerifiedOnRange => "verified-on-range",
        Outcome::VacuousOnRange => "vacuous-on-range",
        Outcome::Counterexample(_) => "counterexample",
        Outcome::Exploratory { .. } => "exploratory",
    }
}

pub fn emit_verdicts(verdicts: &[ClaimVerdict], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => specrad_core::search::render_verdict_table(verdicts),
        OutputFormat::Csv => csv_emit(
            &["claim", "k", "n", "connected_only", "outcome", "detail", "notes"],
            verdicts
                .iter()
                .map(|v| {
                    vec![
                        v.claim.to_string(),
                        v.k.to_string(),
                        v.n.to_string(),
                        v.connected_only.to_string(),
                        outcome_kind(&v.outcome).to_string(),
                        v.outcome.summary(),
                        v.notes.join("; "),
                    ]
                })
                .collect(),
        ),
        OutputFormat::Json => {
            let mut out = String::new();
            for v in verdicts {
                let exceptions = match &v.outcome {
                    Outcome::Counterexample(w) => vec![w.clone()],
                    Outcome::Exploratory { exceptions } => exceptions.clone(),
                    _ => Vec::new(),
                };
                let witnesses: Vec<String> = exceptions
                    .iter()
                    .map(|w| {
                        format!(
                            "{{\"g6\":{},\"mu\":{},\"threshold\":{},\"detail\":{}}}",
                            json_str(&w.graph6),
                            format_real(w.mu),
                            format_real(w.threshold),
                            json_str(&w.detail)
                        )
                    })
                    .collect();
                let notes: Vec<String> = v.notes.iter().map(|s| json_str(s)).collect();
                out.push_str(&format!(
                    "{{\"claim\":{},\"k\":{},\"n\":{},\"connected_only\":{},\"outcome\":{},\"witnesses\":[{}],\"notes\":[{}]}}\n",
                    json_str(&v.claim.to_string()),
                    v.k,
                    v.n,
                    v.connected_only,
                    json_str(outcome_kind(&v.outcome)),
                    witnesses.join(","),
                    notes.join(",")
                ));
            }
            out
        }
    }
}
