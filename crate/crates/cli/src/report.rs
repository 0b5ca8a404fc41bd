use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CSV_HEADER: [&str; 7] =
    ["objective", "k", "classical_cost", "classical_balance", "fair_cost", "fair_balance", "fairlet_cost"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub objective: String,
    pub k: usize,
    pub classical_cost: f64,
    pub classical_balance: f64,
    pub fair_cost: f64,
    pub fair_balance: f64,
    pub fairlet_cost: f64,
}

/// A (objective, k) pair that could not be run, typically because k exceeds
/// the number of fairlets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub objective: String,
    pub k: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub n: usize,
    pub n_red: usize,
    pub n_blue: usize,
    pub dataset_balance: f64,
    pub t_prime: usize,
    pub seed: u64,
    pub normalize: bool,
    pub skipped_rows: usize,
    pub fairlet_counts: BTreeMap<String, usize>,
    /// Seconds; the only nondeterministic part of a report.
    pub wall_times: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: Metadata,
    pub records: Vec<Record>,
    pub skipped: Vec<Skipped>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn emit(report: &ExperimentReport, format: Format, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(report, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv<W: Write>(report: &ExperimentReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &report.records {
        w.write_record([
            r.objective.clone(),
            r.k.to_string(),
            r.classical_cost.to_string(),
            format!("{:.6}", r.classical_balance),
            r.fair_cost.to_string(),
            format!("{:.6}", r.fair_balance),
            r.fairlet_cost.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_json(path: &Path) -> Result<ExperimentReport> {
    Ok(serde_json::from_reader(std::io::BufReader::new(File::open(path)?))?)
}
