//! Report records and their JSON-lines / CSV encodings.
//!
//! Numbers are always written as decimal strings.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::outcome::CheckOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub check: String,
    pub instance: String,
    /// `p^e`, or `exact` for identities.
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl From<&CheckOutcome> for ReportRecord {
    fn from(o: &CheckOutcome) -> Self {
        Self {
            check: o.check.clone(),
            instance: o.instance.to_string(),
            modulus: o.modulus_label(),
            lhs: o.lhs.to_string(),
            rhs: o.rhs.to_string(),
            pass: o.pass,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn write_records<W: Write>(
    records: &[ReportRecord],
    format: Format,
    mut out: W,
) -> Result<(), ReportError> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut out, r).map_err(io::Error::from)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            // The header must appear even for an empty report.
            w.write_record(["check", "instance", "modulus", "lhs", "rhs", "pass"])?;
            for r in records {
                w.write_record([
                    r.check.as_str(),
                    r.instance.as_str(),
                    r.modulus.as_str(),
                    r.lhs.as_str(),
                    r.rhs.as_str(),
                    if r.pass { "true" } else { "false" },
                ])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_json<R: BufRead>(input: R) -> Result<Vec<ReportRecord>, ReportError> {
    let mut records = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|source| ReportError::Json {
            line: i + 1,
            source,
        })?;
        records.push(record);
    }
    Ok(records)
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<ReportRecord>, ReportError> {
    let mut reader = csv::Reader::from_reader(input);
    let records = reader.deserialize().collect::<Result<Vec<ReportRecord>, _>>()?;
    Ok(records)
}
