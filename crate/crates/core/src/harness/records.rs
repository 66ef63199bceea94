//! Result rows and their CSV/JSON persistence.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{Termination, TracePoint};

/// One search run. Column order is the `records.csv` schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub file: String,
    pub bytes: u64,
    pub sigma: usize,
    pub init: String,
    pub spec: String,
    pub seed: u64,
    pub initial_c: f64,
    pub final_c: f64,
    pub steps: u64,
    pub hitting_step: u64,
    pub terminated: Termination,
    pub wall_ms: u64,
}

impl RunRecord {
    /// Group key used in `summary.csv`.
    pub fn method(&self) -> String {
        format!("{}/{}", self.init, self.spec)
    }
}

/// A single search run with its final ordering and improvement trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    #[serde(flatten)]
    pub record: RunRecord,
    pub end_marker: u8,
    pub initial_fitness: u64,
    pub final_fitness: u64,
    /// Final ordering as byte values, highest precedence first.
    pub final_ordering: Vec<u8>,
    pub trace: Vec<TraceRow>,
}

/// `samples.csv` row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub file: String,
    pub sample_index: usize,
    pub fitness: u64,
    pub c: f64,
}

/// `summary.csv` row; statistics rounded to three decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub file: String,
    pub method: String,
    pub min_c: f64,
    pub max_c: f64,
    pub mean_c: f64,
    pub std_c: f64,
}

/// Trace CSV row, written at the initial evaluation and each improvement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step: u64,
    pub fitness: u64,
    pub c: f64,
}

impl TraceRow {
    pub fn from_trace(trace: &[TracePoint], bytes: u64) -> Result<Vec<TraceRow>> {
        trace
            .iter()
            .map(|p| {
                Ok(TraceRow {
                    step: p.step,
                    fitness: p.fitness.bytes(),
                    c: p.fitness.percent_change(bytes)?,
                })
            })
            .collect()
    }
}

/// Exhaustive-search CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveRow {
    pub ordering: String,
    pub fitness: u64,
    pub c: f64,
}

pub fn round3(x: f64) -> f64 {
    let r = (x * 1000.0).round() / 1000.0;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn read_csv<T: for<'de> Deserialize<'de>, R: Read>(input: R) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub fn write_csv_file<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(rows, std::io::BufWriter::new(f))
}

pub fn read_csv_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(std::io::BufReader::new(f))
}

/// Writes the header line even when `rows` is empty.
pub fn write_csv_with_header<T: Serialize>(rows: &[T], header: &[&str], path: &Path) -> Result<()> {
    if !rows.is_empty() {
        return write_csv_file(rows, path);
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

pub const RECORDS_HEADER: [&str; 12] = [
    "file",
    "bytes",
    "sigma",
    "init",
    "spec",
    "seed",
    "initial_c",
    "final_c",
    "steps",
    "hitting_step",
    "terminated",
    "wall_ms",
];
pub const SAMPLES_HEADER: [&str; 4] = ["file", "sample_index", "fitness", "c"];
pub const SUMMARY_HEADER: [&str; 6] = ["file", "method", "min_c", "max_c", "mean_c", "std_c"];

#[cfg(test)]
mod tests {
    use super::*;

    fn record(i: u64) -> RunRecord {
        RunRecord {
            file: "xargs.1".into(),
            bytes: 4227,
            sigma: 74,
            init: "random".into(),
            spec: "swap:lex".into(),
            seed: 40 + i,
            initial_c: -2.484_123_456_789 + i as f64 / 7.0,
            final_c: -7.783_000_000_1,
            steps: 1000,
            hitting_step: 987,
            terminated: if i.is_multiple_of(2) {
                Termination::Budget
            } else {
                Termination::LocalMinimum
            },
            wall_ms: 12,
        }
    }

    #[test]
    fn records_header_matches_schema() {
        let mut buf = Vec::new();
        write_csv(&[record(0)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(header, RECORDS_HEADER.join(","));
        assert!(text.contains(",budget,"));
    }

    #[test]
    fn records_round_trip_exactly() {
        let rows: Vec<RunRecord> = (0..5).map(record).collect();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let back: Vec<RunRecord> = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn other_headers() {
        let mut buf = Vec::new();
        write_csv(
            &[SampleRow {
                file: "a".into(),
                sample_index: 0,
                fitness: 10,
                c: -1.0,
            }],
            &mut buf,
        )
        .unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with(&SAMPLES_HEADER.join(",")));
        let mut buf = Vec::new();
        write_csv(
            &[SummaryRow {
                file: "a".into(),
                method: "sampling".into(),
                min_c: round3(-12.17149),
                max_c: -10.694,
                mean_c: -11.385,
                std_c: 0.172,
            }],
            &mut buf,
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(&SUMMARY_HEADER.join(",")));
        assert!(text.contains("a,sampling,-12.171,-10.694,-11.385,0.172"));
    }

    #[test]
    fn rounding() {
        assert_eq!(round3(-11.38549), -11.385);
        assert_eq!(round3(0.1725), 0.173);
        assert_eq!(round3(-0.0001).to_string(), "0");
    }
}
