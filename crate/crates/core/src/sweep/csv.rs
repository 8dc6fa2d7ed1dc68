//! Flat CSV form of a [`SweepResult`]. Floats use 17 significant digits so
//! that re-reading reproduces every value bit for bit.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::config::Axes;
use super::run::{GridPoint, SweepResult, SweepRow};
use crate::entropy::CorrelationRecord;
use crate::error::{Error, Result};
use crate::model::BandStructure;

pub const HEADER: &str =
    "t,e_m,gamma,xi,e_j1,e_j2,S_A,S_B,S_AB,I,purity,energy,p_gg,p_ge,p_eg,p_ee";

/// Round-trip float format with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn row_fields(row: &SweepRow) -> [f64; 16] {
    let p = &row.point;
    let r = &row.record;
    [
        r.t,
        p.e_m,
        p.gamma,
        p.xi,
        p.e_j1,
        p.e_j2,
        r.s_a,
        r.s_b,
        r.s_ab,
        r.mutual,
        r.purity,
        r.energy,
        r.populations[0],
        r.populations[1],
        r.populations[2],
        r.populations[3],
    ]
}

fn csv_error(e: ::csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

pub fn write_csv_to<W: Write>(res: &SweepResult, out: W) -> std::io::Result<()> {
    let mut w = ::csv::Writer::from_writer(out);
    w.write_record(HEADER.split(',')).map_err(csv_error)?;
    for row in &res.rows {
        w.write_record(row_fields(row).iter().map(|v| format_float(*v)))
            .map_err(csv_error)?;
    }
    w.flush()
}

pub fn write_csv(res: &SweepResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv_to(res, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

/// Band table: `n_g,E_0,...,E_{k-1}`, one row per gate charge.
/// Band table: `n_g,E_0,...,E_{k-1}`, one row per gate charge.
pub fn write_bands_csv_to<W: Write>(bands: &BandStructure, out: W) -> std::io::Result<()> {
    let mut w = ::csv::Writer::from_writer(out);
    let header =
        std::iter::once("n_g".to_string()).chain((0..bands.levels()).map(|k| format!("E_{k}")));
    w.write_record(header).map_err(csv_error)?;
    for (ng, levels) in bands.n_g_grid.iter().zip(&bands.bands) {
        w.write_record(
            std::iter::once(*ng)
                .chain(levels.iter().copied())
                .map(format_float),
        )
        .map_err(csv_error)?;
    }
    w.flush()
}

pub fn write_bands_csv(bands: &BandStructure, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_bands_csv_to(bands, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

fn distinct(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in values {
        if !out.iter().any(|o| o.to_bits() == v.to_bits()) {
            out.push(v);
        }
    }
    out
}

/// Parses a CSV written by [`write_csv`]. Axes and times are rebuilt from
/// the distinct values in first-seen order; the title is left empty.
pub fn read_csv_from<R: Read>(input: R) -> Result<SweepResult> {
    let mut reader = ::csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(input);
    let header = reader.headers().map_err(|e| Error::Csv {
        line: 1,
        reason: e.to_string(),
    })?;
    if header.iter().collect::<Vec<_>>().join(",") != HEADER {
        return Err(Error::Csv {
            line: 1,
            reason: format!(
                "unexpected header `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let lineno = idx + 2;
        let record = record.map_err(|e| Error::Csv {
            line: lineno,
            reason: e.to_string(),
        })?;
        if record.len() != 16 {
            return Err(Error::Csv {
                line: lineno,
                reason: format!("expected 16 fields, got {}", record.len()),
            });
        }
        let vals = record
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| Error::Csv {
                line: lineno,
                reason: e.to_string(),
            })?;
        rows.push(SweepRow {
            point: GridPoint {
                e_m: vals[1],
                gamma: vals[2],
                xi: vals[3],
                e_j1: vals[4],
                e_j2: vals[5],
            },
            record: CorrelationRecord {
                t: vals[0],
                s_a: vals[6],
                s_b: vals[7],
                s_ab: vals[8],
                mutual: vals[9],
                purity: vals[10],
                energy: vals[11],
                populations: [vals[12], vals[13], vals[14], vals[15]],
            },
        });
    }
    let axes = Axes {
        e_m: distinct(rows.iter().map(|r| r.point.e_m)),
        gamma: distinct(rows.iter().map(|r| r.point.gamma)),
        xi: distinct(rows.iter().map(|r| r.point.xi)),
        e_j1: distinct(rows.iter().map(|r| r.point.e_j1)),
        e_j2: distinct(rows.iter().map(|r| r.point.e_j2)),
    };
    let times = distinct(rows.iter().map(|r| r.record.t));
    Ok(SweepResult {
        axes,
        times,
        rows,
        title: String::new(),
        warnings: Vec::new(),
    })
}

pub fn read_csv(path: &Path) -> Result<SweepResult> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv_from(BufReader::new(file))
}
