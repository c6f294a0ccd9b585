//! Trajectory dumps: generation, CSV/JSON writers and the CSV reader used
//! by the renderer.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! written trace re-parses to bit-identical coordinates.

use std::io::{Read, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::operators::{is_fixed, iterate, ConePair, OperatorParams};
use crate::structure::fixed_set_dr;

pub const TRACE_HEADER: [&str; 6] = ["iter", "x", "y", "step_norm", "dist_to_fix", "in_fix"];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub iter: usize,
    pub x: f64,
    pub y: f64,
    /// `‖x_n - x_{n-1}‖`; absent on the first row.
    pub step_norm: Option<f64>,
    /// Distance to the DR fixed set; only filled for DR parameters.
    pub dist_to_fix: Option<f64>,
    pub in_fix: bool,
}

impl TraceRow {
    pub fn point(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Iterates from `start` for at most `max_iters` steps, stopping early at a
/// fixed point.
pub fn trace(
    pair: &ConePair,
    params: &OperatorParams,
    start: Vec2,
    max_iters: usize,
) -> Vec<TraceRow> {
    let traj = iterate(pair, params, start, max_iters);
    let fix = params.is_dr().then(|| fixed_set_dr(pair));
    traj.points
        .iter()
        .enumerate()
        .map(|(i, &p)| TraceRow {
            iter: i,
            x: p.x,
            y: p.y,
            step_norm: i.checked_sub(1).map(|j| traj.step_distances[j]),
            dist_to_fix: fix.map(|f| p.dist(f.project(p))),
            in_fix: is_fixed(pair, params, p),
        })
        .collect()
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:?}")).unwrap_or_default()
}

pub fn write_trace_csv<W: Write>(rows: &[TraceRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for r in rows {
        w.write_record([
            r.iter.to_string(),
            format!("{:?}", r.x),
            format!("{:?}", r.y),
            opt(r.step_norm),
            opt(r.dist_to_fix),
            r.in_fix.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// JSON array of row objects with the CSV column names; empty cells become
/// `null`.
pub fn trace_to_json(rows: &[TraceRow]) -> String {
    serde_json::to_string_pretty(rows).expect("trace rows serialize")
}

/// Reads a trace written by [`write_trace_csv`]. Errors name the 1-based
/// data row (the header is row 0).
pub fn read_trace_csv<R: Read>(input: R) -> Result<Vec<TraceRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec.map_err(|e| Error::Trajectory {
            row: 0,
            reason: e.to_string(),
        })?,
        None => {
            return Err(Error::Trajectory {
                row: 0,
                reason: "missing header".into(),
            })
        }
    };
    if header.iter().map(str::trim).ne(TRACE_HEADER) {
        return Err(Error::Trajectory {
            row: 0,
            reason: format!("header must be `{}`", TRACE_HEADER.join(",")),
        });
    }

    let mut rows = Vec::new();
    for (i, rec) in records.enumerate() {
        let row = i + 1;
        let bad = |reason: String| Error::Trajectory { row, reason };
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if rec.len() != TRACE_HEADER.len() {
            return Err(bad(format!(
                "expected {} fields, found {}",
                TRACE_HEADER.len(),
                rec.len()
            )));
        }
        let float = |col: usize| -> Result<f64> {
            let cell = rec[col].trim();
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(bad(format!(
                    "{} = `{cell}` is not a finite number",
                    TRACE_HEADER[col]
                ))),
            }
        };
        let optional = |col: usize| -> Result<Option<f64>> {
            if rec[col].trim().is_empty() {
                Ok(None)
            } else {
                float(col).map(Some)
            }
        };
        let iter = rec[0]
            .trim()
            .parse::<usize>()
            .map_err(|_| bad(format!("iter = `{}` is not a nonnegative integer", &rec[0])))?;
        let in_fix = match rec[5].trim() {
            "true" => true,
            "false" => false,
            other => return Err(bad(format!("in_fix = `{other}` is not true/false"))),
        };
        rows.push(TraceRow {
            iter,
            x: float(1)?,
            y: float(2)?,
            step_norm: optional(3)?,
            dist_to_fix: optional(4)?,
            in_fix,
        });
    }
    Ok(rows)
}
