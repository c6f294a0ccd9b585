//! Reproduction harness: worked counterexamples, parameter sweeps,
//! trajectory traces and SVG rendering.

use crate::error::{Error, Result};
use crate::geom::Vec2;

pub mod examples;
pub mod svg;
pub mod sweep;
pub mod trace;

pub use examples::{
    coverage_grid, covering_examples, evaluate_example, is_dr_point, region_contains, run_example,
    ExampleReport, ExampleSpec, CLOSED_FORM_TOL, EXAMPLE_IDS, REGION_TOL,
};
pub use svg::{render_svg, Viewport};
pub use sweep::{
    default_budget, parse_axis, sweep, sweep_point, write_sweep_csv, Grid, SweepResult, Verdict,
};
pub use trace::{read_trace_csv, trace, trace_to_json, write_trace_csv, TraceRow};

/// Parses a point written as `x,y`.
pub fn parse_point(text: &str) -> Result<Vec2> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [x, y] = parts[..] else {
        return Err(Error::parse(text, "expected a point `x,y`"));
    };
    let coord = |tok: &str| -> Result<f64> {
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::parse(tok, "expected a finite number")),
        }
    };
    Ok(Vec2::new(coord(x)?, coord(y)?))
}
