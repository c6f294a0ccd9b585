//! Grid sweeps over `(λ, μ, κ)`: for each grid point, iterate from a fixed
//! start and record whether the iteration lands in the fixed set within a
//! step budget.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::circle::certify;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::operators::{apply, iterate, ConePair, OperatorParams};
use crate::structure::fixed_set_dr;

/// Floor for the default step budget.
pub const MIN_BUDGET: usize = 1000;

pub const SWEEP_HEADER: [&str; 6] = [
    "lambda",
    "mu",
    "kappa",
    "verdict",
    "steps_used",
    "final_distance_to_fix",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    FiniteWithinBudget,
    NotFiniteWithinBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub lambda: f64,
    pub mu: f64,
    pub kappa: f64,
    pub verdict: Verdict,
    pub steps_used: usize,
    /// Euclidean distance to the fixed set for DR parameters, otherwise the
    /// residual `‖T(x) - x‖` at the final iterate.
    pub final_distance_to_fix: f64,
}

/// Values for each axis; the sweep visits `λ` outermost and `κ` innermost.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Grid {
    pub lambdas: Vec<f64>,
    pub mus: Vec<f64>,
    pub kappas: Vec<f64>,
}

impl Grid {
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.lambdas.len() * self.mus.len() * self.kappas.len());
        for &l in &self.lambdas {
            for &m in &self.mus {
                for &k in &self.kappas {
                    out.push((l, m, k));
                }
            }
        }
        out
    }
}

/// Parses one grid axis: either a comma-separated list (`"0.5,1,2"`) or an
/// inclusive linear range `lo:hi:n` with `n` points. An empty string is an
/// empty axis.
pub fn parse_axis(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let number = |tok: &str| -> Result<f64> {
        let v: f64 = tok
            .trim()
            .parse()
            .map_err(|_| Error::parse(tok, "expected a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(v))
        }
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(Error::parse(spec, "range must be lo:hi:n"));
        };
        let (lo, hi) = (number(lo)?, number(hi)?);
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::parse(n, "point count must be a nonnegative integer"))?;
        return Ok(match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect(),
        });
    }
    spec.split(',').map(number).collect()
}

/// `max(MIN_BUDGET, 2·bound)` for certified DR configurations,
/// `MIN_BUDGET` otherwise.
pub fn default_budget(pair: &ConePair, params: &OperatorParams) -> Result<usize> {
    if !params.is_dr() {
        return Ok(MIN_BUDGET);
    }
    let cert = certify(pair)?;
    let bound = cert.bound_n.unwrap_or(0) as usize;
    Ok(MIN_BUDGET.max(bound.saturating_mul(2)))
}

/// Runs one grid point.
pub fn sweep_point(
    pair: &ConePair,
    params: &OperatorParams,
    start: Vec2,
    budget: usize,
) -> SweepResult {
    let traj = iterate(pair, params, start, budget);
    let last = traj.last();
    let final_distance_to_fix = if params.is_dr() {
        let fix = fixed_set_dr(pair);
        last.dist(fix.project(last))
    } else {
        apply(pair, params, last).dist(last)
    };
    let (verdict, steps_used) = match traj.reached_fix_at {
        Some(k) => (Verdict::FiniteWithinBudget, k),
        None => (Verdict::NotFiniteWithinBudget, traj.steps()),
    };
    SweepResult {
        lambda: params.lambda(),
        mu: params.mu(),
        kappa: params.kappa(),
        verdict,
        steps_used,
        final_distance_to_fix,
    }
}

/// Evaluates every grid point in parallel; rows come back in grid order.
/// `budget = None` uses [`default_budget`] per point.
pub fn sweep(
    pair: &ConePair,
    grid: &Grid,
    start: Vec2,
    budget: Option<usize>,
) -> Result<Vec<SweepResult>> {
    let params: Vec<OperatorParams> = grid
        .points()
        .into_iter()
        .map(|(l, m, k)| OperatorParams::new(l, m, k))
        .collect::<Result<_>>()?;
    params
        .par_iter()
        .map(|p| {
            let budget = match budget {
                Some(b) => b,
                None => default_budget(pair, p)?,
            };
            Ok(sweep_point(pair, p, start, budget))
        })
        .collect()
}

/// Writes the header and one row per result. Floats use Rust's shortest
/// round-trip formatting.
pub fn write_sweep_csv<W: Write>(rows: &[SweepResult], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        let verdict = match r.verdict {
            Verdict::FiniteWithinBudget => "FiniteWithinBudget",
            Verdict::NotFiniteWithinBudget => "NotFiniteWithinBudget",
        };
        w.write_record([
            format!("{:?}", r.lambda),
            format!("{:?}", r.mu),
            format!("{:?}", r.kappa),
            verdict.to_string(),
            r.steps_used.to_string(),
            format!("{:?}", r.final_distance_to_fix),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::PlanarCone;

    #[test]
    fn axis_forms() {
        assert_eq!(parse_axis("1,0.5, 2").unwrap(), vec![1.0, 0.5, 2.0]);
        assert_eq!(parse_axis("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_axis("").unwrap(), Vec::<f64>::new());
        assert!(parse_axis("1;2").is_err());
        assert!(parse_axis("0:1").is_err());
    }

    #[test]
    fn empty_grid_gives_header_only() {
        let pair = ConePair::new(PlanarCone::ray(0.0), PlanarCone::ray(0.0));
        let rows = sweep(&pair, &Grid::default(), Vec2::new(1.0, 1.0), None).unwrap();
        assert!(rows.is_empty());
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "lambda,mu,kappa,verdict,steps_used,final_distance_to_fix\n"
        );
    }

    #[test]
    fn rows_follow_grid_order_and_reject_bad_params() {
        let pair = ConePair::new(PlanarCone::line(0.0), PlanarCone::line(1.0));
        let grid = Grid {
            lambdas: vec![1.0, 2.0],
            mus: vec![0.5, 1.0],
            kappas: vec![0.25, 0.5, 1.0],
        };
        let rows = sweep(&pair, &grid, Vec2::new(1.0, 1.0), Some(10)).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.lambda, r.mu, r.kappa)).collect();
        assert_eq!(got, grid.points());

        let bad = Grid {
            lambdas: vec![3.0],
            ..grid
        };
        assert!(matches!(
            sweep(&pair, &bad, Vec2::new(1.0, 1.0), Some(10)),
            Err(Error::InvalidParams { .. })
        ));
    }
}
