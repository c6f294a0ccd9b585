//! The six counterexample configurations on which the generalized operator
//! converges only asymptotically, their parameter regions, and closed-form
//! orbits.
//!
//! Together with the Douglas-Rachford point `(2, 2, 1/2)` the regions cover
//! every admissible `(λ, μ, κ)`; [`covering_examples`] and
//! [`coverage_grid`] make that claim checkable.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::cone::PlanarCone;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::operators::{generalized_op, is_fixed, ConePair, OperatorParams};

/// Tolerance for the `=` and `≠` constraints in region predicates.
pub const REGION_TOL: f64 = 1e-12;

/// Maximum allowed distance between an iterate and its closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-10;

pub const EXAMPLE_IDS: [u8; 6] = [1, 2, 3, 4, 5, 6];

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleSpec {
    pub id: u8,
    pub pair: ConePair,
    /// Human-readable description of the parameter region.
    pub region: &'static str,
    pub canonical_params: OperatorParams,
    pub start: Vec2,
}

fn relax_ok(v: f64) -> bool {
    v > 0.0 && v <= 2.0
}

/// `(1/t, 1/t, t)` for some `t`, i.e. `λ = μ = 1/κ`.
fn on_reciprocal_curve(lambda: f64, mu: f64, kappa: f64) -> bool {
    (lambda * kappa - 1.0).abs() <= REGION_TOL && (mu * kappa - 1.0).abs() <= REGION_TOL
}

/// Membership of `(λ, μ, κ)` in example `id`'s parameter region.
pub fn region_contains(id: u8, lambda: f64, mu: f64, kappa: f64) -> bool {
    if !(relax_ok(lambda) && relax_ok(mu) && kappa > 0.0) {
        return false;
    }
    match id {
        1 => kappa < 0.5,
        2 => kappa >= 0.5 && (kappa * mu - 1.0).abs() > REGION_TOL,
        3 => kappa >= 0.5 && (kappa * lambda - 1.0).abs() > REGION_TOL,
        4 => on_reciprocal_curve(lambda, mu, kappa) && kappa > 0.5 && kappa < 1.0,
        5 => on_reciprocal_curve(lambda, mu, kappa) && kappa > 1.0,
        6 => [lambda, mu, kappa]
            .iter()
            .all(|v| (v - 1.0).abs() <= REGION_TOL),
        _ => false,
    }
}

/// Ids of all examples whose region contains `(λ, μ, κ)`.
pub fn covering_examples(lambda: f64, mu: f64, kappa: f64) -> Vec<u8> {
    EXAMPLE_IDS
        .into_iter()
        .filter(|&id| region_contains(id, lambda, mu, kappa))
        .collect()
}

pub fn is_dr_point(lambda: f64, mu: f64, kappa: f64) -> bool {
    (lambda - 2.0).abs() <= REGION_TOL
        && (mu - 2.0).abs() <= REGION_TOL
        && (kappa - 0.5).abs() <= REGION_TOL
}

/// The 21 × 21 × 21 admissible grid. `λ` and `μ` run over
/// `{0.05} ∪ {0.1·i : i = 1..=20}`; `κ` runs over `{i/6 : i = 1..=18} ∪
/// {1/4, 5/8, 5/4}`, which hits `1/2`, `1` and points of the reciprocal
/// curve `(1/t, 1/t, t)` exactly.
pub fn coverage_grid() -> Vec<(f64, f64, f64)> {
    let relax: Vec<f64> = std::iter::once(0.05)
        .chain((1..=20).map(|i| i as f64 / 10.0))
        .collect();
    let mut kappas: Vec<f64> = (1..=18).map(|i| i as f64 / 6.0).collect();
    kappas.extend([0.25, 0.625, 1.25]);
    kappas.sort_by(f64::total_cmp);

    let mut grid = Vec::with_capacity(relax.len() * relax.len() * kappas.len());
    for &l in &relax {
        for &m in &relax {
            for &k in &kappas {
                grid.push((l, m, k));
            }
        }
    }
    grid
}

impl ExampleSpec {
    pub fn get(id: u8) -> Result<ExampleSpec> {
        let sector = |s: f64, w: f64| PlanarCone::sector(s, w).expect("valid sector");
        let params = |l, m, k| OperatorParams::new(l, m, k).expect("admissible");
        let (pair, region, canonical_params, start) = match id {
            1 => (
                ConePair::new(sector(0.0, 3.0 * FRAC_PI_4), sector(FRAC_PI_2, FRAC_PI_2)),
                "(0,2] x (0,2] x (0,1/2)",
                params(1.0, 1.0, 0.25),
                Vec2::new(1.0, 1.0),
            ),
            2 => (
                ConePair::new(PlanarCone::halfplane(0.0), PlanarCone::ray(FRAC_PI_2)),
                "(0,2] x (0,2] x [1/2,inf), kappa*mu != 1",
                params(1.0, 1.0, 2.0),
                Vec2::new(1.0, 1.0),
            ),
            3 => (
                ConePair::new(PlanarCone::ray(FRAC_PI_2), PlanarCone::halfplane(0.0)),
                "(0,2] x (0,2] x [1/2,inf), kappa*lambda != 1",
                params(1.0, 1.0, 2.0),
                Vec2::new(1.0, 1.0),
            ),
            4 => (
                ConePair::new(
                    PlanarCone::halfplane(FRAC_PI_2),
                    PlanarCone::halfplane(3.0 * FRAC_PI_2),
                ),
                "(1/t,1/t,t), 1/2 < t < 1",
                params(4.0 / 3.0, 4.0 / 3.0, 0.75),
                Vec2::new(1.0, 1.0),
            ),
            5 => (
                ConePair::new(PlanarCone::ray(FRAC_PI_2), PlanarCone::line(FRAC_PI_2)),
                "(1/t,1/t,t), t > 1",
                params(0.5, 0.5, 2.0),
                Vec2::new(1.0, 1.0),
            ),
            6 => (
                ConePair::new(sector(FRAC_PI_4, PI), PlanarCone::halfplane(PI)),
                "(1,1,1)",
                OperatorParams::AP,
                Vec2::new(2.0, 1.0),
            ),
            _ => {
                return Err(Error::ExampleRegion {
                    id,
                    reason: "no such example; ids run from 1 to 6".into(),
                })
            }
        };
        Ok(ExampleSpec {
            id,
            pair,
            region,
            canonical_params,
            start,
        })
    }

    pub fn all() -> Vec<ExampleSpec> {
        EXAMPLE_IDS
            .into_iter()
            .map(|id| ExampleSpec::get(id).expect("known id"))
            .collect()
    }

    pub fn in_region(&self, p: &OperatorParams) -> bool {
        region_contains(self.id, p.lambda(), p.mu(), p.kappa())
    }

    /// Whether `x0` lies in the open set of starting points the closed
    /// form is valid for.
    pub fn start_admissible(&self, x0: Vec2) -> bool {
        let (d0, y) = (x0.x, x0.y);
        match self.id {
            // Interior of A = {0 ≤ θ ≤ 3π/4} with d0 > 0.
            1 => d0 > 0.0 && y > 0.0,
            2 | 3 => d0 != 0.0 && y > 0.0,
            4 | 5 => d0 > 0.0 && y > 0.0,
            6 => !self.pair.a.contains(x0) && !self.pair.b.contains(x0),
            _ => false,
        }
    }

    /// `T^n(x0)` as printed for the example.
    pub fn closed_form(&self, p: &OperatorParams, x0: Vec2, n: u32) -> Vec2 {
        let (d0, y) = (x0.x, x0.y);
        let scaled = |factor: f64| Vec2::new(factor.powi(n as i32) * d0, y);
        match self.id {
            1 | 2 => scaled(1.0 - p.kappa() * p.mu()),
            3 => scaled(1.0 - p.kappa() * p.lambda()),
            4 | 5 => scaled(1.0 / p.kappa() - 1.0),
            6 if n == 0 => x0,
            6 => Vec2::new((d0 + y) / 2f64.powi(n as i32), 0.0),
            _ => unreachable!("ExampleSpec ids are validated on construction"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleReport {
    pub id: u8,
    pub params: OperatorParams,
    pub start: Vec2,
    pub iterates: Vec<Vec2>,
    pub expected: Vec<Vec2>,
    pub max_deviation: f64,
    /// First iterate index at which `is_fixed` held, if any.
    pub fixed_at: Option<usize>,
}

/// Iterates example `id` for `n_steps` steps and compares against the
/// closed form. Parameters and start default to the example's canonical
/// values.
///
/// Fails with [`Error::ExampleRegion`] when the inputs are outside the
/// example's hypotheses and with [`Error::ExampleMismatch`] when an
/// iterate deviates by more than [`CLOSED_FORM_TOL`] or becomes fixed.
pub fn run_example(
    id: u8,
    n_steps: usize,
    params: Option<OperatorParams>,
    start: Option<Vec2>,
) -> Result<ExampleReport> {
    let report = evaluate_example(id, n_steps, params, start)?;
    if report.max_deviation > CLOSED_FORM_TOL {
        return Err(Error::ExampleMismatch {
            id,
            reason: format!(
                "iterates deviate from the closed form by {:e} (> {CLOSED_FORM_TOL:e})",
                report.max_deviation
            ),
        });
    }
    if let Some(k) = report.fixed_at {
        return Err(Error::ExampleMismatch {
            id,
            reason: format!("iterate {k} is a fixed point"),
        });
    }
    Ok(report)
}

/// Like [`run_example`] but reports deviations and fixed iterates instead
/// of failing on them.
pub fn evaluate_example(
    id: u8,
    n_steps: usize,
    params: Option<OperatorParams>,
    start: Option<Vec2>,
) -> Result<ExampleReport> {
    let spec = ExampleSpec::get(id)?;
    let params = params.unwrap_or(spec.canonical_params);
    let start = start.unwrap_or(spec.start);
    if !spec.in_region(&params) {
        return Err(Error::ExampleRegion {
            id,
            reason: format!(
                "parameters (lambda={}, mu={}, kappa={}) outside region {}",
                params.lambda(),
                params.mu(),
                params.kappa(),
                spec.region
            ),
        });
    }
    if !spec.start_admissible(start) {
        return Err(Error::ExampleRegion {
            id,
            reason: format!("start {start} outside the admissible open set"),
        });
    }

    let mut iterates = Vec::with_capacity(n_steps + 1);
    let mut expected = Vec::with_capacity(n_steps + 1);
    let mut max_deviation: f64 = 0.0;
    let mut fixed_at = None;
    let mut x = start;
    for n in 0..=n_steps {
        let want = spec.closed_form(&params, start, n as u32);
        max_deviation = max_deviation.max(x.dist(want));
        if fixed_at.is_none() && is_fixed(&spec.pair, &params, x) {
            fixed_at = Some(n);
        }
        iterates.push(x);
        expected.push(want);
        x = generalized_op(&spec.pair, &params, x);
    }
    Ok(ExampleReport {
        id,
        params,
        start,
        iterates,
        expected,
        max_deviation,
        fixed_at,
    })
}
