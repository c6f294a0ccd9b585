//! The generalized projection operator family
//! `T = (1-κ) Id + κ P_B^μ ∘ P_A^λ` with `P_C^ρ = (1-ρ) Id + ρ P_C`,
//! its Douglas-Rachford member `(λ, μ, κ) = (2, 2, 1/2)`, and the
//! iteration driver.

use serde::{Deserialize, Serialize};

use crate::cone::PlanarCone;
use crate::error::{Error, Result};
use crate::geom::Vec2;

/// Relative fixed-point tolerance used by [`is_fixed`].
pub const TAU_FIX: f64 = 1e-10;

/// Upper cap on κ; larger values overflow iterates long before anything
/// interesting happens.
pub const KAPPA_MAX: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    lambda: f64,
    mu: f64,
    kappa: f64,
}

impl OperatorParams {
    /// Douglas-Rachford: `(2, 2, 1/2)`.
    pub const DR: OperatorParams = OperatorParams {
        lambda: 2.0,
        mu: 2.0,
        kappa: 0.5,
    };

    /// Alternating projections: `(1, 1, 1)`.
    pub const AP: OperatorParams = OperatorParams {
        lambda: 1.0,
        mu: 1.0,
        kappa: 1.0,
    };

    /// Validates `λ, μ ∈ (0, 2]` and `κ ∈ (0, KAPPA_MAX]`.
    pub fn new(lambda: f64, mu: f64, kappa: f64) -> Result<Self> {
        let in_relax = |v: f64| v > 0.0 && v <= 2.0;
        if in_relax(lambda) && in_relax(mu) && kappa > 0.0 && kappa <= KAPPA_MAX {
            Ok(Self { lambda, mu, kappa })
        } else {
            Err(Error::InvalidParams {
                lambda,
                mu,
                kappa,
                kappa_max: KAPPA_MAX,
            })
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn is_dr(&self) -> bool {
        *self == Self::DR
    }
}

/// Ordered pair of cones; the operator applies `A` first.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConePair {
    pub a: PlanarCone,
    pub b: PlanarCone,
}

impl ConePair {
    pub fn new(a: PlanarCone, b: PlanarCone) -> Self {
        ConePair { a, b }
    }
}

/// `(1-ρ) x + ρ P_C(x)`.
pub fn relaxed_projection(cone: &PlanarCone, rho: f64, x: Vec2) -> Result<Vec2> {
    if !(rho > 0.0 && rho <= 2.0) {
        return Err(Error::InvalidRelaxation(rho));
    }
    Ok(relax(cone, rho, x))
}

fn relax(cone: &PlanarCone, rho: f64, x: Vec2) -> Vec2 {
    let p = cone.project(x);
    if rho == 1.0 {
        p
    } else if rho == 2.0 {
        cone.reflect(x)
    } else {
        (1.0 - rho) * x + rho * p
    }
}

pub fn generalized_op(pair: &ConePair, params: &OperatorParams, x: Vec2) -> Vec2 {
    let y = relax(&pair.a, params.lambda, x);
    let z = relax(&pair.b, params.mu, y);
    let k = params.kappa;
    if k == 1.0 {
        z
    } else {
        (1.0 - k) * x + k * z
    }
}

/// Relative size below which a DR image is pure cancellation noise.
const DR_CANCELLATION: f64 = 16.0 * f64::EPSILON;

/// `(x + R_B R_A x) / 2`.
///
/// On the kernel `R_B R_A x = -x`, and the sum cancels down to rounding
/// noise of order `ε‖x‖` pointing in an arbitrary direction. Results that
/// small are returned as exact zero so that the origin, which is fixed,
/// is actually reached.
pub fn dr_op(pair: &ConePair, x: Vec2) -> Vec2 {
    let r = pair.b.reflect(pair.a.reflect(x));
    let t = 0.5 * (x + r);
    if t.norm() <= DR_CANCELLATION * x.norm() {
        Vec2::ZERO
    } else {
        t
    }
}

/// `‖T(x) - x‖ ≤ TAU_FIX · ‖x‖`.
///
/// The operator is positively homogeneous, so fixedness is a property of
/// the ray through `x` and the test is scale-free. The origin is always
/// fixed.
pub fn is_fixed(pair: &ConePair, params: &OperatorParams, x: Vec2) -> bool {
    let tx = apply(pair, params, x);
    (tx - x).norm() <= TAU_FIX * x.norm()
}

/// Evaluates the operator, routing DR parameters through [`dr_op`].
pub fn apply(pair: &ConePair, params: &OperatorParams, x: Vec2) -> Vec2 {
    if params.is_dr() {
        dr_op(pair, x)
    } else {
        generalized_op(pair, params, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    ReachedFix,
    MaxIters,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub points: Vec<Vec2>,
    pub step_distances: Vec<f64>,
    pub reached_fix_at: Option<usize>,
    pub terminated: Termination,
}

impl Trajectory {
    pub fn last(&self) -> Vec2 {
        *self.points.last().expect("trajectory is never empty")
    }

    /// Number of operator applications performed.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }
}

/// Iterates `x_{n+1} = T(x_n)` from `x0` until the current iterate is
/// fixed or `max_iters` applications have been made.
pub fn iterate(pair: &ConePair, params: &OperatorParams, x0: Vec2, max_iters: usize) -> Trajectory {
    let mut points = vec![x0];
    let mut step_distances = Vec::new();
    let mut x = x0;
    loop {
        let tx = apply(pair, params, x);
        if (tx - x).norm() <= TAU_FIX * x.norm() {
            return Trajectory {
                reached_fix_at: Some(points.len() - 1),
                points,
                step_distances,
                terminated: Termination::ReachedFix,
            };
        }
        if step_distances.len() >= max_iters {
            return Trajectory {
                points,
                step_distances,
                reached_fix_at: None,
                terminated: Termination::MaxIters,
            };
        }
        step_distances.push((tx - x).norm());
        points.push(tx);
        x = tx;
    }
}

/// Iterates exactly `n` times without a fixed-point stop.
pub fn orbit(pair: &ConePair, params: &OperatorParams, x0: Vec2, n: usize) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(n + 1);
    let mut x = x0;
    out.push(x);
    for _ in 0..n {
        x = apply(pair, params, x);
        out.push(x);
    }
    out
}
