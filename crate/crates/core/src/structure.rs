//! Closed-form kernel and fixed set of the Douglas-Rachford operator on a
//! pair of planar cones.

use serde::Serialize;

use crate::cone::PlanarCone;
use crate::error::{Error, Result};
use crate::geom::TAU_ANG;
use crate::operators::ConePair;

/// `Ker T = cone[(-B ∩ A°) ∪ (B° ∩ A)]`.
pub fn kernel_dr(pair: &ConePair) -> PlanarCone {
    let (u, v) = kernel_components(pair);
    u.conic_hull_union(&v)
}

/// The two mutually orthogonal pieces `-B ∩ A°` and `B° ∩ A` whose hull is
/// the kernel.
pub fn kernel_components(pair: &ConePair) -> (PlanarCone, PlanarCone) {
    let ConePair { a, b } = pair;
    (b.negate().intersect(&a.polar()), b.polar().intersect(a))
}

/// `Fix T = A ∩ B + (A - B)°`.
pub fn fixed_set_dr(pair: &ConePair) -> PlanarCone {
    let ConePair { a, b } = pair;
    let difference = a.minkowski_sum(&b.negate());
    a.intersect(b).minkowski_sum(&difference.polar())
}

/// The four configurations in which the kernel is a line `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KernelLineCase {
    /// `A = {0}`, `B = L`.
    ZeroAndLine,
    /// `A = L⊥`, `B = R²`.
    PerpAndPlane,
    /// `A = R²`, `B = L⊥`.
    PlaneAndPerp,
    /// `A = L`, `B = {0}`.
    LineAndZero,
}

impl KernelLineCase {
    pub fn identify(pair: &ConePair, kernel: &PlanarCone) -> Option<Self> {
        let PlanarCone::Line(l) = *kernel else {
            return None;
        };
        let line = PlanarCone::Line(l);
        let perp = line.polar();
        let same = |c: &PlanarCone, d: &PlanarCone| c.approx_eq(d, TAU_ANG);
        let (a, b) = (&pair.a, &pair.b);
        if a.is_zero() && same(b, &line) {
            Some(KernelLineCase::ZeroAndLine)
        } else if same(a, &perp) && b.is_plane() {
            Some(KernelLineCase::PerpAndPlane)
        } else if a.is_plane() && same(b, &perp) {
            Some(KernelLineCase::PlaneAndPerp)
        } else if same(a, &line) && b.is_zero() {
            Some(KernelLineCase::LineAndZero)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureReport {
    pub kernel: PlanarCone,
    pub fixed_set: PlanarCone,
    pub fix_trivial: bool,
    pub kernel_is_line: bool,
    pub kerline_case: Option<KernelLineCase>,
}

/// Kernel, fixed set and triviality flags, with the checked equivalence
/// `Fix = {0} ⇔ (A ∩ B = {0} and A - B = R²)`.
pub fn structure_report(pair: &ConePair) -> Result<StructureReport> {
    let kernel = kernel_dr(pair);
    let fixed_set = fixed_set_dr(pair);
    let fix_trivial = fixed_set.is_zero();
    let kernel_is_line = kernel.is_line();
    let kerline_case = KernelLineCase::identify(pair, &kernel);

    if kernel_is_line && kerline_case.is_none() {
        return Err(Error::Internal(format!(
            "kernel {kernel} is a line but ({}, {}) matches none of the four line configurations",
            pair.a, pair.b
        )));
    }
    let meet_trivial = pair.a.intersect(&pair.b).is_zero();
    let diff_full = pair.a.minkowski_sum(&pair.b.negate()).is_plane();
    if fix_trivial != (meet_trivial && diff_full) {
        return Err(Error::Internal(format!(
            "fixed set {fixed_set} disagrees with A∩B trivial={meet_trivial}, A-B full={diff_full}"
        )));
    }
    Ok(StructureReport {
        kernel,
        fixed_set,
        fix_trivial,
        kernel_is_line,
        kerline_case,
    })
}
