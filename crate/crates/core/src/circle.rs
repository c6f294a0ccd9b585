//! Circle dynamics of the Douglas-Rachford operator and finite-convergence
//! certificates.
//!
//! `T_DR` is positively homogeneous, so it maps rays to rays and induces a
//! map `φ(t) = arg T(u_t)` on directions. On a pair of planar cones `T_DR`
//! is piecewise linear, and each linear piece is the identity, a rotation
//! by θ scaled by `|cos θ|`, a projection onto a line, or zero. On the
//! circle this becomes a piecewise map whose pieces are identity, fixed
//! rotation, constant, or "to zero" (the kernel).
//!
//! When the kernel is not a line and the fixed set is nontrivial, every
//! direction reaches the fixed arcs of `φ` within `⌈2π/ε⌉` steps, where `ε`
//! is the length of the shortest constant piece that absorbs into a
//! boundary point of the fixed arcs.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::arcs::{Arc, ArcSet};
use crate::cone::PlanarCone;
use crate::error::{Error, Result};
use crate::geom::{signed, Angle, Mat2, Vec2, TAU_ANG};
use crate::operators::ConePair;
use crate::structure::{structure_report, StructureReport};

/// Rotation angles this close to 0 (or π) are treated as identity (or zero).
const ROT_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PieceKind {
    Identity,
    /// Rotate by `angle` (signed radians) and scale by `scale ∈ (0, 1)`.
    Rotation {
        angle: f64,
        scale: f64,
    },
    /// Every direction in the arc maps to `target` (projection onto a line).
    ConstantTo(Angle),
    ToZero,
}

impl PieceKind {
    pub fn name(&self) -> &'static str {
        match self {
            PieceKind::Identity => "identity",
            PieceKind::Rotation { .. } => "rotation",
            PieceKind::ConstantTo(_) => "constant",
            PieceKind::ToZero => "to_zero",
        }
    }

    fn same_as(&self, other: &PieceKind) -> bool {
        match (self, other) {
            (PieceKind::Identity, PieceKind::Identity) | (PieceKind::ToZero, PieceKind::ToZero) => {
                true
            }
            (PieceKind::Rotation { angle: a, .. }, PieceKind::Rotation { angle: b, .. }) => {
                (a - b).abs() <= ROT_EPS
            }
            (PieceKind::ConstantTo(a), PieceKind::ConstantTo(b)) => a.approx_eq(*b, TAU_ANG),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CirclePiece {
    pub arc: Arc,
    pub kind: PieceKind,
    /// The linear map `T_DR` applies on the cone spanned by `arc`.
    pub linear: Mat2,
}

impl CirclePiece {
    /// `φ(t)` according to this piece; `None` on a to-zero piece.
    pub fn apply(&self, t: Angle) -> Option<Angle> {
        match self.kind {
            PieceKind::Identity => Some(t),
            PieceKind::Rotation { angle, .. } => Some(t.offset(angle)),
            PieceKind::ConstantTo(target) => Some(target),
            PieceKind::ToZero => None,
        }
    }
}

/// Result of evaluating `φ`: a direction, or the signal that the ray is
/// sent to the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CircleImage {
    Dir(Angle),
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseCircleMap {
    pieces: Vec<CirclePiece>,
    kernel: PlanarCone,
    domain: ArcSet,
}

impl PiecewiseCircleMap {
    /// Cyclically ordered pieces covering the circle.
    pub fn pieces(&self) -> &[CirclePiece] {
        &self.pieces
    }

    pub fn kernel(&self) -> &PlanarCone {
        &self.kernel
    }

    /// Directions outside the kernel. A kernel that is a single ray or
    /// line removes isolated points, which this set does not record.
    pub fn domain(&self) -> &ArcSet {
        &self.domain
    }

    pub fn in_domain(&self, t: Angle) -> bool {
        !self.kernel.contains_dir(t, TAU_ANG)
    }

    /// Piece governing direction `t`. At a shared endpoint the first piece
    /// that is not to-zero wins.
    pub fn piece_at(&self, t: Angle) -> &CirclePiece {
        self.pieces
            .iter()
            .find(|p| p.kind != PieceKind::ToZero && p.arc.contains(t, TAU_ANG))
            .or_else(|| self.pieces.iter().find(|p| p.arc.contains(t, TAU_ANG)))
            .expect("pieces cover the circle")
    }

    pub fn eval(&self, t: Angle) -> CircleImage {
        if matches!(self.kernel, PlanarCone::Ray(_) | PlanarCone::Line(_))
            && self.kernel.contains_dir(t, TAU_ANG)
        {
            return CircleImage::Zero;
        }
        match self.piece_at(t).apply(t) {
            Some(d) => CircleImage::Dir(d),
            None => CircleImage::Zero,
        }
    }

    /// Fixed points of `φ`: identity arcs plus constant targets that lie in
    /// their own arc.
    pub fn fixed_arcs(&self) -> ArcSet {
        ArcSet::from_arcs(self.pieces.iter().filter_map(|p| match p.kind {
            PieceKind::Identity => Some(p.arc),
            PieceKind::ConstantTo(target) if p.arc.contains(target, TAU_ANG) => {
                Some(Arc::point(target))
            }
            _ => None,
        }))
    }

    /// Largest mismatch of `φ` across shared endpoints, ignoring endpoints
    /// that border the kernel.
    pub fn continuity_defect(&self) -> f64 {
        let n = self.pieces.len();
        if n < 2 {
            return 0.0;
        }
        (0..n)
            .filter_map(|i| {
                let p = &self.pieces[i];
                let q = &self.pieces[(i + 1) % n];
                let b = p.arc.end();
                if !self.in_domain(b) {
                    return None;
                }
                Some(p.apply(b)?.dist(q.apply(b)?))
            })
            .fold(0.0, f64::max)
    }
}

fn dedup_circular(mut angles: Vec<f64>) -> Vec<f64> {
    angles.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(angles.len());
    for a in angles {
        match out.last() {
            Some(&last) if a - last <= TAU_ANG => {}
            _ => out.push(a),
        }
    }
    if out.len() > 1 && out[0] + TAU - out[out.len() - 1] <= TAU_ANG {
        out.pop();
    }
    out
}

/// Arcs between consecutive breakpoints; the full circle if there are none.
fn arcs_between(breaks: &[f64]) -> Vec<Arc> {
    if breaks.is_empty() {
        return vec![Arc::full()];
    }
    let n = breaks.len();
    (0..n)
        .map(|i| {
            let next = if i + 1 < n {
                breaks[i + 1]
            } else {
                breaks[0] + TAU
            };
            Arc::new(Angle::new(breaks[i]), next - breaks[i])
        })
        .collect()
}

fn classify(linear: &Mat2, composite: &Mat2, mid: Angle) -> PieceKind {
    if composite.det() < 0.0 {
        // (Id + reflection)/2 projects onto the reflection axis.
        let image = linear.apply(Vec2::unit(mid));
        return match image.arg() {
            Some(t) => PieceKind::ConstantTo(t),
            None => PieceKind::ToZero,
        };
    }
    let phi = signed(composite.m[1][0].atan2(composite.m[0][0]));
    if phi.abs() <= ROT_EPS {
        PieceKind::Identity
    } else if phi.abs() >= PI - ROT_EPS {
        PieceKind::ToZero
    } else {
        // (Id + Rot φ)/2 = cos(φ/2) Rot(φ/2), and |φ/2| < π/2.
        PieceKind::Rotation {
            angle: 0.5 * phi,
            scale: (0.5 * phi).cos(),
        }
    }
}

/// Partition of the circle into the linear pieces of `T_DR`.
///
/// Breakpoints are the region boundaries of `R_A` (edges of `A` and of its
/// polar) together with the boundaries of `R_B`'s regions pulled back
/// through each piece of `R_A`. Each resulting arc is classified from the
/// composite linear map at its midpoint; adjacent arcs of the same kind are
/// merged.
pub fn build_circle_map(pair: &ConePair) -> PiecewiseCircleMap {
    let ConePair { a, b } = pair;
    let a_breaks = dedup_circular(
        a.reflection_breakpoints()
            .iter()
            .map(|t| t.radians())
            .collect(),
    );
    let b_breaks = b.reflection_breakpoints();

    let mut breaks = a_breaks.clone();
    for arc in arcs_between(&a_breaks) {
        let q_a = a.reflection_piece(arc.midpoint());
        let inverse = q_a.transpose();
        for beta in &b_breaks {
            if let Some(t) = inverse.apply(Vec2::unit(*beta)).arg() {
                if arc.contains(t, 0.0) {
                    breaks.push(t.radians());
                }
            }
        }
    }
    let breaks = dedup_circular(breaks);

    let raw: Vec<CirclePiece> = arcs_between(&breaks)
        .into_iter()
        .map(|arc| {
            let mid = arc.midpoint();
            let q_a = a.reflection_piece(mid);
            let y = q_a.apply(Vec2::unit(mid));
            let q_b = b.reflection_piece(y.arg().expect("isometries keep unit vectors nonzero"));
            let composite = q_b.compose(&q_a);
            let linear = Mat2::IDENTITY.average(&composite);
            CirclePiece {
                arc,
                kind: classify(&linear, &composite, mid),
                linear,
            }
        })
        .collect();

    let kernel = crate::structure::kernel_dr(pair);
    let domain = match kernel {
        PlanarCone::Zero | PlanarCone::Ray(_) | PlanarCone::Line(_) => ArcSet::full(),
        PlanarCone::Plane => ArcSet::empty(),
        PlanarCone::Sector { start, width } => {
            ArcSet::from_arcs([Arc::new(start.offset(width), TAU - width)])
        }
        PlanarCone::Halfplane(s) => ArcSet::from_arcs([Arc::new(s.offset(PI), PI)]),
    };
    PiecewiseCircleMap {
        pieces: merge_pieces(raw),
        kernel,
        domain,
    }
}

fn merge_pieces(raw: Vec<CirclePiece>) -> Vec<CirclePiece> {
    let mut out: Vec<CirclePiece> = Vec::with_capacity(raw.len());
    for p in raw {
        match out.last_mut() {
            Some(last) if last.kind.same_as(&p.kind) => {
                last.arc = Arc::new(last.arc.start, last.arc.width + p.arc.width);
            }
            _ => out.push(p),
        }
    }
    if out.len() > 1 {
        let first = out[0];
        let last = out[out.len() - 1];
        if first.kind.same_as(&last.kind) {
            out.pop();
            out[0].arc = Arc::new(last.arc.start, last.arc.width + first.arc.width);
        }
    }
    if out.len() == 1 {
        out[0].arc = Arc::full();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    KernelLine,
    #[serde(rename = "Dichotomy_FixNontrivial")]
    DichotomyFixNontrivial,
    #[serde(rename = "Dichotomy_FixTrivial")]
    DichotomyFixTrivial,
    KernelPlane,
}

impl Regime {
    pub fn is_finite(&self) -> bool {
        !matches!(self, Regime::DichotomyFixTrivial)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceCertificate {
    pub finite: bool,
    /// Uniform iteration bound, present iff `finite`.
    pub bound_n: Option<u64>,
    pub epsilon: Option<f64>,
    pub fix_arcs: ArcSet,
    pub kernel_arcs: ArcSet,
    pub regime: Regime,
    /// Some fixed arc ends where the kernel begins; that side contributes
    /// no absorbing neighbourhood.
    pub fix_abuts_kernel: bool,
    pub structure: StructureReport,
    pub map: PiecewiseCircleMap,
}

/// Decides finite convergence of DR on `pair` and, when finite, a bound
/// on the number of iterations valid for every starting point.
pub fn certify(pair: &ConePair) -> Result<ConvergenceCertificate> {
    let structure = structure_report(pair)?;
    let map = build_circle_map(pair);
    let fix_arcs = map.fixed_arcs();
    let kernel_arcs = structure.kernel.arc_set();

    let (regime, bound_n, epsilon, fix_abuts_kernel) = if structure.kernel_is_line {
        (Regime::KernelLine, Some(1), None, false)
    } else if structure.kernel.is_plane() {
        (Regime::KernelPlane, Some(1), None, false)
    } else if !structure.fix_trivial {
        let (eps, abuts) = absorbing_epsilon(&map, &fix_arcs, &kernel_arcs)?;
        let n = (TAU / eps).ceil() as u64;
        (
            Regime::DichotomyFixNontrivial,
            Some(n.max(1)),
            Some(eps),
            abuts,
        )
    } else {
        (Regime::DichotomyFixTrivial, None, None, false)
    };

    Ok(ConvergenceCertificate {
        finite: regime.is_finite(),
        bound_n,
        epsilon,
        fix_arcs,
        kernel_arcs,
        regime,
        fix_abuts_kernel,
        structure,
        map,
    })
}

/// Shortest constant piece adjacent to a boundary point of the fixed arcs
/// and mapping into them. Returns `2π` when the fixed arcs fill the whole
/// domain.
fn absorbing_epsilon(
    map: &PiecewiseCircleMap,
    fix: &ArcSet,
    kernel_arcs: &ArcSet,
) -> Result<(f64, bool)> {
    if fix.is_empty() {
        return Err(Error::Internal(
            "nontrivial fixed set but the circle map has no fixed direction".into(),
        ));
    }
    if fix.total_length() + kernel_arcs.total_length() >= TAU - 2.0 * TAU_ANG {
        return Ok((TAU, false));
    }

    let mut eps = f64::INFINITY;
    let mut abuts = false;
    for comp in fix.arcs() {
        for (boundary, forward) in [(comp.end(), true), (comp.start, false)] {
            match outward_piece(map, boundary, forward) {
                Some((piece, length)) => match piece.kind {
                    PieceKind::ToZero => abuts = true,
                    PieceKind::ConstantTo(target) if fix.contains(target, TAU_ANG) => {
                        eps = eps.min(length);
                    }
                    other => {
                        return Err(Error::Internal(format!(
                            "fixed-arc boundary {boundary} is adjacent to a {} piece",
                            other.name()
                        )))
                    }
                },
                None => {
                    return Err(Error::Internal(format!(
                        "no piece found next to fixed-arc boundary {boundary}"
                    )))
                }
            }
        }
    }
    if !eps.is_finite() {
        return Err(Error::Internal(
            "no absorbing constant piece next to the fixed arcs".into(),
        ));
    }
    Ok((eps, abuts))
}

/// The piece just beyond `boundary` in the given direction, and the length
/// of that piece measured from `boundary`.
fn outward_piece(
    map: &PiecewiseCircleMap,
    boundary: Angle,
    forward: bool,
) -> Option<(CirclePiece, f64)> {
    let pieces = map.pieces();
    if let Some(p) = pieces
        .iter()
        .find(|p| p.arc.contains_interior(boundary, TAU_ANG))
    {
        let from_start = p.arc.start.ccw_to(boundary);
        let len = if forward {
            p.arc.width - from_start
        } else {
            from_start
        };
        return Some((*p, len));
    }
    pieces
        .iter()
        .find(|p| {
            let edge = if forward { p.arc.start } else { p.arc.end() };
            edge.approx_eq(boundary, TAU_ANG)
        })
        .map(|p| (*p, p.arc.width))
}

#[derive(Serialize)]
struct PieceJson {
    arc_start: f64,
    arc_width: f64,
    kind: &'static str,
    angle: Option<f64>,
    scale: Option<f64>,
    target: Option<f64>,
}

#[derive(Serialize)]
struct CertificateJson {
    finite: bool,
    bound_n: Option<u64>,
    epsilon: Option<f64>,
    regime: Regime,
    kernel: String,
    fixed_set: String,
    pieces: Vec<PieceJson>,
    fix_abuts_kernel: bool,
}

impl ConvergenceCertificate {
    pub fn to_json_value(&self) -> serde_json::Value {
        let pieces = self
            .map
            .pieces()
            .iter()
            .map(|p| {
                let (angle, scale, target) = match p.kind {
                    PieceKind::Rotation { angle, scale } => (Some(angle), Some(scale), None),
                    PieceKind::ConstantTo(t) => (None, None, Some(t.radians())),
                    PieceKind::Identity => (None, Some(1.0), None),
                    PieceKind::ToZero => (None, None, None),
                };
                PieceJson {
                    arc_start: p.arc.start.radians(),
                    arc_width: p.arc.width,
                    kind: p.kind.name(),
                    angle,
                    scale,
                    target,
                }
            })
            .collect();
        serde_json::to_value(CertificateJson {
            finite: self.finite,
            bound_n: self.bound_n,
            epsilon: self.epsilon,
            regime: self.regime,
            kernel: self.structure.kernel.to_string(),
            fixed_set: self.structure.fixed_set.to_string(),
            pieces,
            fix_abuts_kernel: self.fix_abuts_kernel,
        })
        .expect("certificate serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("certificate serializes")
    }
}
