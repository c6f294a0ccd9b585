//! Closed convex cones in the plane.
//!
//! Every nonempty closed convex cone in R² is one of six canonical kinds.
//! Representations never overlap: a sector always has width strictly
//! inside `(0, π)`, a line's direction always lies in `[0, π)`.
//!
//! Set operations (`intersect`, `conic_hull_union`) are computed exactly
//! from finite generator sets; only the angular tolerance `TAU_ANG` is used
//! to decide coincidences such as "these two rays are opposite".

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::arcs::{Arc, ArcSet};
use crate::error::{Error, Result};
use crate::geom::{normalize, Angle, Mat2, Vec2, TAU_ANG};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PlanarCone {
    Zero,
    Ray(Angle),
    Line(Angle),
    Sector { start: Angle, width: f64 },
    Halfplane(Angle),
    Plane,
}

impl PlanarCone {
    pub fn ray(direction: f64) -> Self {
        PlanarCone::Ray(Angle::new(direction))
    }

    pub fn line(direction: f64) -> Self {
        PlanarCone::Line(Angle::new(normalize(direction) % PI))
    }

    /// Closed halfplane `{θ : start ≤ θ ≤ start + π}`.
    pub fn halfplane(start: f64) -> Self {
        PlanarCone::Halfplane(Angle::new(start))
    }

    /// Sector `{θ : start ≤ θ ≤ start + width}`, canonicalized.
    ///
    /// A width within `TAU_ANG` of π becomes a halfplane and a width in
    /// `(0, TAU_ANG]` becomes a ray. Widths `≤ 0` or `> π` are rejected.
    pub fn sector(start: f64, width: f64) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::NonFinite(start));
        }
        if !width.is_finite() {
            return Err(Error::NonFinite(width));
        }
        if width <= 0.0 || width > PI + TAU_ANG {
            return Err(Error::InvalidSectorWidth { width });
        }
        Ok(Self::sector_canonical(start, width))
    }

    /// Sector constructor for widths already known to lie in `[0, π]`.
    fn sector_canonical(start: f64, width: f64) -> Self {
        if width <= TAU_ANG {
            PlanarCone::Ray(Angle::new(start))
        } else if width >= PI - TAU_ANG {
            PlanarCone::Halfplane(Angle::new(start))
        } else {
            PlanarCone::Sector {
                start: Angle::new(start),
                width,
            }
        }
    }

    /// Parse a cone expression: `zero | plane | ray:θ | line:θ |
    /// halfplane:θ | sector:θ,w`, where angles are decimal radians or
    /// `<decimal>pi`.
    pub fn parse(expr: &str) -> Result<Self> {
        expr.parse()
    }

    /// Angular support of the cone minus the origin.
    pub fn arc_set(&self) -> ArcSet {
        match *self {
            PlanarCone::Zero => ArcSet::empty(),
            PlanarCone::Plane => ArcSet::full(),
            PlanarCone::Ray(d) => ArcSet::from_arcs([Arc::point(d)]),
            PlanarCone::Line(d) => ArcSet::from_arcs([Arc::point(d), Arc::point(d.offset(PI))]),
            PlanarCone::Sector { start, width } => ArcSet::from_arcs([Arc::new(start, width)]),
            PlanarCone::Halfplane(s) => ArcSet::from_arcs([Arc::new(s, PI)]),
        }
    }

    /// Membership of a direction, closed, with tolerance `tol`.
    pub fn contains_dir(&self, t: Angle, tol: f64) -> bool {
        match *self {
            PlanarCone::Zero => false,
            PlanarCone::Plane => true,
            PlanarCone::Ray(d) => t.approx_eq(d, tol),
            PlanarCone::Line(d) => t.approx_eq(d, tol) || t.approx_eq(d.offset(PI), tol),
            PlanarCone::Sector { start, width } => Arc::new(start, width).contains(t, tol),
            PlanarCone::Halfplane(s) => Arc::new(s, PI).contains(t, tol),
        }
    }

    /// Membership test; angular comparisons use `TAU_ANG`. The origin
    /// belongs to every cone.
    pub fn contains(&self, x: Vec2) -> bool {
        match x.arg() {
            None => true,
            Some(t) => self.contains_dir(t, TAU_ANG),
        }
    }

    /// Nearest point of the cone.
    ///
    /// Uses exact sign predicates rather than the angular tolerance so that
    /// the Moreau decomposition holds to rounding error.
    pub fn project(&self, x: Vec2) -> Vec2 {
        match *self {
            PlanarCone::Zero => Vec2::ZERO,
            PlanarCone::Plane => x,
            PlanarCone::Ray(d) => project_ray(Vec2::unit(d), x),
            PlanarCone::Line(d) => {
                let u = Vec2::unit(d);
                x.dot(u) * u
            }
            PlanarCone::Halfplane(s) => {
                let n = Vec2::unit(s.offset(FRAC_PI_2));
                let h = x.dot(n);
                if h >= 0.0 {
                    x
                } else {
                    x - h * n
                }
            }
            PlanarCone::Sector { start, width } => {
                let e1 = Vec2::unit(start);
                let e2 = Vec2::unit(start.offset(width));
                if e1.cross(x) >= 0.0 && x.cross(e2) >= 0.0 {
                    return x;
                }
                let p1 = project_ray(e1, x);
                let p2 = project_ray(e2, x);
                if (x - p1).norm_sq() <= (x - p2).norm_sq() {
                    p1
                } else {
                    p2
                }
            }
        }
    }

    /// `2 P_C(x) - x`.
    pub fn reflect(&self, x: Vec2) -> Vec2 {
        let p = self.project(x);
        Vec2::new(2.0 * p.x - x.x, 2.0 * p.y - x.y)
    }

    /// Polar cone `{y : <x, y> ≤ 0 for all x in C}`, in closed form.
    pub fn polar(&self) -> PlanarCone {
        match *self {
            PlanarCone::Zero => PlanarCone::Plane,
            PlanarCone::Plane => PlanarCone::Zero,
            PlanarCone::Line(d) => PlanarCone::line(d.radians() + FRAC_PI_2),
            PlanarCone::Ray(d) => PlanarCone::halfplane(d.radians() + FRAC_PI_2),
            PlanarCone::Sector { start, width } => {
                Self::sector_canonical(start.radians() + width + FRAC_PI_2, PI - width)
            }
            PlanarCone::Halfplane(s) => PlanarCone::ray(s.radians() + 3.0 * FRAC_PI_2),
        }
    }

    /// The cone rotated by π.
    pub fn negate(&self) -> PlanarCone {
        match *self {
            PlanarCone::Zero | PlanarCone::Plane | PlanarCone::Line(_) => *self,
            PlanarCone::Ray(d) => PlanarCone::Ray(d.offset(PI)),
            PlanarCone::Sector { start, width } => PlanarCone::Sector {
                start: start.offset(PI),
                width,
            },
            PlanarCone::Halfplane(s) => PlanarCone::Halfplane(s.offset(PI)),
        }
    }

    /// Intersection of two cones.
    ///
    /// For closed convex cones in the plane (all polyhedral),
    /// `(C1 ∩ C2)° = C1° + C2°`, so the intersection is the polar of the
    /// hull of the polars.
    pub fn intersect(&self, other: &PlanarCone) -> PlanarCone {
        match (self, other) {
            (PlanarCone::Zero, _) | (_, PlanarCone::Zero) => PlanarCone::Zero,
            (PlanarCone::Plane, c) | (c, PlanarCone::Plane) => *c,
            _ => self.polar().conic_hull_union(&other.polar()).polar(),
        }
    }

    /// Smallest closed convex cone containing both cones.
    pub fn conic_hull_union(&self, other: &PlanarCone) -> PlanarCone {
        match (self.generators(), other.generators()) {
            (None, _) | (_, None) => PlanarCone::Plane,
            (Some(mut a), Some(b)) => {
                a.extend(b);
                hull_of_directions(a)
            }
        }
    }

    /// `C1 + C2`; for convex cones this equals the conic hull of the union.
    pub fn minkowski_sum(&self, other: &PlanarCone) -> PlanarCone {
        self.conic_hull_union(other)
    }

    /// Finite direction set whose conic hull is the cone; `None` for the
    /// full plane.
    fn generators(&self) -> Option<Vec<f64>> {
        match *self {
            PlanarCone::Zero => Some(Vec::new()),
            PlanarCone::Plane => None,
            PlanarCone::Ray(d) => Some(vec![d.radians()]),
            PlanarCone::Line(d) => Some(vec![d.radians(), d.radians() + PI]),
            PlanarCone::Sector { start, width } => {
                Some(vec![start.radians(), start.radians() + width])
            }
            PlanarCone::Halfplane(s) => {
                Some(vec![s.radians(), s.radians() + FRAC_PI_2, s.radians() + PI])
            }
        }
    }

    /// Directions of the edge rays of the cone (0, 1 or 2 of them; a line
    /// or halfplane reports both opposite rays).
    pub fn edges(&self) -> Vec<Angle> {
        match *self {
            PlanarCone::Zero | PlanarCone::Plane => Vec::new(),
            PlanarCone::Ray(d) => vec![d],
            PlanarCone::Line(d) => vec![d, d.offset(PI)],
            PlanarCone::Sector { start, width } => vec![start, start.offset(width)],
            PlanarCone::Halfplane(s) => vec![s, s.offset(PI)],
        }
    }

    /// Directions where the reflection `R_C` changes linear piece: the edges
    /// of the cone and of its polar.
    pub fn reflection_breakpoints(&self) -> Vec<Angle> {
        let mut out = self.edges();
        out.extend(self.polar().edges());
        out
    }

    /// The linear isometry that `R_C` applies in direction `t`.
    ///
    /// Identity on the cone, `-Id` on the polar, reflection in the line of
    /// the nearer edge elsewhere. On boundaries the closed pieces agree.
    pub fn reflection_piece(&self, t: Angle) -> Mat2 {
        if self.contains_dir(t, 0.0) {
            return Mat2::IDENTITY;
        }
        if self.polar().contains_dir(t, 0.0) {
            return Mat2::NEG_IDENTITY;
        }
        let u = Vec2::unit(t);
        let edge = self
            .edges()
            .into_iter()
            .max_by(|a, b| u.dot(Vec2::unit(*a)).total_cmp(&u.dot(Vec2::unit(*b))))
            .expect("cones other than zero and plane have edges");
        Mat2::reflection(edge)
    }

    /// Equality of kind with angles and widths within `tol`.
    pub fn approx_eq(&self, other: &PlanarCone, tol: f64) -> bool {
        match (*self, *other) {
            (PlanarCone::Zero, PlanarCone::Zero) | (PlanarCone::Plane, PlanarCone::Plane) => true,
            (PlanarCone::Ray(a), PlanarCone::Ray(b)) => a.approx_eq(b, tol),
            (PlanarCone::Line(a), PlanarCone::Line(b)) => {
                a.approx_eq(b, tol) || a.approx_eq(b.offset(PI), tol)
            }
            (PlanarCone::Halfplane(a), PlanarCone::Halfplane(b)) => a.approx_eq(b, tol),
            (
                PlanarCone::Sector {
                    start: s1,
                    width: w1,
                },
                PlanarCone::Sector {
                    start: s2,
                    width: w2,
                },
            ) => s1.approx_eq(s2, tol) && (w1 - w2).abs() <= tol,
            _ => false,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            PlanarCone::Zero => "zero",
            PlanarCone::Ray(_) => "ray",
            PlanarCone::Line(_) => "line",
            PlanarCone::Sector { .. } => "sector",
            PlanarCone::Halfplane(_) => "halfplane",
            PlanarCone::Plane => "plane",
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PlanarCone::Zero)
    }

    pub fn is_plane(&self) -> bool {
        matches!(self, PlanarCone::Plane)
    }

    pub fn is_line(&self) -> bool {
        matches!(self, PlanarCone::Line(_))
    }
}

fn project_ray(u: Vec2, x: Vec2) -> Vec2 {
    let t = x.dot(u);
    if t > 0.0 {
        t * u
    } else {
        Vec2::ZERO
    }
}

/// Conic hull of a finite set of directions, decided by the largest
/// angular gap between consecutive directions.
fn hull_of_directions(dirs: Vec<f64>) -> PlanarCone {
    let mut dirs: Vec<f64> = dirs.into_iter().map(normalize).collect();
    if dirs.is_empty() {
        return PlanarCone::Zero;
    }
    dirs.sort_by(f64::total_cmp);
    let mut uniq: Vec<f64> = Vec::with_capacity(dirs.len());
    for d in dirs {
        match uniq.last() {
            Some(&last) if d - last <= TAU_ANG => {}
            _ => uniq.push(d),
        }
    }
    if uniq.len() > 1 && uniq[0] + TAU - uniq[uniq.len() - 1] <= TAU_ANG {
        uniq.pop();
    }
    if uniq.len() == 1 {
        return PlanarCone::Ray(Angle::new(uniq[0]));
    }

    let n = uniq.len();
    let (gap_idx, gap) = (0..n)
        .map(|i| {
            let next = if i + 1 < n {
                uniq[i + 1]
            } else {
                uniq[0] + TAU
            };
            (i, next - uniq[i])
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least two directions");
    let after_gap = uniq[(gap_idx + 1) % n];

    if gap > PI + TAU_ANG {
        PlanarCone::sector_canonical(after_gap, TAU - gap)
    } else if gap >= PI - TAU_ANG {
        if n == 2 {
            PlanarCone::line(after_gap)
        } else {
            PlanarCone::Halfplane(Angle::new(after_gap))
        }
    } else {
        PlanarCone::Plane
    }
}

/// Parse an angle literal: decimal radians, `pi`, or `<decimal>pi`.
pub fn parse_angle(token: &str) -> Result<f64> {
    let t = token.trim();
    let value = if let Some(coef) = t.strip_suffix("pi") {
        let coef = coef.trim();
        let c = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => coef
                .parse::<f64>()
                .map_err(|_| Error::parse(token, "expected <decimal>pi"))?,
        };
        c * PI
    } else {
        t.parse::<f64>().map_err(|_| {
            Error::parse(token, "expected a decimal angle in radians or <decimal>pi")
        })?
    };
    if !value.is_finite() {
        return Err(Error::parse(token, "angle must be finite"));
    }
    Ok(value)
}

impl FromStr for PlanarCone {
    type Err = Error;

    fn from_str(expr: &str) -> Result<Self> {
        let expr = expr.trim();
        let (head, args) = match expr.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a)),
            None => (expr, None),
        };
        let one_angle = |args: Option<&str>| -> Result<f64> {
            let a = args.ok_or_else(|| Error::parse(expr, "missing angle after ':'"))?;
            if a.contains(',') {
                return Err(Error::parse(a, "expected a single angle"));
            }
            parse_angle(a)
        };
        match head {
            "zero" if args.is_none() => Ok(PlanarCone::Zero),
            "plane" if args.is_none() => Ok(PlanarCone::Plane),
            "ray" => Ok(PlanarCone::ray(one_angle(args)?)),
            "line" => Ok(PlanarCone::line(one_angle(args)?)),
            "halfplane" => Ok(PlanarCone::halfplane(one_angle(args)?)),
            "sector" => {
                let a = args.ok_or_else(|| Error::parse(expr, "sector needs <start>,<width>"))?;
                let (s, w) = a
                    .split_once(',')
                    .ok_or_else(|| Error::parse(a, "sector needs <start>,<width>"))?;
                let start = parse_angle(s)?;
                let width = parse_angle(w)?;
                if width <= 0.0 || width > PI + TAU_ANG {
                    return Err(Error::parse(w, "sector width must lie in (0, pi]"));
                }
                PlanarCone::sector(start, width)
            }
            _ => Err(Error::parse(head, "unknown cone kind")),
        }
    }
}

/// Prints the cone-expression form; angles in decimal radians.
impl fmt::Display for PlanarCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarCone::Zero => write!(f, "zero"),
            PlanarCone::Plane => write!(f, "plane"),
            PlanarCone::Ray(d) => write!(f, "ray:{:?}", d.radians()),
            PlanarCone::Line(d) => write!(f, "line:{:?}", d.radians()),
            PlanarCone::Halfplane(s) => write!(f, "halfplane:{:?}", s.radians()),
            PlanarCone::Sector { start, width } => {
                write!(f, "sector:{:?},{:?}", start.radians(), width)
            }
        }
    }
}
