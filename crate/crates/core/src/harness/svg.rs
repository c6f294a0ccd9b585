//! Static SVG rendering of a trajectory over its two cones.
//!
//! World coordinates are drawn directly in the SVG user space with `y`
//! negated, so the `viewBox` is the padded bounding box of the iterates.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::cone::PlanarCone;
use crate::error::{Error, Result};
use crate::geom::{Angle, Vec2};
use crate::harness::trace::TraceRow;

/// Fraction of the bounding-box extent added on every side.
pub const PADDING: f64 = 0.1;

const ARC_SEGMENTS: usize = 96;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub min_x: f64,
    pub min_y: f64,
    pub width: f64,
    pub height: f64,
}

impl Viewport {
    /// Bounding box of `points`, padded by [`PADDING`]. A degenerate extent
    /// is widened to the other extent, or to the point's magnitude (at
    /// least 1) when the trajectory is a single point.
    pub fn fit(points: &[Vec2]) -> Option<Viewport> {
        let first = points.first()?;
        let (mut lo, mut hi) = (*first, *first);
        for p in points {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let (mut w, mut h) = (hi.x - lo.x, hi.y - lo.y);
        let fallback = if w > 0.0 || h > 0.0 {
            w.max(h)
        } else {
            first.x.abs().max(first.y.abs()).max(1.0)
        };
        if w <= 0.0 {
            w = fallback;
        }
        if h <= 0.0 {
            h = fallback;
        }
        let cx = 0.5 * (lo.x + hi.x);
        let cy = 0.5 * (lo.y + hi.y);
        let (pw, ph) = (w * (1.0 + 2.0 * PADDING), h * (1.0 + 2.0 * PADDING));
        Some(Viewport {
            min_x: cx - 0.5 * pw,
            min_y: cy - 0.5 * ph,
            width: pw,
            height: ph,
        })
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min_x
            && p.x <= self.min_x + self.width
            && p.y >= self.min_y
            && p.y <= self.min_y + self.height
    }

    /// Radius around the origin that reaches every corner.
    fn reach(&self) -> f64 {
        let xs = [self.min_x, self.min_x + self.width];
        let ys = [self.min_y, self.min_y + self.height];
        xs.iter()
            .flat_map(|&x| ys.iter().map(move |&y| Vec2::new(x, y).norm()))
            .fold(0.0, f64::max)
            * 1.05
    }
}

fn pt(p: Vec2) -> String {
    format!("{:.6},{:.6}", p.x, -p.y)
}

/// Path data for the part of `cone` within radius `r` of the origin.
fn cone_path(cone: &PlanarCone, r: f64) -> Option<String> {
    let ray = |t: Angle| format!("M0,0 L{}", pt(r * Vec2::unit(t)));
    let fan = |start: Angle, width: f64| {
        let mut d = String::from("M0,0");
        for i in 0..=ARC_SEGMENTS {
            let t = start.offset(width * i as f64 / ARC_SEGMENTS as f64);
            let _ = write!(d, " L{}", pt(r * Vec2::unit(t)));
        }
        d.push_str(" Z");
        d
    };
    match *cone {
        PlanarCone::Zero => None,
        PlanarCone::Ray(t) => Some(ray(t)),
        PlanarCone::Line(t) => Some(format!(
            "{} {}",
            ray(t),
            ray(t.offset(std::f64::consts::PI))
        )),
        PlanarCone::Sector { start, width } => Some(fan(start, width)),
        PlanarCone::Halfplane(s) => Some(fan(s, std::f64::consts::PI)),
        PlanarCone::Plane => Some(fan(Angle::ZERO, TAU)),
    }
}

/// Renders iterates as `<circle class="iterate">` markers joined by one
/// polyline, over shaded cones clipped to the viewport.
pub fn render_svg(rows: &[TraceRow], a: &PlanarCone, b: &PlanarCone) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Trajectory {
            row: 0,
            reason: "trace has no rows".into(),
        });
    }
    let points: Vec<Vec2> = rows.iter().map(TraceRow::point).collect();
    let vp = Viewport::fit(&points).expect("nonempty");
    let marker = 0.012 * vp.width.max(vp.height);
    let r = vp.reach();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="640" height="{:.0}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        640.0 * vp.height / vp.width,
        vp.min_x,
        -(vp.min_y + vp.height),
        vp.width,
        vp.height
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="viewport"><rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}"/></clipPath></defs>"#,
        vp.min_x,
        -(vp.min_y + vp.height),
        vp.width,
        vp.height
    );
    s.push_str(r#"<g clip-path="url(#viewport)">"#);
    s.push('\n');
    for (cone, class, fill) in [(a, "cone-a", "#4c72b0"), (b, "cone-b", "#dd8452")] {
        if let Some(d) = cone_path(cone, r) {
            let _ = writeln!(
                s,
                r#"<path class="{class}" d="{d}" fill="{fill}" fill-opacity="0.25" stroke="{fill}" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"#
            );
        }
    }
    s.push_str("</g>\n");

    let poly: Vec<String> = points.iter().map(|&p| pt(p)).collect();
    let _ = writeln!(
        s,
        r#"<polyline class="trajectory" points="{}" fill="none" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke"/>"#,
        poly.join(" ")
    );
    for p in &points {
        let _ = writeln!(
            s,
            r#"<circle class="iterate" cx="{:.6}" cy="{:.6}" r="{marker:.6}" fill="black"/>"#,
            p.x, -p.y
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
