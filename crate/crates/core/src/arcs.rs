//! Finite unions of closed circular arcs.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::geom::{Angle, TAU_ANG};

/// A closed arc running counter-clockwise from `start` through `width` radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub start: Angle,
    pub width: f64,
}

impl Arc {
    pub fn new(start: Angle, width: f64) -> Self {
        Arc {
            start,
            width: width.clamp(0.0, TAU),
        }
    }

    pub fn full() -> Self {
        Arc {
            start: Angle::ZERO,
            width: TAU,
        }
    }

    pub fn point(at: Angle) -> Self {
        Arc {
            start: at,
            width: 0.0,
        }
    }

    pub fn end(&self) -> Angle {
        self.start.offset(self.width)
    }

    pub fn is_full(&self) -> bool {
        self.width >= TAU - TAU_ANG
    }

    pub fn midpoint(&self) -> Angle {
        self.start.offset(0.5 * self.width)
    }

    /// Closed membership with tolerance `tol` at both ends.
    pub fn contains(&self, t: Angle, tol: f64) -> bool {
        if self.is_full() {
            return true;
        }
        let d = self.start.ccw_to(t);
        d <= self.width + tol || d >= TAU - tol
    }

    /// Membership in the open arc, shrunk by `tol` at both ends.
    pub fn contains_interior(&self, t: Angle, tol: f64) -> bool {
        if self.is_full() {
            return true;
        }
        let d = self.start.ccw_to(t);
        d > tol && d < self.width - tol
    }
}

/// Ordered, merged collection of disjoint closed arcs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        ArcSet {
            arcs: vec![Arc::full()],
        }
    }

    /// Builds a normalized set: arcs sorted by start, overlapping or
    /// touching arcs (within `TAU_ANG`) merged, a full circle collapsed to
    /// the single arc starting at 0.
    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        if arcs.iter().any(Arc::is_full) {
            return ArcSet::full();
        }
        if arcs.is_empty() {
            return ArcSet::empty();
        }
        arcs.sort_by(|a, b| a.start.radians().total_cmp(&b.start.radians()));

        // Linear sweep on [start, start+width] with starts in [0, 2π).
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for a in &arcs {
            let (s, e) = (a.start.radians(), a.start.radians() + a.width);
            match merged.last_mut() {
                Some(last) if s <= last.1 + TAU_ANG => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        // The last arc may wrap past 2π and swallow arcs at the front.
        if merged.len() > 1 {
            let wrap_end = merged.last().map(|m| m.1 - TAU).unwrap_or(f64::MIN);
            while merged.len() > 1 && merged[0].0 <= wrap_end + TAU_ANG {
                let first = merged.remove(0);
                let last = merged.last_mut().expect("nonempty");
                last.1 = last.1.max(first.1 + TAU);
            }
        }
        let total: f64 = merged.iter().map(|(s, e)| e - s).sum();
        if merged.len() == 1 && total >= TAU - TAU_ANG {
            return ArcSet::full();
        }
        ArcSet {
            arcs: merged
                .into_iter()
                .map(|(s, e)| Arc::new(Angle::new(s), e - s))
                .collect(),
        }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full()
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.width).sum()
    }

    pub fn contains(&self, t: Angle, tol: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(t, tol))
    }

    /// Equality of normalized sets with endpoint tolerance `tol`.
    pub fn approx_eq(&self, other: &ArcSet, tol: f64) -> bool {
        if self.is_full() || other.is_full() {
            return self.is_full() == other.is_full();
        }
        if self.arcs.len() != other.arcs.len() {
            return false;
        }
        // Starts are sorted but an arc beginning near 0 may sort to either end.
        let n = self.arcs.len();
        (0..n).any(|shift| {
            self.arcs.iter().enumerate().all(|(i, a)| {
                let b = &other.arcs[(i + shift) % n];
                a.start.approx_eq(b.start, tol) && (a.width - b.width).abs() <= 2.0 * tol
            })
        })
    }
}
