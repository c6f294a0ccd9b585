//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use conedr::{Angle, ConePair, PlanarCone, Vec2};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform angle, or with probability 0.3 a multiple of π/4 so that
/// aligned and degenerate configurations are exercised too.
pub fn angle(rng: &mut StdRng) -> f64 {
    if rng.gen_bool(0.3) {
        rng.gen_range(0..8) as f64 * FRAC_PI_4
    } else {
        rng.gen_range(0.0..TAU)
    }
}

pub fn sector_width(rng: &mut StdRng) -> f64 {
    if rng.gen_bool(0.3) {
        rng.gen_range(1..4) as f64 * FRAC_PI_4
    } else {
        rng.gen_range(0.02..PI - 0.02)
    }
}

pub fn cone(rng: &mut StdRng) -> PlanarCone {
    match rng.gen_range(0..12) {
        0 => PlanarCone::Zero,
        1 => PlanarCone::Plane,
        2 | 3 => PlanarCone::ray(angle(rng)),
        4 | 5 => PlanarCone::line(angle(rng)),
        6..=9 => {
            let s = angle(rng);
            PlanarCone::sector(s, sector_width(rng)).expect("width in (0, π)")
        }
        _ => PlanarCone::halfplane(angle(rng)),
    }
}

pub fn pair(rng: &mut StdRng) -> ConePair {
    ConePair::new(cone(rng), cone(rng))
}

/// A pair whose intersection is more than the origin.
pub fn overlapping_pair(rng: &mut StdRng) -> ConePair {
    loop {
        let p = pair(rng);
        if !p.a.intersect(&p.b).is_zero() {
            return p;
        }
    }
}

pub fn point(rng: &mut StdRng) -> Vec2 {
    let r = 10f64.powf(rng.gen_range(-2.0..2.0));
    r * Vec2::unit(Angle::new(rng.gen_range(0.0..TAU)))
}

/// `n` equally spaced unit directions starting at angle 0.
pub fn directions(n: usize) -> Vec<Vec2> {
    (0..n)
        .map(|i| Vec2::unit(Angle::new(i as f64 * TAU / n as f64)))
        .collect()
}
