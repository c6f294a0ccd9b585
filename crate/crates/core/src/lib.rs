//! Douglas-Rachford and generalized projection operators on pairs of closed
//! convex cones in the plane.
//!
//! The crate computes kernels and fixed sets in closed form, reduces the
//! positively homogeneous operator to a piecewise map of the circle, and
//! certifies finite convergence with a uniform iteration bound when one
//! exists. The [`harness`] module reproduces the worked examples and drives
//! parameter sweeps, trajectory traces and SVG rendering.

pub mod arcs;
pub mod circle;
pub mod cone;
pub mod error;
pub mod geom;
pub mod harness;
pub mod operators;
pub mod structure;

pub use arcs::{Arc, ArcSet};
pub use circle::{
    build_circle_map, certify, CircleImage, CirclePiece, ConvergenceCertificate, PieceKind,
    PiecewiseCircleMap, Regime,
};
pub use cone::PlanarCone;
pub use error::{Error, Result};
pub use geom::{Angle, Mat2, Vec2, TAU_ANG};
pub use operators::{
    apply, dr_op, generalized_op, is_fixed, iterate, orbit, relaxed_projection, ConePair,
    OperatorParams, Termination, Trajectory, KAPPA_MAX, TAU_FIX,
};
pub use structure::{
    fixed_set_dr, kernel_components, kernel_dr, structure_report, KernelLineCase, StructureReport,
};
