//! Euler calculus primitives on cubical grids and one-dimensional profiles.
//!
//! Excursion sets are realized as unions of closed unit squares, so the Euler
//! integral of a sum of indicators of closed top-dimensional sets is exact.

mod grid;
mod profile;

pub use grid::{
    euler_char, euler_integral, excursion_mask, real_integral_ceil, real_integral_floor,
    BinaryMask, GridFunction, GridSpec, RealGridFunction, Sense,
};
pub use profile::{
    circle_extrema, circle_integral_ceil, circle_integral_floor, contour_euler_integral,
    cyclic_ascent, segment_euler_integral, CircularProfile, ExtremumKind, IntervalProfile,
    PlateauRun,
};
