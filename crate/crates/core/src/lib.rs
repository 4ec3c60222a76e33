//! Euler-characteristic integral transforms over planar constructible functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`euler`]: Euler characteristic of cubical sets, integer and real-valued
//!   Euler integrals, and the one-dimensional contour/segment integrals that
//!   form the inner integrals of the transforms.
//! - [`geometry`]: exact polygonal scenes, rasterization, and critical points
//!   of distance and height functions restricted to polygon boundaries.
//! - [`transforms`]: numeric Euler-Bessel, Euler-Fourier and SVA transforms
//!   computed by sampling isospectral contours against a scene or raster.
//! - [`index`]: closed-form evaluation of the same transforms from boundary
//!   critical points (the fast path and the oracle for the numeric path).
//! - [`pipeline`]: target counting, minima detection, localization and shape
//!   discrimination.
//! - [`io`]: scene JSON, field CSV/PGM/JSON and report serialization.

pub mod error;
pub mod euler;
pub mod geometry;
pub mod index;
pub mod io;
pub mod pipeline;
pub mod transforms;

pub use error::{Error, Result};
pub use euler::{
    BinaryMask, CircularProfile, GridFunction, GridSpec, IntervalProfile, RealGridFunction,
};
pub use geometry::{CriticalKind, CriticalPoint, Direction, Point, Polygon, Scene, Side};
pub use transforms::{BesselParams, NormProfile, SvaFamily, TransformField};
