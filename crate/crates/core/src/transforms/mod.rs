//! Numeric Euler-Bessel, Euler-Fourier and SVA transforms.
//!
//! The inner Euler integral over each isospectral contour is evaluated from
//! samples of the integrand on the contour; the outer Lebesgue integral over
//! the radius (or offset) uses the midpoint rule.

mod bessel;
mod field;
mod fourier;
mod norm;

pub use bessel::{
    bessel_at_points, bessel_transform, bessel_transform_raster, contour_sample, sva_transform,
    sva_transform_with_members, BesselParams,
};
pub use field::{FieldMeta, TransformField};
pub use fourier::{fourier_profile, fourier_transform, fourier_transform_with};
pub use norm::{NormProfile, NormShape, SvaFamily};
