use serde::{Deserialize, Serialize};

use super::minima::{find_local_minima_with, Minimum};
use crate::error::Result;
use crate::euler::{euler_integral, GridFunction, GridSpec};
use crate::geometry::{rasterize, Scene};
use crate::transforms::{
    bessel_transform, bessel_transform_raster, BesselParams, NormProfile, TransformField,
};

/// Version tag written into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Attached to a report whose field has more minima than there are targets.
pub const GHOST_CAVEAT: &str = "the field has more local minima than the target count; \
minima produced by overlapping transforms of neighbouring targets need not mark a target, \
so only the deepest target_count minima are reported";

/// Number of targets: the Euler integral of the counting function `h ≥ 0`.
pub fn count_targets(h: &GridFunction) -> i64 {
    euler_integral(h)
}

/// Grid and discretization for [`localize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizeParams {
    /// Raster used for counting and as the output grid of the transform.
    pub grid: GridSpec,
    pub bessel: BesselParams,
    /// Minimum persistence of a reported minimum. `None` uses `4·Δr`, which
    /// absorbs the quadrature noise of the transform.
    pub prominence: Option<f64>,
}

impl LocalizeParams {
    pub fn for_grid(grid: GridSpec) -> Self {
        Self {
            grid,
            bessel: BesselParams::for_grid(&grid),
            prominence: None,
        }
    }

    pub fn prominence(&self) -> f64 {
        self.prominence.unwrap_or(4.0 * self.bessel.dr)
    }
}

/// Echo of the inputs that produced a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub norm: String,
    pub source: String,
    pub grid: GridSpec,
    pub dr: f64,
    pub angles: usize,
    pub r_max: f64,
    pub prominence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub schema_version: u32,
    pub target_count: i64,
    /// Deepest minima, at most `target_count`, sorted by depth.
    pub minima: Vec<Minimum>,
    /// All minima of the field above the prominence threshold.
    pub minima_found: usize,
    /// Fewer minima than targets.
    pub shortage: bool,
    /// More minima than targets.
    pub ghost: bool,
    /// Minima count differs from the target count.
    pub mismatch: bool,
    pub caveat: Option<String>,
    pub parameters: ReportParams,
}

fn report(
    target_count: i64,
    field: &TransformField,
    source: &str,
    params: &LocalizeParams,
) -> Result<LocalizationReport> {
    let prominence = params.prominence();
    let n = target_count.max(0) as usize;
    let search = find_local_minima_with(field, n, prominence)?;
    let ghost = search.found > n;
    Ok(LocalizationReport {
        schema_version: SCHEMA_VERSION,
        target_count,
        minima: search.minima,
        minima_found: search.found,
        shortage: search.shortage,
        ghost,
        mismatch: search.found != n,
        caveat: ghost.then(|| GHOST_CAVEAT.to_string()),
        parameters: ReportParams {
            norm: field.meta.norm.clone(),
            source: source.to_string(),
            grid: field.spec,
            dr: field.meta.dr,
            angles: field.meta.angles,
            r_max: field.meta.r_max,
            prominence,
        },
    })
}

/// Rasterizes the scene, counts targets, transforms the exact scene on the
/// same grid and reports the `target_count` deepest minima.
pub fn localize(
    scene: &Scene,
    norm: &NormProfile,
    params: &LocalizeParams,
) -> Result<(LocalizationReport, TransformField)> {
    let h = rasterize(scene, &params.grid)?;
    let count = count_targets(&h);
    let field = bessel_transform(scene, norm, &params.grid, &params.bessel)?;
    Ok((report(count, &field, "scene", params)?, field))
}

/// [`localize`] for raster input; the transform samples `h` by nearest cell
/// and is evaluated on `params.grid`.
pub fn localize_raster(
    h: &GridFunction,
    norm: &NormProfile,
    params: &LocalizeParams,
) -> Result<(LocalizationReport, TransformField)> {
    let count = count_targets(h);
    let field = bessel_transform_raster(h, norm, &params.grid, &params.bessel)?;
    Ok((report(count, &field, "raster", params)?, field))
}
