//! Target counting, minima detection, localization and shape discrimination.

mod discriminate;
mod localize;
mod minima;

pub use discriminate::{
    discriminate, DiscriminationParams, DiscriminationReport, NormMinima, NormResponse, Verdict,
};
pub use localize::{
    count_targets, localize, localize_raster, LocalizationReport, LocalizeParams, ReportParams,
    GHOST_CAVEAT, SCHEMA_VERSION,
};
pub use minima::{find_local_minima, find_local_minima_with, MinimaSearch, Minimum};
