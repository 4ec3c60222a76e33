//! Scene JSON, field and raster files, and report serialization.

mod field;
mod pgm;
mod scene;

pub use field::{
    field_to_csv, field_to_json, grid_to_csv, parse_field_json, parse_grid_csv, parse_raster,
    parse_raster_csv, parse_raster_json, raster_to_csv, raster_to_json, FieldFile, RasterFile,
};
pub use pgm::{decode_pgm, encode_pgm};
pub use scene::{parse_scene, scene_to_json, DiskSpec, PolygonSpec, SceneSpec, DEFAULT_DISK_NGON};

use serde::{de::DeserializeOwned, Serialize};

use crate::error::{Error, Result};

/// Pretty JSON for reports.
pub fn report_to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn parse_report<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}
