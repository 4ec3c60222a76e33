use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon, Scene, SceneItem};

/// Default number of sides used to approximate a disk.
pub const DEFAULT_DISK_NGON: usize = 128;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonSpec {
    pub vertices: Vec<Point>,
    #[serde(default = "one")]
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskSpec {
    pub center: Point,
    pub radius: f64,
    #[serde(default = "one")]
    pub weight: u32,
    #[serde(default = "default_ngon")]
    pub ngon: usize,
}

/// On-disk scene description. Disks are expanded to regular polygons when
/// the scene is built.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    #[serde(default)]
    pub polygons: Vec<PolygonSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub disks: Vec<DiskSpec>,
}

fn one() -> u32 {
    1
}

fn default_ngon() -> usize {
    DEFAULT_DISK_NGON
}

fn at(location: String, e: Error) -> Error {
    let message = match e {
        Error::InvalidPolygon(m) | Error::Parse { message: m, .. } => m,
        Error::InvalidParameter { name, reason } => format!("{name}: {reason}"),
        other => other.to_string(),
    };
    Error::Parse { location, message }
}

impl SceneSpec {
    pub fn build(&self) -> Result<Scene> {
        let mut items = Vec::with_capacity(self.polygons.len() + self.disks.len());
        for (i, p) in self.polygons.iter().enumerate() {
            if p.weight == 0 {
                return Err(at(format!("polygons[{i}].weight"), Error::InvalidPolygon("must be at least 1".into())));
            }
            let polygon = Polygon::new(p.vertices.clone())
                .map_err(|e| at(format!("polygons[{i}].vertices"), e))?;
            items.push(SceneItem {
                polygon,
                weight: p.weight,
            });
        }
        for (i, d) in self.disks.iter().enumerate() {
            if d.weight == 0 {
                return Err(at(format!("disks[{i}].weight"), Error::InvalidPolygon("must be at least 1".into())));
            }
            if !(d.radius.is_finite() && d.radius > 0.0) {
                return Err(at(
                    format!("disks[{i}].radius"),
                    Error::InvalidPolygon(format!("must be positive, got {}", d.radius)),
                ));
            }
            if d.ngon < 3 {
                return Err(at(
                    format!("disks[{i}].ngon"),
                    Error::InvalidPolygon(format!("need at least 3 sides, got {}", d.ngon)),
                ));
            }
            let polygon = Polygon::regular(d.center, d.radius, d.ngon, 0.0)
                .map_err(|e| at(format!("disks[{i}]"), e))?;
            items.push(SceneItem {
                polygon,
                weight: d.weight,
            });
        }
        Scene::new(items)
    }

    /// The polygon-only description of a scene.
    pub fn from_scene(scene: &Scene) -> Self {
        Self {
            polygons: scene
                .items()
                .iter()
                .map(|it| PolygonSpec {
                    vertices: it.polygon.vertices().to_vec(),
                    weight: it.weight,
                })
                .collect(),
            disks: Vec::new(),
        }
    }
}

/// Parses scene JSON. Syntax errors report `line:column`; semantic errors
/// report the offending field path.
pub fn parse_scene(text: &str) -> Result<Scene> {
    let spec: SceneSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    spec.build()
}

pub fn scene_to_json(scene: &Scene) -> String {
    serde_json::to_string_pretty(&SceneSpec::from_scene(scene)).expect("scene serializes")
}
