//! Exact polygonal scenes and boundary critical points.

mod critical;
mod point;
mod polygon;
mod scene;

pub use critical::{
    distance_critical_points, height_critical_points, CriticalKind, CriticalPoint, Direction,
    Side,
};
pub use point::{BBox, Point};
pub use polygon::Polygon;
pub use scene::{rasterize, scene_eval, Integrand, Scene, SceneItem};
