use super::point::{BBox, Point};
use super::polygon::Polygon;
use crate::error::{Error, Result};
use crate::euler::{GridFunction, GridSpec};

/// Anything that can be evaluated pointwise as an integer-valued
/// constructible function with bounded support.
pub trait Integrand: Sync {
    fn eval(&self, p: Point) -> i64;

    /// Closed box containing the support, or `None` when the function is
    /// identically zero.
    fn support(&self) -> Option<BBox>;

    /// Distances `(near, far)` from `x` such that the function is constant on
    /// the open ball of radius `near` and zero outside the closed ball of
    /// radius `far`. The default uses the support box.
    fn radial_bounds(&self, x: Point) -> Option<(f64, f64)> {
        self.support().map(|b| (b.dist_to(x), b.max_dist_to(x)))
    }

    /// The polygonal form of the function, when it has one.
    fn as_scene(&self) -> Option<&Scene> {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneItem {
    pub polygon: Polygon,
    pub weight: u32,
}

/// Weighted polygons; `h = Σ weight_i · 1_{A_i}` with each `A_i` closed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scene {
    items: Vec<SceneItem>,
    bbox: Option<BBox>,
}

impl Scene {
    pub fn new(items: Vec<SceneItem>) -> Result<Self> {
        if let Some(i) = items.iter().position(|it| it.weight == 0) {
            return Err(Error::InvalidPolygon(format!(
                "scene item {i} has weight 0; weights must be at least 1"
            )));
        }
        let bbox = items
            .iter()
            .map(|it| *it.polygon.bbox())
            .reduce(|a, b| a.union(&b));
        Ok(Self { items, bbox })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// A scene of unit-weight polygons.
    pub fn from_polygons(polys: impl IntoIterator<Item = Polygon>) -> Self {
        Self::new(
            polys
                .into_iter()
                .map(|polygon| SceneItem { polygon, weight: 1 })
                .collect(),
        )
        .expect("unit weights are valid")
    }

    pub fn push(&mut self, polygon: Polygon, weight: u32) -> Result<()> {
        if weight == 0 {
            return Err(Error::InvalidPolygon("weight must be at least 1".into()));
        }
        let b = *polygon.bbox();
        self.bbox = Some(self.bbox.map_or(b, |s| s.union(&b)));
        self.items.push(SceneItem { polygon, weight });
        Ok(())
    }

    pub fn items(&self) -> &[SceneItem] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn bbox(&self) -> Option<BBox> {
        self.bbox
    }

    pub fn total_weight(&self) -> u64 {
        self.items.iter().map(|it| it.weight as u64).sum()
    }

    pub fn translate(&self, v: Point) -> Scene {
        Scene::new(
            self.items
                .iter()
                .map(|it| SceneItem {
                    polygon: it.polygon.translate(v),
                    weight: it.weight,
                })
                .collect(),
        )
        .expect("translation preserves validity")
    }

    pub fn rotate(&self, angle: f64) -> Scene {
        Scene::new(
            self.items
                .iter()
                .map(|it| SceneItem {
                    polygon: it.polygon.rotate(angle),
                    weight: it.weight,
                })
                .collect(),
        )
        .expect("rotation preserves validity")
    }

    /// The single-item scene holding item `i`.
    pub fn item_scene(&self, i: usize) -> Scene {
        Scene::new(vec![self.items[i].clone()]).expect("item is valid")
    }
}

/// `h(x)`: the total weight of polygons whose closed region contains `x`.
#[inline]
pub fn scene_eval(scene: &Scene, x: Point) -> i64 {
    let mut total = 0i64;
    for it in &scene.items {
        if it.polygon.contains(x) {
            total += it.weight as i64;
        }
    }
    total
}

impl Integrand for Scene {
    #[inline]
    fn eval(&self, p: Point) -> i64 {
        match &self.bbox {
            Some(b) if b.contains(p) => scene_eval(self, p),
            _ => 0,
        }
    }

    fn support(&self) -> Option<BBox> {
        self.bbox
    }

    /// Nearest polygon boundary and farthest vertex over all items.
    fn radial_bounds(&self, x: Point) -> Option<(f64, f64)> {
        self.bbox?;
        let mut near = f64::INFINITY;
        let mut far = 0.0f64;
        for it in &self.items {
            near = near.min(it.polygon.boundary_distance(x));
            for &v in it.polygon.vertices() {
                far = far.max(v.dist(x));
            }
        }
        Some((near, far))
    }

    fn as_scene(&self) -> Option<&Scene> {
        Some(self)
    }
}

impl Integrand for GridFunction {
    #[inline]
    fn eval(&self, p: Point) -> i64 {
        self.value_at(p)
    }

    fn support(&self) -> Option<BBox> {
        self.support_bbox()
    }
}

/// Samples the scene at every cell center.
///
/// The scene's bounding box must lie strictly inside the interior cells so
/// that the outer ring of the raster is zero.
pub fn rasterize(scene: &Scene, spec: &GridSpec) -> Result<GridFunction> {
    if let Some(b) = scene.bbox() {
        let s = spec.spacing;
        let inner = BBox::new(
            Point::new(spec.origin.x + s, spec.origin.y + s),
            Point::new(
                spec.origin.x + (spec.width as f64 - 1.0) * s,
                spec.origin.y + (spec.height as f64 - 1.0) * s,
            ),
        );
        let fits = b.min.x > inner.min.x
            && b.min.y > inner.min.y
            && b.max.x < inner.max.x
            && b.max.y < inner.max.y;
        if !fits {
            return Err(Error::GridTooSmall {
                support: b.to_string(),
                grid: spec.bounds().to_string(),
            });
        }
    }
    GridFunction::from_fn(*spec, |col, row| scene.eval(spec.cell_center(col, row)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::euler_integral;

    fn sq(min: (f64, f64), max: (f64, f64)) -> Polygon {
        Polygon::rectangle(Point::new(min.0, min.1), Point::new(max.0, max.1)).unwrap()
    }

    #[test]
    fn eval_examples() {
        let scene = Scene::from_polygons([sq((0.0, 0.0), (1.0, 1.0)), sq((1.0, 0.0), (2.0, 1.0))]);
        assert_eq!(scene_eval(&scene, Point::new(0.5, 0.5)), 1);
        assert_eq!(scene_eval(&scene, Point::new(3.0, 0.5)), 0);
        // Shared edge, closed convention.
        assert_eq!(scene_eval(&scene, Point::new(1.0, 0.5)), 2);
    }

    #[test]
    fn zero_weight_rejected() {
        let item = SceneItem {
            polygon: sq((0.0, 0.0), (1.0, 1.0)),
            weight: 0,
        };
        assert!(Scene::new(vec![item]).is_err());
    }

    #[test]
    fn rasterize_examples() {
        let spec = GridSpec::new(20, 20, Point::new(0.0, 0.0), 0.1).unwrap();
        let empty = rasterize(&Scene::empty(), &spec).unwrap();
        assert!(empty.values().iter().all(|&v| v == 0));

        let mut scene = Scene::empty();
        scene.push(sq((0.5, 0.5), (1.5, 1.5)), 2).unwrap();
        let g = rasterize(&scene, &spec).unwrap();
        assert_eq!(g.get(10, 10), 2);
        assert_eq!(g.max(), 2);
        assert_eq!(g.get(2, 2), 0);

        let two = Scene::from_polygons([
            Polygon::regular(Point::new(0.6, 1.0), 0.3, 32, 0.0).unwrap(),
            Polygon::regular(Point::new(1.4, 1.0), 0.3, 5, 0.3).unwrap(),
        ]);
        assert_eq!(euler_integral(&rasterize(&two, &spec).unwrap()), 2);
    }

    #[test]
    fn rasterize_needs_margin() {
        let spec = GridSpec::new(10, 10, Point::new(0.0, 0.0), 0.1).unwrap();
        let scene = Scene::from_polygons([sq((0.05, 0.2), (0.5, 0.5))]);
        assert!(matches!(rasterize(&scene, &spec), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn raster_is_consistent_with_eval() {
        let spec = GridSpec::new(32, 24, Point::new(-1.6, -1.2), 0.1).unwrap();
        let scene = Scene::from_polygons([
            Polygon::regular(Point::new(-0.4, 0.0), 0.6, 7, 0.1).unwrap(),
            Polygon::square(Point::new(0.5, 0.1), 0.8, 0.4).unwrap(),
        ]);
        let g = rasterize(&scene, &spec).unwrap();
        for row in 0..spec.height {
            for col in 0..spec.width {
                assert_eq!(g.get(col, row), scene_eval(&scene, spec.cell_center(col, row)));
            }
        }
    }
}
