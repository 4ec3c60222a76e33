use std::f64::consts::TAU;

use chitransform::geometry::{distance_critical_points, height_critical_points, rasterize, scene_eval};
use chitransform::*;
use proptest::prelude::*;

fn convex_strategy() -> impl Strategy<Value = Polygon> {
    (-1.0f64..1.0, -1.0f64..1.0, 0.2f64..1.0, prop::collection::vec(0.0f64..TAU, 3..10))
        .prop_filter_map("degenerate", |(x, y, r, mut a)| {
            a.sort_by(f64::total_cmp);
            a.dedup_by(|p, q| (*p - *q).abs() < 0.05);
            let c = Point::new(x, y);
            let p = Polygon::new(a.iter().map(|&t| c + Point::from_polar(r, t)).collect()).ok()?;
            (p.area() > 1e-2).then_some(p)
        })
}

fn count(cps: &[CriticalPoint], kind: CriticalKind) -> usize {
    cps.iter().filter(|c| c.kind == kind).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn convex_height_has_one_min_and_one_max(poly in convex_strategy(), angle in 0.0f64..TAU) {
        let cps = height_critical_points(&poly, Direction::new(angle));
        prop_assert_eq!(count(&cps, CriticalKind::LocalMin), 1);
        prop_assert_eq!(count(&cps, CriticalKind::LocalMax), 1);
        prop_assert_eq!(count(&cps, CriticalKind::NonExtremalPlateau), 0);
    }

    #[test]
    fn convex_interior_feet_are_minima(poly in convex_strategy(), s in 0.05f64..0.95) {
        let vs = poly.vertices();
        let mean = vs.iter().fold(Point::new(0.0, 0.0), |a, &v| a + v) * (1.0 / vs.len() as f64);
        let x = mean + (vs[0] - mean) * s;
        prop_assume!(poly.contains(x) && poly.boundary_distance(x) > 1e-6);
        for c in distance_critical_points(&poly, x) {
            prop_assert!(c.value >= 0.0);
            let at_vertex = vs.iter().any(|&v| v.dist(c.position) <= 1e-12);
            if c.kind == CriticalKind::LocalMax {
                prop_assert!(at_vertex, "max away from vertices at {:?}", c.position);
            }
            if !at_vertex {
                prop_assert_eq!(c.kind, CriticalKind::LocalMin);
            }
        }
    }

    #[test]
    fn rasterize_agrees_with_scene_eval(a in convex_strategy(), b in convex_strategy(), w in 1u32..4) {
        let mut scene = Scene::from_polygons([a]);
        scene.push(b, w).unwrap();
        let spec = GridSpec::centered(90, 90, Point::new(0.0, 0.0), 0.05).unwrap();
        let h = rasterize(&scene, &spec).unwrap();
        for row in 0..spec.height {
            for col in 0..spec.width {
                prop_assert_eq!(h.get(col, row), scene_eval(&scene, spec.cell_center(col, row)));
            }
        }
    }

    #[test]
    fn distance_values_are_nonnegative(poly in convex_strategy(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        for c in distance_critical_points(&poly, Point::new(x, y)) {
            prop_assert!(c.value >= 0.0);
            prop_assert_eq!(c.morse_index() == Some(1), c.kind == CriticalKind::LocalMax);
        }
    }
}

#[test]
fn invalid_polygons_are_rejected() {
    let bowtie = vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
    ];
    assert!(Polygon::new(bowtie).is_err());
    assert!(Polygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).is_err());
    let flat = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
    assert!(Polygon::new(flat).is_err());
    // Clockwise input is stored counter-clockwise.
    let cw = Polygon::new(vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 0.0)]).unwrap();
    assert!(cw.area() > 0.0);
}
