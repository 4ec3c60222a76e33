use std::f64::consts::{PI, TAU};

use chitransform::index::{bessel_index, bessel_index_split, fourier_index};
use chitransform::*;
use proptest::prelude::*;

fn convex_strategy() -> impl Strategy<Value = Polygon> {
    (-1.0f64..1.0, -1.0f64..1.0, 0.1f64..1.0, prop::collection::vec(0.0f64..TAU, 3..12))
        .prop_filter_map("degenerate", |(x, y, r, mut a)| {
            a.sort_by(f64::total_cmp);
            a.dedup_by(|p, q| (*p - *q).abs() < 0.02);
            let c = Point::new(x, y);
            let p = Polygon::new(a.iter().map(|&t| c + Point::from_polar(r, t)).collect()).ok()?;
            (p.area() > 1e-3).then_some(p)
        })
}

fn star_strategy() -> impl Strategy<Value = Polygon> {
    prop::collection::vec(0.3f64..1.0, 5..14).prop_filter_map("degenerate", |radii| {
        let n = radii.len();
        let pts = radii
            .iter()
            .enumerate()
            .map(|(i, &r)| Point::from_polar(r, TAU * i as f64 / n as f64))
            .collect();
        Polygon::new(pts).ok()
    })
}

fn point() -> impl Strategy<Value = Point> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn split_recombines(poly in star_strategy(), other in convex_strategy(), w in 1u32..4, x in point()) {
        let mut scene = Scene::from_polygons([poly]);
        scene.push(other, w).unwrap();
        let (plus, minus) = bessel_index_split(&scene, x);
        let total = bessel_index(&scene, x);
        prop_assert!((plus - minus - total).abs() <= 1e-9 * (1.0 + total.abs()), "{} - {} vs {}", plus, minus, total);
    }

    #[test]
    fn convex_interior_has_nothing_on_the_minus_side(poly in convex_strategy(), s in 0.0f64..1.0, t in 0.0f64..1.0) {
        // Somewhere between the vertex mean and one vertex.
        let vs = poly.vertices();
        let c = vs.iter().fold(Point::new(0.0, 0.0), |a, &v| a + v) * (1.0 / vs.len() as f64);
        let v = vs[(s * vs.len() as f64) as usize % vs.len()];
        let x = c + (v - c) * (0.9 * t);
        prop_assume!(poly.contains(x) && poly.boundary_distance(x) > 1e-6);
        let scene = Scene::from_polygons([poly]);
        let (plus, minus) = bessel_index_split(&scene, x);
        prop_assert_eq!(minus, 0.0);
        prop_assert!((plus - bessel_index(&scene, x)).abs() <= 1e-12);
    }

    #[test]
    fn fourier_of_convex_is_vertex_extent(poly in convex_strategy(), angle in 0.0f64..TAU) {
        let dir = Direction::new(angle);
        let h: Vec<f64> = poly.vertices().iter().map(|&v| dir.height(v)).collect();
        let extent = h.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - h.iter().copied().fold(f64::INFINITY, f64::min);
        let f = fourier_index(&Scene::from_polygons([poly]), dir);
        prop_assert!((f - extent).abs() <= 1e-12 * (1.0 + extent), "{} vs {}", f, extent);
    }

    #[test]
    fn index_is_linear_in_weights(poly in star_strategy(), w in 1u32..6, x in point()) {
        let one = Scene::from_polygons([poly.clone()]);
        let mut many = Scene::empty();
        many.push(poly, w).unwrap();
        let a = bessel_index(&one, x) * w as f64;
        let b = bessel_index(&many, x);
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
    }
}

#[test]
fn ball_index_is_monotone_along_rays() {
    let n = 128;
    let r = 0.7;
    let c = Point::new(0.2, -0.1);
    let ngon = Scene::from_polygons([Polygon::regular(c, r, n, 0.0).unwrap()]);
    // Each edge adds a ripple of depth R(1 - cos(π/n)) to the distance, so
    // the polygon departs from the round ball by at most n ripples.
    let slack = n as f64 * r * (1.0 - (PI / n as f64).cos());
    assert!((bessel_index(&ngon, c) - slack).abs() <= 1e-12);
    for k in 0..16 {
        let theta = k as f64 * TAU / 16.0 + 0.013;
        let ray: Vec<f64> = (0..=80)
            .map(|i| bessel_index(&ngon, c + Point::from_polar(i as f64 * 0.02, theta)))
            .collect();
        let inradius = r * (PI / n as f64).cos();
        for (i, w) in ray.windows(2).enumerate() {
            let t = (i + 1) as f64 * 0.02;
            if t < inradius {
                assert!(w[1] > w[0], "theta {theta}: step {i} {} -> {}", w[0], w[1]);
            }
        }
        for (i, v) in ray.iter().enumerate() {
            let t = i as f64 * 0.02;
            assert!((v - 2.0 * t.min(r)).abs() <= slack + 1e-12, "t {t}: {v}");
        }
        let outside = &ray[40..];
        assert!(outside.iter().all(|v| (v - outside[0]).abs() <= slack));
    }
}
