use std::f64::consts::TAU;

use chitransform::io::{
    decode_pgm, encode_pgm, field_to_csv, field_to_json, parse_field_json, parse_grid_csv,
    parse_raster, parse_report, parse_scene, raster_to_csv, raster_to_json, report_to_json,
    scene_to_json,
};
use chitransform::pipeline::{
    discriminate, localize, DiscriminationReport, LocalizationReport, LocalizeParams,
};
use chitransform::transforms::FieldMeta;
use chitransform::*;
use proptest::prelude::*;

fn two_targets() -> Scene {
    Scene::from_polygons([
        Polygon::regular(Point::new(-0.6, 0.1), 0.3, 64, 0.0).unwrap(),
        Polygon::square(Point::new(0.6, -0.1), 0.5, 0.3).unwrap(),
    ])
}

fn params() -> LocalizeParams {
    let grid = GridSpec::centered(40, 28, Point::new(0.0, 0.0), 0.05).unwrap();
    let mut p = LocalizeParams::for_grid(grid);
    p.bessel = BesselParams::new(0.025, 180);
    p
}

#[test]
fn localization_report_round_trips() {
    let (report, _) = localize(&two_targets(), &NormProfile::l2(), &params()).unwrap();
    assert_eq!(report.target_count, 2);
    let text = report_to_json(&report);
    let back: LocalizationReport = parse_report(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(report_to_json(&back), text);
    let bounds = report.parameters.grid.bounds();
    assert!(report.minima.iter().all(|m| bounds.contains(m.position)));
    assert!(report.minima.windows(2).all(|w| w[0].depth <= w[1].depth));
}

#[test]
fn reported_minima_are_local_minima_of_the_field() {
    let (report, field) = localize(&two_targets(), &NormProfile::linf(), &params()).unwrap();
    let parsed = parse_field_json(&field_to_json(&field)).unwrap();
    let (w, h) = (parsed.spec.width, parsed.spec.height);
    for m in &report.minima {
        let [c, r] = m.cell;
        let v = parsed.get(c, r);
        assert_eq!(v, m.depth);
        for nr in r.saturating_sub(1)..=(r + 1).min(h - 1) {
            for nc in c.saturating_sub(1)..=(c + 1).min(w - 1) {
                assert!(parsed.get(nc, nr) >= v, "cell ({c}, {r}) has a lower neighbor");
            }
        }
    }
}

#[test]
fn discrimination_report_round_trips() {
    let norms = [NormProfile::l2(), NormProfile::linf()];
    let family = SvaFamily::rotated_linf(4).unwrap();
    let (report, fields) = discriminate(&two_targets(), &norms, Some(&family), &params()).unwrap();
    assert_eq!(fields.len(), 3);
    let text = report_to_json(&report);
    let back: DiscriminationReport = parse_report(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let (r, f) = localize(&two_targets(), &NormProfile::l1(), &params()).unwrap();
            (report_to_json(&r), field_to_csv(&f))
        })
    };
    let one = run(1);
    assert_eq!(run(1), one);
    assert_eq!(run(4), one);
}

#[test]
fn malformed_reports_are_rejected() {
    assert!(parse_report::<LocalizationReport>("{\"schema_version\": 1}").is_err());
    assert!(matches!(parse_report::<LocalizationReport>("[1,"), Err(Error::Parse { .. })));
}

fn grid_strategy() -> impl Strategy<Value = GridSpec> {
    (1usize..12, 1usize..12, -10.0f64..10.0, -10.0f64..10.0, 0.001f64..2.0)
        .prop_map(|(w, h, x, y, s)| GridSpec::new(w, h, Point::new(x, y), s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fields_round_trip_exactly(spec in grid_strategy(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<f64> = (0..spec.len()).map(|_| rng.gen_range(-1e3..1e3) * rng.gen::<f64>()).collect();
        let field = TransformField {
            spec,
            values,
            meta: FieldMeta { norm: "linf-rot:15".into(), dr: 0.01, angles: 360, r_max: 3.5 },
        };
        prop_assert_eq!(&parse_field_json(&field_to_json(&field)).unwrap(), &field);
        let (s, v) = parse_grid_csv::<f64>(&field_to_csv(&field)).unwrap();
        prop_assert_eq!(s, spec);
        prop_assert_eq!(&v, &field.values);
        // PGM keeps the grid and the declared precision.
        let (s, v) = decode_pgm(&encode_pgm(&spec, &field.values)).unwrap();
        prop_assert_eq!(s, spec);
        let lo = field.values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = field.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let step = (hi - lo) / 65535.0;
        for (a, b) in v.iter().zip(&field.values) {
            prop_assert!((a - b).abs() <= 0.5 * step + 1e-9 * (1.0 + hi.abs().max(lo.abs())));
        }
    }

    #[test]
    fn rasters_round_trip_exactly(w in 3usize..10, h in 3usize..10, vals in prop::collection::vec(0i64..5, 64)) {
        let spec = GridSpec::new(w, h, Point::new(-1.0, 0.5), 0.25).unwrap();
        let g = GridFunction::from_fn(spec, |c, r| {
            if c == 0 || r == 0 || c == w - 1 || r == h - 1 { 0 } else { vals[(r * w + c) % vals.len()] }
        }).unwrap();
        prop_assert_eq!(&parse_raster(&raster_to_csv(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_raster(&raster_to_json(&g)).unwrap(), &g);
    }

    #[test]
    fn scenes_round_trip_exactly(n in 3usize..12, r in 0.01f64..5.0, x in -5.0f64..5.0, y in -5.0f64..5.0, rot in 0.0f64..TAU, w in 1u32..9) {
        let mut scene = Scene::empty();
        scene.push(Polygon::regular(Point::new(x, y), r, n, rot).unwrap(), w).unwrap();
        scene.push(Polygon::square(Point::new(y, x), r, -rot).unwrap(), 1).unwrap();
        prop_assert_eq!(parse_scene(&scene_to_json(&scene)).unwrap(), scene);
    }
}
