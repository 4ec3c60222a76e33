use std::f64::consts::TAU;

use crate::error::{invalid_param, Result};
use crate::euler::IntervalProfile;
use crate::geometry::{Direction, Integrand, Point};

/// Numeric Euler-Fourier transform in direction `dir`.
///
/// The level lines `ξ·p = r` are taken over the projection of the support
/// box onto ξ (the transform is read translation-invariantly), sampled every
/// `Δr / 4` along the line, and integrated with the midpoint rule in r.
pub fn fourier_transform<I: Integrand + ?Sized>(h: &I, dir: Direction, dr: f64) -> Result<f64> {
    fourier_transform_with(h, dir, dr, 0.25 * dr)
}

/// As [`fourier_transform`] with an explicit along-line sample step.
pub fn fourier_transform_with<I: Integrand + ?Sized>(
    h: &I,
    dir: Direction,
    dr: f64,
    step: f64,
) -> Result<f64> {
    if !(dr.is_finite() && dr > 0.0) {
        return Err(invalid_param("dr", format!("must be positive, got {dr}")));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(invalid_param("step", format!("must be positive, got {step}")));
    }
    let Some(support) = h.support() else {
        return Ok(0.0);
    };
    let xi = dir.xi();
    let perp = Point::new(-xi.y, xi.x);
    let corners = support.corners();
    let span = |v: Point| {
        corners
            .iter()
            .map(|&c| v.dot(c))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)))
    };
    let (r_lo, r_hi) = span(xi);
    let (t_lo, t_hi) = span(perp);
    let lines = ((r_hi - r_lo) / dr).ceil() as usize + 1;
    let samples = ((t_hi - t_lo) / step).ceil() as usize + 1;

    let mut positions = Vec::with_capacity(samples);
    for k in 0..samples {
        positions.push(t_lo + k as f64 * step);
    }
    let mut total: i64 = 0;
    let mut values = Vec::with_capacity(samples);
    for j in 0..lines {
        let r = r_lo + (j as f64 + 0.5) * dr;
        values.clear();
        values.extend(positions.iter().map(|&t| h.eval(xi * r + perp * t)));
        let profile = IntervalProfile::new(positions.clone(), values.clone())?;
        total += crate::euler::segment_euler_integral(&profile);
    }
    Ok(total as f64 * dr)
}

/// Fourier transform at `n` equally spaced directions `θ_k = 2πk/n`.
pub fn fourier_profile<I: Integrand + ?Sized>(
    h: &I,
    n: usize,
    dr: f64,
) -> Result<Vec<(Direction, f64)>> {
    (0..n)
        .map(|k| {
            let dir = Direction::new(TAU * k as f64 / n as f64);
            fourier_transform(h, dir, dr).map(|v| (dir, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Polygon, Scene};
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn unit_square_width() {
        let sq = Scene::from_polygons([Polygon::rectangle(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap()]);
        let dr = 0.01;
        let v = fourier_transform(&sq, Direction::new(0.0), dr).unwrap();
        assert!((v - 1.0).abs() <= dr, "{v}");
        let diag = fourier_transform(&sq, Direction::new(FRAC_PI_4), dr).unwrap();
        assert!((diag - SQRT_2).abs() <= 2.0 * dr, "{diag}");
    }

    #[test]
    fn empty_scene() {
        assert_eq!(fourier_transform(&Scene::empty(), Direction::new(0.3), 0.1).unwrap(), 0.0);
        let prof = fourier_profile(&Scene::empty(), 8, 0.1).unwrap();
        assert!(prof.iter().all(|(_, v)| *v == 0.0));
    }

    #[test]
    fn disk_width_is_constant() {
        let r = 0.4;
        let disk = Scene::from_polygons([Polygon::regular(Point::new(2.0, -1.0), r, 128, 0.0).unwrap()]);
        for (_, v) in fourier_profile(&disk, 12, 0.005).unwrap() {
            assert!((v - 2.0 * r).abs() <= 0.01, "{v}");
        }
    }

    #[test]
    fn translation_invariant() {
        let sq = Polygon::square(Point::new(0.0, 0.0), 1.0, 0.3).unwrap();
        let a = Scene::from_polygons([sq.clone()]);
        let b = Scene::from_polygons([sq.translate(Point::new(-7.0, 3.0))]);
        let dir = Direction::new(1.1);
        let (va, vb) = (
            fourier_transform(&a, dir, 0.01).unwrap(),
            fourier_transform(&b, dir, 0.01).unwrap(),
        );
        assert!((va - vb).abs() <= 0.02);
    }

    #[test]
    fn bad_step() {
        assert!(fourier_transform(&Scene::empty(), Direction::new(0.0), -1.0).is_err());
    }
}
