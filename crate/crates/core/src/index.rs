//! Closed-form Bessel and Fourier transforms of polygonal scenes.
//!
//! In the plane, `B1_A(x) = ∫_{∂A} d_x ⌊dχ⌋`, and on the one-dimensional
//! boundary loop that integral is the sum of local maxima of `d_x` minus the
//! sum of its local minima. The Fourier transform is the same sum for the
//! height `ξ·p`. Scenes are handled item by item, by linearity.
//!
//! These formulas hold for the Euclidean norm only; non-Euclidean Bessel
//! transforms must use the numeric path in [`crate::transforms`].

use crate::geometry::{
    distance_critical_points, height_critical_points, CriticalPoint, Direction, Point, Scene,
    Side,
};

fn floor_sum(cps: &[CriticalPoint]) -> f64 {
    cps.iter().map(|c| c.floor_sign() * c.value).sum()
}

/// `B1_h(x)` for the Euclidean norm.
pub fn bessel_index(scene: &Scene, x: Point) -> f64 {
    scene
        .items()
        .iter()
        .map(|it| it.weight as f64 * floor_sum(&distance_critical_points(&it.polygon, x)))
        .sum()
}

/// The two boundary-side integrals `(∫_{∂⁺} d_x ⌊dχ⌋, ∫_{∂⁻} d_x ⌈dχ⌉)`,
/// each evaluated at its critical points. Their difference is
/// [`bessel_index`].
pub fn bessel_index_split(scene: &Scene, x: Point) -> (f64, f64) {
    let mut plus = 0.0;
    let mut minus = 0.0;
    for it in scene.items() {
        let w = it.weight as f64;
        for c in distance_critical_points(&it.polygon, x) {
            match c.side {
                Side::Plus => plus += w * c.floor_sign() * c.value,
                Side::Minus => minus += w * c.ceil_sign() * c.value,
            }
        }
    }
    (plus, minus)
}

/// `F1_h(ξ)`: per polygon, the sum of local maxima of `ξ·p` on the boundary
/// minus the sum of local minima, plateaus counted once.
pub fn fourier_index(scene: &Scene, dir: Direction) -> f64 {
    scene
        .items()
        .iter()
        .map(|it| it.weight as f64 * floor_sum(&height_critical_points(&it.polygon, dir)))
        .sum()
}

/// Euclidean Bessel transform of the indicator of the round ball `B_R(p)`:
/// `2·min(‖x − p‖, R)`.
pub fn ball_bessel_closed_form(p: Point, radius: f64, x: Point) -> f64 {
    2.0 * x.dist(p).min(radius)
}
