//! One-dimensional Euler integrals on closed contours and segments.
//!
//! Every isospectral contour in the plane is a topological circle, so a
//! proper closed subset of it is a disjoint union of arcs (χ = arc count) and
//! the full circle has χ = 0. Level lines clipped to a bounded region are
//! segments, whose closed subsets are unions of segments and points (χ = 1
//! each).

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Samples of a function on a closed contour, in angular order.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularProfile<T> {
    angles: Vec<f64>,
    values: Vec<T>,
}

impl<T> CircularProfile<T> {
    pub fn new(angles: Vec<f64>, values: Vec<T>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidProfile(format!(
                "a circular profile needs at least 3 samples, got {}",
                values.len()
            )));
        }
        if angles.len() != values.len() {
            return Err(Error::InvalidProfile(format!(
                "{} angles for {} samples",
                angles.len(),
                values.len()
            )));
        }
        if angles.iter().any(|a| !(0.0..TAU).contains(a)) {
            return Err(Error::InvalidProfile("angles must lie in [0, 2π)".into()));
        }
        if angles.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidProfile(
                "angles must be strictly increasing".into(),
            ));
        }
        Ok(Self { angles, values })
    }

    /// Samples at `θ_k = 2πk/m`.
    pub fn uniform(values: Vec<T>) -> Result<Self> {
        let m = values.len();
        let angles = (0..m).map(|k| TAU * k as f64 / m as f64).collect();
        Self::new(angles, values)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Samples of a function along a segment, ordered by arc-length position.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalProfile<T> {
    positions: Vec<f64>,
    values: Vec<T>,
}

impl<T> IntervalProfile<T> {
    pub fn new(positions: Vec<f64>, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidProfile("empty interval profile".into()));
        }
        if positions.len() != values.len() {
            return Err(Error::InvalidProfile(format!(
                "{} positions for {} samples",
                positions.len(),
                values.len()
            )));
        }
        if positions.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidProfile(
                "positions must be strictly increasing".into(),
            ));
        }
        Ok(Self { positions, values })
    }

    /// Samples at unit spacing starting from 0.
    pub fn uniform(values: Vec<T>) -> Result<Self> {
        let positions = (0..values.len()).map(|k| k as f64).collect();
        Self::new(positions, values)
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Total cyclic ascent `Σ_k max(0, v[k] − v[k−1])`, indices mod m.
///
/// For an integer profile this is `Σ_s` (number of maximal cyclic runs with
/// value ≥ s), with full-circle levels contributing nothing, because every
/// run at level s starts at exactly one upward crossing of s.
#[inline]
pub fn cyclic_ascent(values: &[i64]) -> i64 {
    let Some(&last) = values.last() else {
        return 0;
    };
    let mut prev = last;
    let mut total = 0;
    for &v in values {
        if v > prev {
            total += v - prev;
        }
        prev = v;
    }
    total
}

/// Ascent of a segment profile measured from an implicit zero before the
/// first sample.
#[inline]
fn open_ascent(values: impl Iterator<Item = i64>) -> i64 {
    let mut prev = 0;
    let mut total = 0;
    for v in values {
        if v > prev {
            total += v - prev;
        }
        prev = v;
    }
    total
}

/// Euler integral of an integer profile over a closed contour.
///
/// Equals `Σ_{s≥1} A_s` where `A_s` counts the maximal cyclic runs with value
/// ≥ s, except that a level satisfied by every sample contributes 0. The
/// result is invariant under adding a constant, so profiles with negative
/// values may be passed as-is.
pub fn contour_euler_integral(p: &CircularProfile<i64>) -> i64 {
    cyclic_ascent(&p.values)
}

/// Euler integral of an integer profile along a segment: the number of runs
/// with value ≥ s summed over s ≥ 1, minus the same count for `≤ −s`.
pub fn segment_euler_integral(p: &IntervalProfile<i64>) -> i64 {
    open_ascent(p.values.iter().map(|&v| v.max(0)))
        - open_ascent(p.values.iter().map(|&v| (-v).max(0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
    /// A plateau whose neighbours lie on opposite sides of it.
    Flat,
}

/// A maximal cyclic run of (nearly) equal samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateauRun {
    pub start: usize,
    pub len: usize,
    pub value: f64,
    pub kind: ExtremumKind,
}

impl PlateauRun {
    /// Indices covered by the run, in cyclic order.
    pub fn indices(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |i| (self.start + i) % m)
    }
}

/// Decomposes a cyclic sequence into maximal plateau runs and classifies each.
///
/// Consecutive samples closer than `tol` belong to the same run. Returns an
/// empty list for a profile that is constant up to `tol` (no critical
/// structure). Every run is reported; non-extremal plateaus carry
/// [`ExtremumKind::Flat`].
pub fn circle_extrema(values: &[f64], tol: f64) -> Vec<PlateauRun> {
    let m = values.len();
    if m == 0 {
        return Vec::new();
    }
    let same = |a: f64, b: f64| (a - b).abs() <= tol;
    // Find a run boundary to start the scan from.
    let Some(first) = (0..m).find(|&k| !same(values[k], values[(k + m - 1) % m])) else {
        return Vec::new();
    };

    let mut starts = Vec::new();
    for i in 0..m {
        let k = (first + i) % m;
        if !same(values[k], values[(k + m - 1) % m]) {
            starts.push(k);
        }
    }

    let mut runs = Vec::with_capacity(starts.len());
    for (i, &start) in starts.iter().enumerate() {
        let next_start = starts[(i + 1) % starts.len()];
        let len = (next_start + m - start - 1) % m + 1;
        let value = values[start];
        let before = values[(start + m - 1) % m];
        let after = values[next_start];
        let kind = if value > before && value > after {
            ExtremumKind::Max
        } else if value < before && value < after {
            ExtremumKind::Min
        } else {
            ExtremumKind::Flat
        };
        runs.push(PlateauRun {
            start,
            len,
            value,
            kind,
        });
    }
    runs
}

/// `∫ h ⌊dχ⌋` over a closed contour: the sum of strict local maxima minus the
/// sum of strict local minima, one term per plateau.
pub fn circle_integral_floor(p: &CircularProfile<f64>) -> f64 {
    let mut total = 0.0;
    for run in circle_extrema(&p.values, 0.0) {
        match run.kind {
            ExtremumKind::Max => total += run.value,
            ExtremumKind::Min => total -= run.value,
            ExtremumKind::Flat => {}
        }
    }
    total
}

/// `∫ h ⌈dχ⌉` over a closed contour. On a one-dimensional manifold this is
/// the negation of [`circle_integral_floor`]; it is evaluated from the
/// `(−1)^μ` index weights directly.
pub fn circle_integral_ceil(p: &CircularProfile<f64>) -> f64 {
    let mut total = 0.0;
    for run in circle_extrema(&p.values, 0.0) {
        match run.kind {
            ExtremumKind::Max => total -= run.value,
            ExtremumKind::Min => total += run.value,
            ExtremumKind::Flat => {}
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: enumerate every threshold and count maximal runs.
    fn arcs_oracle(values: &[i64], cyclic: bool) -> i64 {
        let max = values.iter().copied().max().unwrap_or(0);
        let mut total = 0;
        for s in 1..=max {
            let member: Vec<bool> = values.iter().map(|&v| v >= s).collect();
            let n = member.len();
            if cyclic && member.iter().all(|&b| b) {
                continue;
            }
            let mut runs = 0;
            for k in 0..n {
                let prev = if k == 0 {
                    if cyclic {
                        member[n - 1]
                    } else {
                        false
                    }
                } else {
                    member[k - 1]
                };
                if member[k] && !prev {
                    runs += 1;
                }
            }
            total += runs;
        }
        total
    }

    fn circ(v: Vec<i64>) -> CircularProfile<i64> {
        CircularProfile::uniform(v).unwrap()
    }

    fn seg(v: Vec<i64>) -> IntervalProfile<i64> {
        IntervalProfile::uniform(v).unwrap()
    }

    #[test]
    fn contour_examples() {
        assert_eq!(contour_euler_integral(&circ(vec![1; 12])), 0);
        assert_eq!(contour_euler_integral(&circ(vec![0, 1, 1, 1, 0, 0])), 1);
        let blocks = vec![0, 1, 0, 2];
        assert_eq!(arcs_oracle(&blocks, true), 3);
        assert_eq!(contour_euler_integral(&circ(blocks)), 3);
    }

    #[test]
    fn segment_examples() {
        assert_eq!(segment_euler_integral(&seg(vec![1; 5])), 1);
        assert_eq!(segment_euler_integral(&seg(vec![1, 1, 0, 0, 1])), 2);
        let runs = vec![1, 0, 2];
        assert_eq!(arcs_oracle(&runs, false), 3);
        assert_eq!(segment_euler_integral(&seg(runs)), 3);
        assert_eq!(segment_euler_integral(&seg(vec![0, -2, 0])), -2);
    }

    #[test]
    fn profile_validation() {
        assert!(CircularProfile::uniform(vec![1, 2]).is_err());
        assert!(CircularProfile::new(vec![0.0, 1.0, 1.0], vec![1, 2, 3]).is_err());
        assert!(CircularProfile::new(vec![0.0, 1.0, 7.0], vec![1, 2, 3]).is_err());
        assert!(IntervalProfile::new(vec![0.0, 0.0], vec![1, 2]).is_err());
        assert!(IntervalProfile::<i64>::new(vec![], vec![]).is_err());
    }

    #[test]
    fn circle_floor_examples() {
        let c = CircularProfile::uniform(vec![2.5; 8]).unwrap();
        assert_eq!(circle_integral_floor(&c), 0.0);

        let m = 64;
        let sin: Vec<f64> = (0..m)
            .map(|k| 3.0 + 2.0 * (TAU * k as f64 / m as f64).sin())
            .collect();
        let (hi, lo) = sin.iter().fold((f64::MIN, f64::MAX), |(a, b), &v| (a.max(v), b.min(v)));
        let p = CircularProfile::uniform(sin).unwrap();
        assert!((circle_integral_floor(&p) - (hi - lo)).abs() < 1e-12);

        // Maxima {5, 4}, minima {1, 2}, with a non-extremal plateau at 3.
        let p = CircularProfile::uniform(vec![1.0, 3.0, 3.0, 5.0, 2.0, 4.0, 4.0]).unwrap();
        assert_eq!(circle_integral_floor(&p), 5.0 + 4.0 - 1.0 - 2.0);
        assert_eq!(circle_integral_ceil(&p), -(5.0 + 4.0 - 1.0 - 2.0));
    }

    #[test]
    fn extrema_runs_wrap_around() {
        let runs = circle_extrema(&[4.0, 1.0, 1.0, 4.0, 4.0], 0.0);
        assert_eq!(runs.len(), 2);
        let max = runs.iter().find(|r| r.kind == ExtremumKind::Max).unwrap();
        assert_eq!((max.start, max.len), (3, 3));
        assert_eq!(max.indices(5).collect::<Vec<_>>(), vec![3, 4, 0]);
        let min = runs.iter().find(|r| r.kind == ExtremumKind::Min).unwrap();
        assert_eq!((min.start, min.len, min.value), (1, 2, 1.0));
    }

    proptest! {
        #[test]
        fn contour_matches_threshold_enumeration(v in prop::collection::vec(0i64..5, 3..40)) {
            prop_assert_eq!(contour_euler_integral(&circ(v.clone())), arcs_oracle(&v, true));
        }

        #[test]
        fn segment_matches_threshold_enumeration(v in prop::collection::vec(0i64..5, 1..40)) {
            prop_assert_eq!(segment_euler_integral(&seg(v.clone())), arcs_oracle(&v, false));
        }

        #[test]
        fn contour_is_additive_on_disjoint_supports(
            a in prop::collection::vec(0i64..4, 20),
            split in 1usize..19,
            b in prop::collection::vec(0i64..4, 20),
        ) {
            // a lives on [0, split), b on [split, 20), with a zero separating
            // them on both sides of the cycle.
            let mut pa = vec![0; 20];
            let mut pb = vec![0; 20];
            for k in 1..split { pa[k] = a[k]; }
            for k in (split + 1)..19 { pb[k] = b[k]; }
            let sum: Vec<i64> = pa.iter().zip(&pb).map(|(x, y)| x + y).collect();
            prop_assert_eq!(
                contour_euler_integral(&circ(sum)),
                contour_euler_integral(&circ(pa)) + contour_euler_integral(&circ(pb))
            );
        }

        #[test]
        fn floor_is_negated_ceil(v in prop::collection::vec(-10.0f64..10.0, 3..50)) {
            let p = CircularProfile::uniform(v).unwrap();
            prop_assert_eq!(circle_integral_floor(&p), -circle_integral_ceil(&p));
        }

        #[test]
        fn floor_equals_half_total_variation(v in prop::collection::vec(-10.0f64..10.0, 3..50)) {
            let p = CircularProfile::uniform(v.clone()).unwrap();
            let m = v.len();
            let tv: f64 = (0..m).map(|k| (v[k] - v[(k + m - 1) % m]).abs()).sum();
            prop_assert!((circle_integral_floor(&p) - tv / 2.0).abs() < 1e-9);
        }
    }
}
