use std::f64::consts::TAU;

use rayon::prelude::*;

use super::field::{FieldMeta, TransformField};
use super::norm::{NormProfile, SvaFamily};
use crate::error::{invalid_param, Result};
use crate::euler::{cyclic_ascent, CircularProfile, GridFunction, GridSpec};
use crate::geometry::{BBox, Integrand, Point, Scene};

/// Discretization of the Bessel transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselParams {
    /// Radial step Δr; radii are sampled at `(j + ½)Δr`.
    pub dr: f64,
    /// Number of angular samples per contour.
    pub angles: usize,
    /// Upper radius of integration. `None` uses the diameter of the bounding
    /// box of the support together with the output grid.
    pub r_max: Option<f64>,
}

impl BesselParams {
    pub const DEFAULT_ANGLES: usize = 720;

    /// Defaults for a grid: `Δr = spacing / 2`, 720 angles.
    pub fn for_grid(spec: &GridSpec) -> Self {
        Self {
            dr: 0.5 * spec.spacing,
            angles: Self::DEFAULT_ANGLES,
            r_max: None,
        }
    }

    pub fn new(dr: f64, angles: usize) -> Self {
        Self {
            dr,
            angles,
            r_max: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.dr.is_finite() && self.dr > 0.0) {
            return Err(invalid_param("dr", format!("must be positive, got {}", self.dr)));
        }
        if self.angles < 3 {
            return Err(invalid_param(
                "angles",
                format!("need at least 3 angular samples, got {}", self.angles),
            ));
        }
        Ok(())
    }
}

/// Samples `h` on the isospectral contour of radius `r` about `x`.
pub fn contour_sample<I: Integrand + ?Sized>(
    h: &I,
    norm: &NormProfile,
    x: Point,
    r: f64,
    m: usize,
) -> Result<CircularProfile<i64>> {
    if !(r > 0.0) {
        return Err(invalid_param("r", format!("radius must be positive, got {r}")));
    }
    if m < 3 {
        return Err(invalid_param("m", format!("need at least 3 samples, got {m}")));
    }
    let values = norm
        .unit_contour(m)
        .into_iter()
        .map(|u| h.eval(x + u * r))
        .collect();
    CircularProfile::uniform(values)
}

/// Per-point kernel shared by the scene and raster paths.
struct Kernel<'a, I: ?Sized> {
    h: &'a I,
    support: BBox,
    contour: Vec<Point>,
    rho_min: f64,
    rho_max: f64,
    dr: f64,
    radii: usize,
}

impl<I: Integrand + ?Sized> Kernel<'_, I> {
    /// Radius indices whose contours can see a change in `h`. Contours inside
    /// the constant ball or beyond the support sample one value and contribute
    /// nothing.
    fn radius_range(&self, x: Point) -> std::ops::Range<usize> {
        let (near, far) = self
            .h
            .radial_bounds(x)
            .unwrap_or((self.support.dist_to(x), self.support.max_dist_to(x)));
        let near = near / self.rho_max;
        let far = far / self.rho_min;
        let lo = (near / self.dr - 1.5).floor().max(0.0) as usize;
        let hi = ((far / self.dr + 1.5).ceil() as usize).min(self.radii);
        lo.min(hi)..hi
    }

    fn eval(&self, x: Point, ws: &mut Workspace) -> f64 {
        if let Some(scene) = self.h.as_scene() {
            if let Some(v) = self.eval_crossings(scene, x, ws) {
                return v;
            }
        }
        let mut total: i64 = 0;
        for j in self.radius_range(x) {
            let r = (j as f64 + 0.5) * self.dr;
            ws.buf.clear();
            ws.buf.extend(self.contour.iter().map(|&u| self.h.eval(x + u * r)));
            total += cyclic_ascent(&ws.buf);
        }
        total as f64 * self.dr
    }

    /// Same samples as [`Kernel::eval`], read off the edge crossings of each
    /// ray `x + s u_k` instead of testing every sample point. Along ray `k`
    /// the value at radius `r` is `h(x)` plus the jumps at crossings `s < r`,
    /// so each pair of neighboring rays contributes the positive part of the
    /// difference of two step functions. Returns `None` when `x` lies on an
    /// edge.
    fn eval_crossings(&self, scene: &Scene, x: Point, ws: &mut Workspace) -> Option<f64> {
        let (near, _) = scene.radial_bounds(x)?;
        let scale = 1.0 + x.x.abs().max(x.y.abs());
        if !(near > 1e-12 * scale) {
            return None;
        }
        let m = self.contour.len();
        let per_radian = m as f64 / TAU;
        ws.rays.resize_with(m, Vec::new);
        for ray in &mut ws.rays {
            ray.clear();
        }
        for item in scene.items() {
            let w = item.weight as i64;
            let vs = item.polygon.vertices();
            ws.angle.clear();
            ws.angle.extend(vs.iter().map(|&v| {
                let d = v - x;
                d.y.atan2(d.x) * per_radian
            }));
            for i in 0..vs.len() {
                let i2 = (i + 1) % vs.len();
                let (a, b) = (vs[i] - x, vs[i2] - x);
                let (fa, mut span) = (ws.angle[i], ws.angle[i2] - ws.angle[i]);
                let half = 0.5 * m as f64;
                if span > half {
                    span -= m as f64;
                } else if span < -half {
                    span += m as f64;
                }
                let lo = fa.min(fa + span).floor() as i64 - 1;
                let hi = fa.max(fa + span).ceil() as i64 + 1;
                let e = b - a;
                let lead = a.cross(e);
                for k in lo..=hi.min(lo + m as i64 - 1) {
                    let k = k.rem_euclid(m as i64) as usize;
                    let u = self.contour[k];
                    let (sa, sb) = (u.cross(a), u.cross(b));
                    if (sa > 0.0) == (sb > 0.0) {
                        continue;
                    }
                    let s = lead / u.cross(e);
                    if s > 0.0 {
                        ws.rays[k].push((s, if sa > sb { w } else { -w }));
                    }
                }
            }
        }
        for ray in &mut ws.rays {
            ray.sort_unstable_by(|p, q| p.0.total_cmp(&q.0));
        }
        let mut total: i64 = 0;
        for k in 0..m {
            let cur = &ws.rays[k];
            let prev = &ws.rays[(k + m - 1) % m];
            let (mut i, mut j) = (0, 0);
            let mut diff: i64 = 0;
            let mut below = 0usize;
            while i < cur.len() || j < prev.len() {
                let s = match (cur.get(i), prev.get(j)) {
                    (Some(c), Some(p)) => c.0.min(p.0),
                    (Some(c), None) => c.0,
                    (None, Some(p)) => p.0,
                    (None, None) => unreachable!(),
                };
                let upto = self.samples_at_most(s);
                if diff > 0 {
                    total += diff * (upto - below) as i64;
                }
                below = upto;
                while i < cur.len() && cur[i].0 == s {
                    diff += cur[i].1;
                    i += 1;
                }
                while j < prev.len() && prev[j].0 == s {
                    diff -= prev[j].1;
                    j += 1;
                }
            }
            if diff > 0 {
                total += diff * (self.radii - below) as i64;
            }
        }
        Some(total as f64 * self.dr)
    }

    /// Number of sampled radii `(j + ½)Δr ≤ s` with `j < radii`.
    fn samples_at_most(&self, s: f64) -> usize {
        let guess = (s / self.dr - 0.5).floor() + 1.0;
        let mut j = guess.clamp(0.0, self.radii as f64) as usize;
        while j > 0 && (j as f64 - 0.5) * self.dr > s {
            j -= 1;
        }
        while j < self.radii && (j as f64 + 0.5) * self.dr <= s {
            j += 1;
        }
        j
    }
}

/// Per-thread scratch space for the kernel.
#[derive(Default)]
struct Workspace {
    buf: Vec<i64>,
    rays: Vec<Vec<(f64, i64)>>,
    angle: Vec<f64>,
}

fn field_r_max(support: Option<BBox>, spec: &GridSpec, params: &BesselParams) -> Result<f64> {
    let grid = spec.bounds();
    let hull = support.map_or(grid, |s| s.union(&grid));
    let needed = hull.diameter();
    match params.r_max {
        None => Ok(needed),
        Some(r) if r >= needed => Ok(r),
        Some(r) => Err(invalid_param(
            "r_max",
            format!("{r} is below the diameter {needed} of support and grid"),
        )),
    }
}

fn run_bessel<I: Integrand + ?Sized>(
    h: &I,
    norm: &NormProfile,
    spec: &GridSpec,
    params: &BesselParams,
) -> Result<TransformField> {
    params.validate()?;
    let support = h.support();
    let r_max = field_r_max(support, spec, params)?;
    let meta = FieldMeta {
        norm: norm.name().to_string(),
        dr: params.dr,
        angles: params.angles,
        r_max,
    };
    let mut values = vec![0.0; spec.len()];
    let Some(support) = support else {
        return Ok(TransformField {
            spec: *spec,
            values,
            meta,
        });
    };
    let (rho_min, rho_max) = norm.rho_bounds();
    let kernel = Kernel {
        h,
        support,
        contour: norm.unit_contour(params.angles),
        rho_min,
        rho_max,
        dr: params.dr,
        radii: (r_max / params.dr).ceil() as usize,
    };
    values
        .par_chunks_mut(spec.width)
        .enumerate()
        .for_each(|(row, out)| {
            let mut ws = Workspace::default();
            for (col, v) in out.iter_mut().enumerate() {
                *v = kernel.eval(spec.cell_center(col, row), &mut ws);
            }
        });
    Ok(TransformField {
        spec: *spec,
        values,
        meta,
    })
}

/// Numeric Euler-Bessel transform of an integrand (usually a [`Scene`]) at
/// every cell center of `spec`:
/// `Bh(x) ≈ Σ_j ∫_{∂B_{r_j}(x)} h dχ · Δr`.
///
/// Cells are evaluated in parallel; each cell's sum runs sequentially over
/// the radii, so results do not depend on the thread count.
///
/// [`Scene`]: crate::geometry::Scene
pub fn bessel_transform<I: Integrand + ?Sized>(
    h: &I,
    norm: &NormProfile,
    spec: &GridSpec,
    params: &BesselParams,
) -> Result<TransformField> {
    run_bessel(h, norm, spec, params)
}

/// Bessel transform of raster data, sampling `h` by nearest cell.
pub fn bessel_transform_raster(
    h: &GridFunction,
    norm: &NormProfile,
    spec: &GridSpec,
    params: &BesselParams,
) -> Result<TransformField> {
    run_bessel(h, norm, spec, params)
}

/// Numeric Bessel transform at arbitrary points. The default `r_max` is the
/// diameter of the support together with the points.
pub fn bessel_at_points<I: Integrand + ?Sized>(
    h: &I,
    norm: &NormProfile,
    points: &[Point],
    params: &BesselParams,
) -> Result<Vec<f64>> {
    params.validate()?;
    let (Some(support), Some(pts)) = (h.support(), BBox::of_points(points)) else {
        return Ok(vec![0.0; points.len()]);
    };
    let needed = support.union(&pts).diameter();
    let r_max = match params.r_max {
        None => needed,
        Some(r) if r >= needed => r,
        Some(r) => {
            return Err(invalid_param(
                "r_max",
                format!("{r} is below the diameter {needed} of support and points"),
            ))
        }
    };
    let (rho_min, rho_max) = norm.rho_bounds();
    let kernel = Kernel {
        h,
        support,
        contour: norm.unit_contour(params.angles),
        rho_min,
        rho_max,
        dr: params.dr,
        radii: (r_max / params.dr).ceil() as usize,
    };
    Ok(points
        .par_iter()
        .map_init(Workspace::default, |ws, &x| kernel.eval(x, ws))
        .collect())
}

/// SVA transform together with the member fields it was built from.
pub fn sva_transform_with_members<I: Integrand + ?Sized>(
    h: &I,
    family: &SvaFamily,
    spec: &GridSpec,
    params: &BesselParams,
) -> Result<(TransformField, Vec<TransformField>)> {
    let members = family
        .members()
        .iter()
        .map(|norm| run_bessel(h, norm, spec, params))
        .collect::<Result<Vec<_>>>()?;
    let mut values = members[0].values.clone();
    for m in &members[1..] {
        for (v, &w) in values.iter_mut().zip(&m.values) {
            *v = v.min(w);
        }
    }
    let meta = FieldMeta {
        norm: family.name(),
        ..members[0].meta.clone()
    };
    Ok((
        TransformField {
            spec: *spec,
            values,
            meta,
        },
        members,
    ))
}

/// Pointwise infimum of the Bessel transforms over a family of norms.
pub fn sva_transform<I: Integrand + ?Sized>(
    h: &I,
    family: &SvaFamily,
    spec: &GridSpec,
    params: &BesselParams,
) -> Result<TransformField> {
    sva_transform_with_members(h, family, spec, params).map(|(f, _)| f)
}
