use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{invalid_param, Result};
use crate::geometry::Point;

/// Radial function of a norm's unit sphere in polar form, before rotation.
#[derive(Debug, Clone, PartialEq)]
pub enum NormShape {
    /// `ρ ≡ 1`
    L2,
    /// `ρ(θ) = 1 / (|cos θ| + |sin θ|)`
    L1,
    /// `ρ(θ) = 1 / max(|cos θ|, |sin θ|)`
    LInf,
    /// `ρ` sampled at equally spaced angles over `[0, 2π)`, interpolated
    /// linearly.
    Sampled(Vec<f64>),
}

/// A planar norm given by the radial function of its unit sphere. The
/// isospectral contour of radius r about x is `x + r·ρ(θ)·(cos θ, sin θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormProfile {
    name: String,
    shape: NormShape,
    rotation: f64,
}

impl NormProfile {
    pub fn l2() -> Self {
        Self {
            name: "l2".into(),
            shape: NormShape::L2,
            rotation: 0.0,
        }
    }

    pub fn l1() -> Self {
        Self {
            name: "l1".into(),
            shape: NormShape::L1,
            rotation: 0.0,
        }
    }

    pub fn linf() -> Self {
        Self {
            name: "linf".into(),
            shape: NormShape::LInf,
            rotation: 0.0,
        }
    }

    /// `ℓ∞` rotated by `degrees`.
    pub fn linf_rotated(degrees: f64) -> Self {
        Self {
            name: format!("linf-rot:{degrees}"),
            shape: NormShape::LInf,
            rotation: degrees.to_radians(),
        }
    }

    pub fn sampled(name: impl Into<String>, rho: Vec<f64>, rotation: f64) -> Result<Self> {
        if rho.len() < 3 {
            return Err(invalid_param("rho", "need at least 3 radial samples"));
        }
        if rho.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(invalid_param("rho", "radial samples must be finite and positive"));
        }
        Ok(Self {
            name: name.into(),
            shape: NormShape::Sampled(rho),
            rotation,
        })
    }

    /// Parses `l2`, `l1`, `linf` or `linf-rot:<degrees>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "l2" => Ok(Self::l2()),
            "l1" => Ok(Self::l1()),
            "linf" => Ok(Self::linf()),
            _ => {
                if let Some(deg) = s.strip_prefix("linf-rot:") {
                    let d: f64 = deg
                        .parse()
                        .map_err(|_| invalid_param("norm", format!("bad rotation `{deg}`")))?;
                    if !d.is_finite() {
                        return Err(invalid_param("norm", "rotation must be finite"));
                    }
                    Ok(Self::linf_rotated(d))
                } else {
                    Err(invalid_param(
                        "norm",
                        format!("unknown norm `{s}` (expected l2, l1, linf, linf-rot:<deg>)"),
                    ))
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> &NormShape {
        &self.shape
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn is_euclidean(&self) -> bool {
        self.shape == NormShape::L2
    }

    /// `ρ(θ)` including the rotation.
    pub fn rho(&self, theta: f64) -> f64 {
        let t = theta - self.rotation;
        match &self.shape {
            NormShape::L2 => 1.0,
            NormShape::L1 => 1.0 / (t.cos().abs() + t.sin().abs()),
            NormShape::LInf => 1.0 / t.cos().abs().max(t.sin().abs()),
            NormShape::Sampled(rho) => {
                let m = rho.len();
                let u = t.rem_euclid(TAU) / TAU * m as f64;
                let k = (u.floor() as usize).min(m - 1);
                let f = u - k as f64;
                rho[k] * (1.0 - f) + rho[(k + 1) % m] * f
            }
        }
    }

    /// `[min ρ, max ρ]` over the unit sphere.
    pub fn rho_bounds(&self) -> (f64, f64) {
        match &self.shape {
            NormShape::L2 => (1.0, 1.0),
            NormShape::L1 => (std::f64::consts::FRAC_1_SQRT_2, 1.0),
            NormShape::LInf => (1.0, std::f64::consts::SQRT_2),
            NormShape::Sampled(rho) => rho
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r))),
        }
    }

    /// Offsets `ρ(θ_k)(cos θ_k, sin θ_k)` of the unit contour at
    /// `θ_k = 2πk/m`.
    pub fn unit_contour(&self, m: usize) -> Vec<Point> {
        (0..m)
            .map(|k| {
                let theta = TAU * k as f64 / m as f64;
                Point::from_polar(self.rho(theta), theta)
            })
            .collect()
    }

    /// `‖v‖` under this norm.
    pub fn norm_of(&self, v: Point) -> f64 {
        let r = v.norm();
        if r == 0.0 {
            return 0.0;
        }
        r / self.rho(v.y.atan2(v.x))
    }
}

/// A nonempty family of norms for spatially variant apodization.
#[derive(Debug, Clone, PartialEq)]
pub struct SvaFamily {
    members: Vec<NormProfile>,
}

impl SvaFamily {
    pub fn new(members: Vec<NormProfile>) -> Result<Self> {
        if members.is_empty() {
            return Err(invalid_param("family", "SVA family must be nonempty"));
        }
        Ok(Self { members })
    }

    /// `k` rotations of `ℓ∞` equally spaced over `[0, π/2)`.
    pub fn rotated_linf(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid_param("sva-rotations", "need at least one rotation"));
        }
        Self::new(
            (0..k)
                .map(|i| NormProfile::linf_rotated((FRAC_PI_2 * i as f64 / k as f64).to_degrees()))
                .collect(),
        )
    }

    pub fn members(&self) -> &[NormProfile] {
        &self.members
    }

    pub fn name(&self) -> String {
        let names: Vec<&str> = self.members.iter().map(|m| m.name()).collect();
        format!("sva[{}]", names.join(","))
    }
}
