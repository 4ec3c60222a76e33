//! Critical points of distance-to-a-point and linear height functions
//! restricted to a polygon boundary.
//!
//! Both functions are monotone between consecutive "nodes" of the boundary
//! loop: vertices, plus (for distance) the perpendicular foot of the base
//! point on each edge whose foot falls strictly inside the edge. The critical
//! structure is therefore read off the cyclic node sequence.

use serde::{Deserialize, Serialize};

use super::point::Point;
use super::polygon::Polygon;
use crate::euler::{circle_extrema, ExtremumKind, PlateauRun};

/// Unit covector `ξ = (cos θ, sin θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    angle: f64,
    #[serde(skip)]
    xi: Point,
}

impl Direction {
    pub fn new(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            angle,
            xi: Point::new(c, s),
        }
    }

    /// Exact axis directions are kept exact (no `cos(π/2)` residue).
    pub fn from_vector(v: Point) -> Self {
        let n = v.norm();
        Self {
            angle: v.y.atan2(v.x),
            xi: v * (1.0 / n),
        }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn xi(&self) -> Point {
        self.xi
    }

    /// `ξ·p`
    #[inline]
    pub fn height(&self, p: Point) -> f64 {
        self.xi.dot(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriticalKind {
    LocalMin,
    LocalMax,
    /// A critical plateau that is neither a local min nor max.
    NonExtremalPlateau,
}

/// Boundary side. `Plus` is `∂⁺` (the outward halfspace excludes the base
/// point, or ξ points out of the region); `Minus` is `∂⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub position: Point,
    pub value: f64,
    pub kind: CriticalKind,
    pub side: Side,
    /// True when the critical set is a plateau (a whole edge) rather than a
    /// point.
    pub plateau: bool,
}

impl CriticalPoint {
    /// Morse index μ: 1 at a local max, 0 at a local min.
    pub fn morse_index(&self) -> Option<u8> {
        match self.kind {
            CriticalKind::LocalMax => Some(1),
            CriticalKind::LocalMin => Some(0),
            CriticalKind::NonExtremalPlateau => None,
        }
    }

    /// Weight in the `⌊dχ⌋` circle formula: `(−1)^{1−μ}`.
    pub fn floor_sign(&self) -> f64 {
        match self.kind {
            CriticalKind::LocalMax => 1.0,
            CriticalKind::LocalMin => -1.0,
            CriticalKind::NonExtremalPlateau => 0.0,
        }
    }

    /// Weight in the `⌈dχ⌉` circle formula: `(−1)^μ`.
    pub fn ceil_sign(&self) -> f64 {
        -self.floor_sign()
    }
}

#[derive(Debug, Clone, Copy)]
enum NodeAt {
    Vertex(usize),
    Foot(usize),
}

#[derive(Debug, Clone, Copy)]
struct Node {
    at: NodeAt,
    pos: Point,
    value: f64,
}

fn tolerance(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    1e-12 * (1.0 + scale)
}

fn kind_of(run: &PlateauRun) -> Option<CriticalKind> {
    match run.kind {
        ExtremumKind::Max => Some(CriticalKind::LocalMax),
        ExtremumKind::Min => Some(CriticalKind::LocalMin),
        ExtremumKind::Flat => None,
    }
}

/// Whether `v` lies in the open cone spanned by `n1` and `n2`.
fn in_open_cone(v: Point, n1: Point, n2: Point) -> bool {
    let span = n1.cross(n2);
    if span == 0.0 {
        // Collinear edges: the cone degenerates to a ray.
        return v.cross(n1) == 0.0 && v.dot(n1) > 0.0;
    }
    let a = n1.cross(v);
    let b = v.cross(n2);
    if span > 0.0 {
        a > 0.0 && b > 0.0
    } else {
        a < 0.0 && b < 0.0
    }
}

fn run_position(nodes: &[Node], run: &PlateauRun) -> Point {
    let m = nodes.len();
    let first = nodes[run.start].pos;
    let last = nodes[(run.start + run.len - 1) % m].pos;
    (first + last) * 0.5
}

/// Critical points of `d_x(p) = ‖p − x‖` on the boundary loop of `poly`.
///
/// Side is `∂⁻` when `x` lies in the open outward halfspace of the point; at
/// a vertex the halfspace test is replaced by membership of `x − p` in the
/// open cone spanned by the two adjacent outward edge normals.
pub fn distance_critical_points(poly: &Polygon, x: Point) -> Vec<CriticalPoint> {
    let n = poly.len();
    let mut nodes = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a, b) = poly.edge(i);
        nodes.push(Node {
            at: NodeAt::Vertex(i),
            pos: a,
            value: a.dist(x),
        });
        let d = b - a;
        let t = (x - a).dot(d) / d.dot(d);
        if t > 0.0 && t < 1.0 {
            let foot = a + d * t;
            nodes.push(Node {
                at: NodeAt::Foot(i),
                pos: foot,
                value: foot.dist(x),
            });
        }
    }
    let values: Vec<f64> = nodes.iter().map(|nd| nd.value).collect();
    let tol = tolerance(&values);

    let side_at = |node: &Node| -> Side {
        let v = x - node.pos;
        let minus = match node.at {
            NodeAt::Foot(e) => v.dot(poly.outward_normal(e)) > 0.0,
            NodeAt::Vertex(i) => in_open_cone(
                v,
                poly.outward_normal((i + n - 1) % n),
                poly.outward_normal(i),
            ),
        };
        if minus {
            Side::Minus
        } else {
            Side::Plus
        }
    };

    let m = nodes.len();
    circle_extrema(&values, tol)
        .iter()
        .filter_map(|run| {
            let kind = kind_of(run)?;
            // Near-coincident nodes (a foot next to its vertex) merge into
            // one run; classify by the vertex if the run has one.
            let rep = run
                .indices(m)
                .map(|k| &nodes[k])
                .find(|nd| matches!(nd.at, NodeAt::Vertex(_)))
                .unwrap_or(&nodes[run.start]);
            let position = if run.len == 1 { rep.pos } else { run_position(&nodes, run) };
            Some(CriticalPoint {
                position,
                value: run.value,
                kind,
                side: side_at(rep),
                plateau: false,
            })
        })
        .collect()
}

/// Critical points of the linear height `ξ·p` on the boundary loop.
///
/// An edge perpendicular to ξ is reported once, as a plateau at the edge
/// midpoint. Side is `∂⁺` where ξ points out of the region.
pub fn height_critical_points(poly: &Polygon, dir: Direction) -> Vec<CriticalPoint> {
    let n = poly.len();
    let xi = dir.xi();
    let values: Vec<f64> = poly.vertices().iter().map(|&p| dir.height(p)).collect();
    let tol = tolerance(&values);
    let nodes: Vec<Node> = poly
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &p)| Node {
            at: NodeAt::Vertex(i),
            pos: p,
            value: values[i],
        })
        .collect();

    circle_extrema(&values, tol)
        .iter()
        .filter_map(|run| {
            let plateau = run.len > 1;
            let kind = match kind_of(run) {
                Some(k) => k,
                None if plateau => CriticalKind::NonExtremalPlateau,
                None => return None,
            };
            let outward = if plateau {
                poly.outward_normal(run.start)
            } else {
                poly.outward_normal((run.start + n - 1) % n) + poly.outward_normal(run.start)
            };
            let side = if xi.dot(outward) > 0.0 {
                Side::Plus
            } else {
                Side::Minus
            };
            Some(CriticalPoint {
                position: run_position(&nodes, run),
                value: run.value,
                kind,
                side,
                plateau,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

    fn unit_square() -> Polygon {
        Polygon::rectangle(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap()
    }

    fn l_shape() -> Polygon {
        Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ])
        .unwrap()
    }

    /// An L whose upright arm leans right, so its reflex corner is a local
    /// minimum of x and the arm's top corner a local maximum.
    fn leaning_l() -> Polygon {
        Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(3.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(2.0, 3.0),
            Point::new(0.0, 3.0),
        ])
        .unwrap()
    }

    /// Oracle: densely sample the boundary and count strict local extrema of
    /// the sampled function (sampling avoids exact vertices).
    fn sampled_extrema(poly: &Polygon, f: impl Fn(Point) -> f64, per_edge: usize) -> (usize, usize) {
        let mut vals = Vec::new();
        for (a, b) in poly.edges() {
            for k in 0..per_edge {
                let t = (k as f64 + 0.37) / per_edge as f64;
                vals.push(f(a + (b - a) * t));
            }
        }
        let m = vals.len();
        let (mut maxima, mut minima) = (0, 0);
        for k in 0..m {
            let (p, c, nx) = (vals[(k + m - 1) % m], vals[k], vals[(k + 1) % m]);
            if c > p && c > nx {
                maxima += 1;
            }
            if c < p && c < nx {
                minima += 1;
            }
        }
        (maxima, minima)
    }

    fn count(cps: &[CriticalPoint], kind: CriticalKind) -> usize {
        cps.iter().filter(|c| c.kind == kind).count()
    }

    #[test]
    fn square_center_has_four_feet_and_four_corners() {
        let cps = distance_critical_points(&unit_square(), Point::new(0.5, 0.5));
        assert_eq!(cps.len(), 8);
        for c in &cps {
            match c.kind {
                CriticalKind::LocalMin => assert!((c.value - 0.5).abs() < 1e-15),
                CriticalKind::LocalMax => assert!((c.value - FRAC_1_SQRT_2).abs() < 1e-15),
                CriticalKind::NonExtremalPlateau => panic!("no plateaus expected"),
            }
            assert_eq!(c.side, Side::Plus);
        }
        assert_eq!(count(&cps, CriticalKind::LocalMin), 4);
        assert_eq!(sampled_extrema(&unit_square(), |p| p.dist(Point::new(0.5, 0.5)), 101), (4, 4));
    }

    #[test]
    fn regular_ngon_center() {
        let n = 12;
        let r = 2.0;
        let poly = Polygon::regular(Point::new(0.0, 0.0), r, n, 0.1).unwrap();
        let cps = distance_critical_points(&poly, Point::new(0.0, 0.0));
        assert_eq!(count(&cps, CriticalKind::LocalMin), n);
        assert_eq!(count(&cps, CriticalKind::LocalMax), n);
        let apothem = r * (PI / n as f64).cos();
        for c in &cps {
            let expect = if c.kind == CriticalKind::LocalMax { r } else { apothem };
            assert!((c.value - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn far_point_on_symmetry_axis() {
        let sq = unit_square();
        let x = Point::new(0.5, -10.0);
        let cps = distance_critical_points(&sq, x);
        let nearest = cps
            .iter()
            .filter(|c| c.kind == CriticalKind::LocalMin)
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .unwrap();
        assert_eq!(nearest.position, Point::new(0.5, 0.0));
        assert_eq!(nearest.side, Side::Minus);
        let far_max: Vec<_> = cps
            .iter()
            .filter(|c| c.kind == CriticalKind::LocalMax)
            .collect();
        assert_eq!(far_max.len(), 2);
        for c in far_max {
            assert_eq!(c.position.y, 1.0);
            assert_eq!(c.side, Side::Plus);
        }
        assert_eq!(sampled_extrema(&sq, |p| p.dist(x), 400), (2, 2));
    }

    #[test]
    fn point_on_boundary_gives_zero_min() {
        let cps = distance_critical_points(&unit_square(), Point::new(0.5, 0.0));
        let zero = cps.iter().find(|c| c.value == 0.0).unwrap();
        assert_eq!(zero.kind, CriticalKind::LocalMin);
    }

    #[test]
    fn height_on_square_is_two_plateaus() {
        let cps = height_critical_points(&unit_square(), Direction::new(0.0));
        assert_eq!(cps.len(), 2);
        let min = cps.iter().find(|c| c.kind == CriticalKind::LocalMin).unwrap();
        let max = cps.iter().find(|c| c.kind == CriticalKind::LocalMax).unwrap();
        assert!(min.plateau && max.plateau);
        assert_eq!((min.value, min.position), (0.0, Point::new(0.0, 0.5)));
        assert_eq!((max.value, max.position), (1.0, Point::new(1.0, 0.5)));
        assert_eq!(max.side, Side::Plus);
        assert_eq!(min.side, Side::Minus);
    }

    #[test]
    fn triangle_generic_direction() {
        let tri = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.5),
            Point::new(1.0, 2.0),
        ])
        .unwrap();
        for k in 0..16 {
            let dir = Direction::new(0.05 + TAU * k as f64 / 16.0);
            let cps = height_critical_points(&tri, dir);
            assert_eq!(count(&cps, CriticalKind::LocalMax), 1);
            assert_eq!(count(&cps, CriticalKind::LocalMin), 1);
        }
    }

    #[test]
    fn l_shape_has_reflex_extrema() {
        // An axis-aligned L is monotone in x: one max, one min, and the
        // inner vertical edge is a non-extremal plateau.
        let cps = height_critical_points(&l_shape(), Direction::new(0.0));
        assert_eq!(count(&cps, CriticalKind::LocalMax), 1);
        assert_eq!(count(&cps, CriticalKind::NonExtremalPlateau), 1);

        let l = leaning_l();
        let cps = height_critical_points(&l, Direction::new(0.0));
        let maxima = count(&cps, CriticalKind::LocalMax);
        let minima = count(&cps, CriticalKind::LocalMin);
        assert!(maxima >= 2 || minima >= 2, "{cps:?}");
        // Brute force along a slightly tilted direction to break plateaus.
        let tilted = Direction::new(0.01);
        let cps_t = height_critical_points(&l, tilted);
        assert_eq!(
            sampled_extrema(&l, |p| tilted.height(p), 200),
            (count(&cps_t, CriticalKind::LocalMax), count(&cps_t, CriticalKind::LocalMin))
        );
    }

    #[test]
    fn staircase_reports_non_extremal_plateau() {
        // The inner edge (2,1)-(1,1) is perpendicular to ξ = (0,1), with the
        // boundary below it on one side and above it on the other.
        let cps = height_critical_points(&l_shape(), Direction::new(PI / 2.0));
        assert!(cps
            .iter()
            .any(|c| c.kind == CriticalKind::NonExtremalPlateau && (c.value - 1.0).abs() < 1e-12));
    }

    #[test]
    fn minima_and_maxima_alternate() {
        let l = l_shape();
        for &(x, y) in &[(0.3, 0.4), (1.5, 1.5), (3.0, -1.0), (1.0, 1.0), (0.5, 1.7)] {
            let cps = distance_critical_points(&l, Point::new(x, y));
            assert_eq!(
                count(&cps, CriticalKind::LocalMax),
                count(&cps, CriticalKind::LocalMin)
            );
        }
    }
}
