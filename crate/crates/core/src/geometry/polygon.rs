use std::f64::consts::TAU;

use super::point::{BBox, Point};
use crate::error::{Error, Result};

/// Edges bucketed by horizontal bands so that point location only tests the
/// edges whose y-range overlaps the query's band.
#[derive(Debug, Clone)]
struct EdgeBands {
    y0: f64,
    inv_height: f64,
    offsets: Vec<u32>,
    edges: Vec<u32>,
}

impl EdgeBands {
    fn build(vertices: &[Point], bbox: &BBox) -> Self {
        let n = vertices.len();
        let count = (4 * n).max(1);
        let span = bbox.height();
        let inv_height = if span > 0.0 { count as f64 / span } else { 0.0 };
        let y0 = bbox.min.y;
        let band = |y: f64| -> usize { ((y - y0) * inv_height).floor().clamp(0.0, (count - 1) as f64) as usize };

        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); count];
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            for bucket in &mut buckets[band(a.y.min(b.y))..=band(a.y.max(b.y))] {
                bucket.push(i as u32);
            }
        }
        let mut offsets = Vec::with_capacity(count + 1);
        let mut edges = Vec::new();
        offsets.push(0);
        for bucket in buckets {
            edges.extend(bucket);
            offsets.push(edges.len() as u32);
        }
        Self {
            y0,
            inv_height,
            offsets,
            edges,
        }
    }

    #[inline]
    fn candidates(&self, y: f64) -> &[u32] {
        let count = self.offsets.len() - 1;
        let b = ((y - self.y0) * self.inv_height).floor().clamp(0.0, (count - 1) as f64) as usize;
        &self.edges[self.offsets[b] as usize..self.offsets[b + 1] as usize]
    }
}

/// A simple polygon with counter-clockwise vertices (closed loop, the last
/// vertex connects back to the first).
#[derive(Debug, Clone)]
pub struct Polygon {
    vertices: Vec<Point>,
    bbox: BBox,
    bands: EdgeBands,
}

impl PartialEq for Polygon {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() * 0.5
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test.
fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(a, c, d))
        || (d2 == 0.0 && on_segment(b, c, d))
        || (d3 == 0.0 && on_segment(c, a, b))
        || (d4 == 0.0 && on_segment(d, a, b))
}

impl Polygon {
    /// Validates and normalizes a vertex loop. A repeated closing vertex is
    /// dropped and clockwise input is reversed to counter-clockwise.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(Error::InvalidPolygon("non-finite vertex".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidPolygon(format!(
                    "zero-length edge at vertex {i}"
                )));
            }
        }
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        Self::check_simple(&vertices)?;
        let bbox = BBox::of_points(&vertices).expect("nonempty");
        let bands = EdgeBands::build(&vertices, &bbox);
        Ok(Self {
            vertices,
            bbox,
            bands,
        })
    }

    fn check_simple(v: &[Point]) -> Result<()> {
        let n = v.len();
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            // Adjacent edges may only share their common vertex.
            let c = v[(i + 2) % n];
            if orient(a, b, c) == 0.0 && (b - a).dot(c - b) < 0.0 {
                return Err(Error::InvalidPolygon(format!(
                    "edges {i} and {} fold back on each other",
                    (i + 1) % n
                )));
            }
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_intersect(a, b, v[j], v[(j + 1) % n]) {
                    return Err(Error::InvalidPolygon(format!(
                        "edges {i} and {j} intersect"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Regular n-gon with vertices on the circle of radius `circumradius`,
    /// the first vertex at angle `rotation`.
    pub fn regular(center: Point, circumradius: f64, n: usize, rotation: f64) -> Result<Self> {
        if !(circumradius > 0.0) {
            return Err(Error::InvalidPolygon(format!(
                "circumradius must be positive, got {circumradius}"
            )));
        }
        let v = (0..n)
            .map(|k| center + Point::from_polar(circumradius, rotation + TAU * k as f64 / n as f64))
            .collect();
        Self::new(v)
    }

    /// Axis-aligned rectangle.
    pub fn rectangle(min: Point, max: Point) -> Result<Self> {
        Self::new(vec![
            min,
            Point::new(max.x, min.y),
            max,
            Point::new(min.x, max.y),
        ])
    }

    /// Square of side `side` centered at `center`, rotated by `rotation`.
    pub fn square(center: Point, side: f64, rotation: f64) -> Result<Self> {
        let h = 0.5 * side;
        let corners = [
            Point::new(-h, -h),
            Point::new(h, -h),
            Point::new(h, h),
            Point::new(-h, h),
        ];
        Self::new(corners.iter().map(|c| center + c.rotate(rotation)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn bbox(&self) -> &BBox {
        &self.bbox
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    /// Unit outward normal of edge `i` (the right-hand side of a CCW loop).
    pub fn outward_normal(&self, i: usize) -> Point {
        let (a, b) = self.edge(i);
        let d = b - a;
        Point::new(d.y, -d.x) * (1.0 / d.norm())
    }

    /// Closed point-in-polygon test by winding number; boundary points are
    /// inside.
    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        if !self.bbox.contains(p) {
            return false;
        }
        let n = self.vertices.len();
        let mut winding = 0i32;
        for &e in self.bands.candidates(p.y) {
            let e = e as usize;
            let a = self.vertices[e];
            let b = self.vertices[if e + 1 == n { 0 } else { e + 1 }];
            if (p.y < a.y && p.y < b.y) || (p.y > a.y && p.y > b.y) {
                continue;
            }
            let side = orient(a, b, p);
            if side == 0.0 && on_segment(p, a, b) {
                return true;
            }
            if a.y <= p.y {
                if b.y > p.y && side > 0.0 {
                    winding += 1;
                }
            } else if b.y <= p.y && side < 0.0 {
                winding -= 1;
            }
        }
        winding != 0
    }

    /// Euclidean distance from `p` to the boundary loop.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let d = b - a;
                let t = ((p - a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
                p.dist(a + d * t)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn translate(&self, v: Point) -> Polygon {
        Polygon::new(self.vertices.iter().map(|&p| p + v).collect()).expect("translation preserves validity")
    }

    /// Rotation about the origin.
    pub fn rotate(&self, angle: f64) -> Polygon {
        Polygon::new(self.vertices.iter().map(|p| p.rotate(angle)).collect())
            .expect("rotation preserves validity")
    }

    pub fn scale(&self, k: f64) -> Polygon {
        Polygon::new(self.vertices.iter().map(|&p| p * k).collect()).expect("scaling preserves validity")
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orient(
                self.vertices[i],
                self.vertices[(i + 1) % n],
                self.vertices[(i + 2) % n],
            ) >= 0.0
        })
    }
}
