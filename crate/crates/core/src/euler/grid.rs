use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::geometry::{BBox, Point};

/// Layout of a regular raster: `width × height` square cells of side
/// `spacing`, with the lower-left corner of cell (0, 0) at `origin`.
/// Cell (col, row) is stored at index `row * width + col`; row 0 is the
/// lowest row in y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub width: usize,
    pub height: usize,
    pub origin: Point,
    pub spacing: f64,
}

impl GridSpec {
    pub fn new(width: usize, height: usize, origin: Point, spacing: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidGrid(format!(
                "dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "spacing must be finite and positive, got {spacing}"
            )));
        }
        if !(origin.x.is_finite() && origin.y.is_finite()) {
            return Err(Error::InvalidGrid("origin must be finite".into()));
        }
        Ok(Self {
            width,
            height,
            origin,
            spacing,
        })
    }

    /// A grid of the given size whose cell-center block is centered on `center`.
    pub fn centered(width: usize, height: usize, center: Point, spacing: f64) -> Result<Self> {
        let origin = Point::new(
            center.x - 0.5 * width as f64 * spacing,
            center.y - 0.5 * height as f64 * spacing,
        );
        Self::new(width, height, origin, spacing)
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.width + col
    }

    #[inline]
    pub fn col_row(&self, index: usize) -> (usize, usize) {
        (index % self.width, index / self.width)
    }

    #[inline]
    pub fn cell_center(&self, col: usize, row: usize) -> Point {
        Point::new(
            self.origin.x + (col as f64 + 0.5) * self.spacing,
            self.origin.y + (row as f64 + 0.5) * self.spacing,
        )
    }

    /// The cell whose closed-open square `[x0, x0+s) × [y0, y0+s)` contains `p`.
    #[inline]
    pub fn cell_of(&self, p: Point) -> Option<(usize, usize)> {
        let fx = ((p.x - self.origin.x) / self.spacing).floor();
        let fy = ((p.y - self.origin.y) / self.spacing).floor();
        if fx < 0.0 || fy < 0.0 || fx >= self.width as f64 || fy >= self.height as f64 {
            return None;
        }
        Some((fx as usize, fy as usize))
    }

    /// Physical extent of the whole grid (cell edges, not centers).
    pub fn bounds(&self) -> BBox {
        BBox::new(
            self.origin,
            Point::new(
                self.origin.x + self.width as f64 * self.spacing,
                self.origin.y + self.height as f64 * self.spacing,
            ),
        )
    }

    /// Bounding box of the cell centers.
    pub fn center_bounds(&self) -> BBox {
        BBox::new(
            self.cell_center(0, 0),
            self.cell_center(self.width - 1, self.height - 1),
        )
    }

    fn is_border(&self, col: usize, row: usize) -> bool {
        col == 0 || row == 0 || col + 1 == self.width || row + 1 == self.height
    }

    fn check_border<T: Copy + PartialEq>(&self, values: &[T], zero: T) -> Result<()> {
        for row in 0..self.height {
            for col in 0..self.width {
                if self.is_border(col, row) && values[self.index(col, row)] != zero {
                    return Err(Error::SupportOnBorder { col, row });
                }
            }
        }
        Ok(())
    }
}

/// An integer-valued constructible function sampled on a regular grid.
///
/// The outer ring of cells is always zero so that the support is compactly
/// contained in the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    values: Vec<i64>,
}

impl GridFunction {
    pub fn new(spec: GridSpec, values: Vec<i64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} values for a {}x{} grid, got {}",
                spec.len(),
                spec.width,
                spec.height,
                values.len()
            )));
        }
        spec.check_border(&values, 0)?;
        Ok(Self { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            values: vec![0; spec.len()],
            spec,
        }
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(usize, usize) -> i64) -> Result<Self> {
        let mut values = Vec::with_capacity(spec.len());
        for row in 0..spec.height {
            for col in 0..spec.width {
                values.push(f(col, row));
            }
        }
        Self::new(spec, values)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, col: usize, row: usize) -> i64 {
        self.values[self.spec.index(col, row)]
    }

    /// Nearest-cell lookup; zero outside the grid.
    #[inline]
    pub fn value_at(&self, p: Point) -> i64 {
        match self.spec.cell_of(p) {
            Some((c, r)) => self.get(c, r),
            None => 0,
        }
    }

    pub fn max(&self) -> i64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn min(&self) -> i64 {
        self.values.iter().copied().min().unwrap_or(0)
    }

    /// Physical bounding box of the nonzero cells, or `None` if h ≡ 0.
    pub fn support_bbox(&self) -> Option<BBox> {
        let mut out: Option<BBox> = None;
        let s = self.spec.spacing;
        for (i, &v) in self.values.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let (c, r) = self.spec.col_row(i);
            let lo = Point::new(
                self.spec.origin.x + c as f64 * s,
                self.spec.origin.y + r as f64 * s,
            );
            let cell = BBox::new(lo, Point::new(lo.x + s, lo.y + s));
            out = Some(match out {
                Some(b) => b.union(&cell),
                None => cell,
            });
        }
        out
    }
}

/// A real-valued function on a grid, the input of the `⌊dχ⌋`/`⌈dχ⌉` integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGridFunction {
    spec: GridSpec,
    values: Vec<f64>,
}

impl RealGridFunction {
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} values, got {}",
                spec.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            let (col, row) = spec.col_row(i);
            return Err(Error::InvalidGrid(format!(
                "non-finite value at cell ({col}, {row})"
            )));
        }
        spec.check_border(&values, 0.0)?;
        Ok(Self { spec, values })
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(Point) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(spec.len());
        for row in 0..spec.height {
            for col in 0..spec.width {
                values.push(f(spec.cell_center(col, row)));
            }
        }
        Self::new(spec, values)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn quantize(&self, n: u64, round: fn(f64) -> f64) -> GridFunction {
        let scale = n as f64;
        GridFunction {
            spec: self.spec,
            values: self.values.iter().map(|&v| round(v * scale) as i64).collect(),
        }
    }
}

/// A closed cubical set: each member cell is a closed unit square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidGrid(format!(
                "mask dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if bits.len() != width * height {
            return Err(Error::InvalidGrid(format!(
                "expected {} mask bits, got {}",
                width * height,
                bits.len()
            )));
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn empty(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    /// Builds a mask from rows of `#` (member) and anything else (non-member).
    /// The first string is row 0.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut bits = Vec::with_capacity(width * height);
        for r in rows {
            if r.chars().count() != width {
                return Err(Error::InvalidGrid("ragged mask rows".into()));
            }
            bits.extend(r.chars().map(|c| c == '#'));
        }
        Self::new(width, height, bits)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, col: usize, row: usize) -> bool {
        self.bits[row * self.width + col]
    }

    /// Membership with out-of-range coordinates treated as empty.
    #[inline]
    fn member(&self, col: isize, row: isize) -> bool {
        col >= 0
            && row >= 0
            && (col as usize) < self.width
            && (row as usize) < self.height
            && self.get(col as usize, row as usize)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Euler characteristic `V − E + F` of the union of closed member squares.
pub fn euler_char(mask: &BinaryMask) -> i64 {
    let (w, h) = (mask.width as isize, mask.height as isize);
    let faces = mask.count() as i64;

    // Vertex (i, j) is the lower-left corner of cell (i, j).
    let mut vertices = 0i64;
    for j in 0..=h {
        for i in 0..=w {
            if mask.member(i, j)
                || mask.member(i - 1, j)
                || mask.member(i, j - 1)
                || mask.member(i - 1, j - 1)
            {
                vertices += 1;
            }
        }
    }

    let mut edges = 0i64;
    // Horizontal edge from vertex (i, j) to (i + 1, j).
    for j in 0..=h {
        for i in 0..w {
            if mask.member(i, j) || mask.member(i, j - 1) {
                edges += 1;
            }
        }
    }
    // Vertical edge from vertex (i, j) to (i, j + 1).
    for j in 0..h {
        for i in 0..=w {
            if mask.member(i, j) || mask.member(i - 1, j) {
                edges += 1;
            }
        }
    }

    vertices - edges + faces
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `{h ≥ s}`
    AtLeast,
    /// `{h ≤ s}`
    AtMost,
}

pub fn excursion_mask(h: &GridFunction, s: i64, sense: Sense) -> BinaryMask {
    let bits = h
        .values
        .iter()
        .map(|&v| match sense {
            Sense::AtLeast => v >= s,
            Sense::AtMost => v <= s,
        })
        .collect();
    BinaryMask {
        width: h.spec.width,
        height: h.spec.height,
        bits,
    }
}

/// Euler integral of an integer-valued grid function:
/// `Σ_{s≥1} χ{h ≥ s} − Σ_{s≥1} χ{h ≤ −s}`.
///
/// Only levels where an excursion set changes are evaluated; between
/// consecutive distinct values the excursion set is constant.
pub fn euler_integral(h: &GridFunction) -> i64 {
    let mut positive: Vec<i64> = h.values.iter().copied().filter(|&v| v > 0).collect();
    positive.sort_unstable();
    positive.dedup();
    let mut negative: Vec<i64> = h.values.iter().copied().filter(|&v| v < 0).map(|v| -v).collect();
    negative.sort_unstable();
    negative.dedup();

    let mut total = 0i64;
    let mut prev = 0i64;
    for &level in &positive {
        total += (level - prev) * euler_char(&excursion_mask(h, level, Sense::AtLeast));
        prev = level;
    }
    prev = 0;
    for &level in &negative {
        total -= (level - prev) * euler_char(&excursion_mask(h, -level, Sense::AtMost));
        prev = level;
    }
    total
}

fn check_quantization(n: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid_param("n", "quantization must be at least 1"));
    }
    Ok(())
}

/// `(1/n) ∫ ⌊n h⌋ dχ`; converges to `∫ h ⌊dχ⌋` as `n` grows.
pub fn real_integral_floor(h: &RealGridFunction, n: u64) -> Result<f64> {
    check_quantization(n)?;
    Ok(euler_integral(&h.quantize(n, f64::floor)) as f64 / n as f64)
}

/// `(1/n) ∫ ⌈n h⌉ dχ`; converges to `∫ h ⌈dχ⌉` as `n` grows.
pub fn real_integral_ceil(h: &RealGridFunction, n: u64) -> Result<f64> {
    check_quantization(n)?;
    Ok(euler_integral(&h.quantize(n, f64::ceil)) as f64 / n as f64)
}
