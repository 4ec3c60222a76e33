use serde::{Deserialize, Serialize};

use crate::euler::GridSpec;
use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMeta {
    pub norm: String,
    pub dr: f64,
    pub angles: usize,
    pub r_max: f64,
}

/// Real-valued raster of transform values at cell centers.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformField {
    pub spec: GridSpec,
    pub values: Vec<f64>,
    pub meta: FieldMeta,
}

impl TransformField {
    #[inline]
    pub fn get(&self, col: usize, row: usize) -> f64 {
        self.values[self.spec.index(col, row)]
    }

    pub fn position(&self, col: usize, row: usize) -> Point {
        self.spec.cell_center(col, row)
    }

    /// Value of the cell containing `p`.
    pub fn value_at(&self, p: Point) -> Option<f64> {
        self.spec.cell_of(p).map(|(c, r)| self.get(c, r))
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Median of the values selected by `keep(position)`.
    pub fn median_where(&self, mut keep: impl FnMut(Point) -> bool) -> Option<f64> {
        let mut v: Vec<f64> = (0..self.values.len())
            .filter(|&i| {
                let (c, r) = self.spec.col_row(i);
                keep(self.spec.cell_center(c, r))
            })
            .map(|i| self.values[i])
            .collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let n = v.len();
        Some(if n % 2 == 1 {
            v[n / 2]
        } else {
            0.5 * (v[n / 2 - 1] + v[n / 2])
        })
    }
}
