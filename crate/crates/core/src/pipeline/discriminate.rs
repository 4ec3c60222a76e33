use serde::{Deserialize, Serialize};

use super::localize::{count_targets, LocalizeParams, SCHEMA_VERSION};
use super::minima::{find_local_minima_with, Minimum};
use crate::error::{invalid_param, Result};
use crate::euler::GridSpec;
use crate::geometry::{rasterize, Point, Scene};
use crate::transforms::{
    bessel_transform, sva_transform, NormProfile, SvaFamily, TransformField,
};

/// Deepest minima of one transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormMinima {
    pub norm: String,
    pub minima: Vec<Minimum>,
    pub minima_found: usize,
    /// Median of the whole field; used to compare depths across norms.
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResponse {
    pub norm: String,
    pub value: f64,
    /// `value / median` of that norm's field.
    pub relative: f64,
}

/// Which norm responds deepest at a candidate position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub position: Point,
    pub cell: [usize; 2],
    pub best_norm: String,
    pub responses: Vec<NormResponse>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationParams {
    pub grid: GridSpec,
    pub dr: f64,
    pub angles: usize,
    pub prominence: f64,
    pub norms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationReport {
    pub schema_version: u32,
    pub target_count: i64,
    pub per_norm: Vec<NormMinima>,
    pub verdicts: Vec<Verdict>,
    pub parameters: DiscriminationParams,
}

impl DiscriminationReport {
    pub fn norm(&self, name: &str) -> Option<&NormMinima> {
        self.per_norm.iter().find(|n| n.norm == name)
    }
}

/// Transforms the scene under every norm (and the SVA family when given),
/// reports each field's `target_count` deepest minima and, for every
/// distinct minimum position, the norm whose median-relative response there
/// is lowest.
///
/// Returns the report with the fields in the same order as `per_norm`.
pub fn discriminate(
    scene: &Scene,
    norms: &[NormProfile],
    sva: Option<&SvaFamily>,
    params: &LocalizeParams,
) -> Result<(DiscriminationReport, Vec<TransformField>)> {
    if norms.is_empty() && sva.is_none() {
        return Err(invalid_param("norms", "need at least one norm or an SVA family"));
    }
    let grid = params.grid;
    let h = rasterize(scene, &grid)?;
    let target_count = count_targets(&h);
    let n = target_count.max(0) as usize;
    let prominence = params.prominence();

    let mut fields = norms
        .iter()
        .map(|norm| bessel_transform(scene, norm, &grid, &params.bessel))
        .collect::<Result<Vec<_>>>()?;
    if let Some(family) = sva {
        fields.push(sva_transform(scene, family, &grid, &params.bessel)?);
    }

    let mut per_norm = Vec::with_capacity(fields.len());
    for f in &fields {
        let search = find_local_minima_with(f, n, prominence)?;
        per_norm.push(NormMinima {
            norm: f.meta.norm.clone(),
            minima: search.minima,
            minima_found: search.found,
            median: f.median_where(|_| true).unwrap_or(0.0),
        });
    }

    // Candidate cells: every reported minimum, merging those within 1.5 cells.
    let merge = 1.5 * grid.spacing;
    let mut candidates: Vec<(Point, [usize; 2])> = Vec::new();
    for m in per_norm.iter().flat_map(|p| &p.minima) {
        if candidates.iter().all(|(q, _)| q.dist(m.position) > merge) {
            candidates.push((m.position, m.cell));
        }
    }
    let verdicts = candidates
        .into_iter()
        .map(|(position, cell)| {
            let responses: Vec<NormResponse> = fields
                .iter()
                .zip(&per_norm)
                .map(|(f, p)| {
                    let value = f.get(cell[0], cell[1]);
                    NormResponse {
                        norm: p.norm.clone(),
                        value,
                        relative: if p.median > 0.0 { value / p.median } else { value },
                    }
                })
                .collect();
            let best = responses
                .iter()
                .min_by(|a, b| a.relative.total_cmp(&b.relative))
                .expect("at least one field");
            Verdict {
                position,
                cell,
                best_norm: best.norm.clone(),
                responses: responses.clone(),
            }
        })
        .collect();

    let report = DiscriminationReport {
        schema_version: SCHEMA_VERSION,
        target_count,
        parameters: DiscriminationParams {
            grid,
            dr: params.bessel.dr,
            angles: params.bessel.angles,
            prominence,
            norms: per_norm.iter().map(|p| p.norm.clone()).collect(),
        },
        per_norm,
        verdicts,
    };
    Ok((report, fields))
}
