use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Result};
use crate::geometry::Point;
use crate::transforms::TransformField;

/// One detected minimum of a field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    /// Centroid of the plateau cells at the minimum level.
    pub position: Point,
    /// Cell holding the plateau centroid (or the nearest plateau cell).
    pub cell: [usize; 2],
    /// Field value at the minimum.
    pub depth: f64,
    /// 1-based rank by depth.
    pub rank: usize,
    /// Number of cells on the minimal plateau.
    pub plateau_cells: usize,
    /// Rise from the minimum to the level where it merges with a deeper basin;
    /// `None` for the global minimum.
    pub persistence: Option<f64>,
}

/// Result of [`find_local_minima`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaSearch {
    /// The `n` deepest minima (or all of them when fewer exist).
    pub minima: Vec<Minimum>,
    /// Number of minima found before truncation to `n`.
    pub found: usize,
    /// Set when fewer than `n` minima exist.
    pub shortage: bool,
}

const NEIGHBORS: [(isize, isize); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

fn neighbors(w: usize, h: usize, i: usize) -> impl Iterator<Item = usize> {
    let (c, r) = ((i % w) as isize, (i / w) as isize);
    NEIGHBORS.iter().filter_map(move |&(dc, dr)| {
        let (nc, nr) = (c + dc, r + dr);
        (nc >= 0 && nr >= 0 && (nc as usize) < w && (nr as usize) < h)
            .then(|| nr as usize * w + nc as usize)
    })
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Strict local minima over 8-neighborhoods with plateau flood-fill: a
/// connected region of equal value whose whole outer ring is strictly higher
/// counts once, at its centroid. Returns the `n` deepest, ties broken by
/// lexicographic position.
pub fn find_local_minima(field: &TransformField, n: usize) -> MinimaSearch {
    find_local_minima_with(field, n, 0.0).expect("zero prominence is valid")
}

/// Like [`find_local_minima`], but discards minima whose persistence (the
/// rise needed to reach a deeper basin) is at most `prominence`. With
/// `prominence = 0` this is exactly the strict plateau rule.
pub fn find_local_minima_with(
    field: &TransformField,
    n: usize,
    prominence: f64,
) -> Result<MinimaSearch> {
    if !(prominence.is_finite() && prominence >= 0.0) {
        return Err(invalid_param(
            "prominence",
            format!("must be finite and nonnegative, got {prominence}"),
        ));
    }
    let (w, h) = (field.spec.width, field.spec.height);
    let vals = &field.values;
    let len = vals.len();

    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));

    // Persistence by union-find over the sublevel filtration. Each root
    // remembers the cell where its basin was born.
    const UNSET: usize = usize::MAX;
    let mut parent = vec![UNSET; len];
    let mut birth = vec![UNSET; len];
    let mut deaths: Vec<(usize, f64)> = Vec::new();
    for &i in &order {
        parent[i] = i;
        birth[i] = i;
        for j in neighbors(w, h, i) {
            if parent[j] == UNSET {
                continue;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                continue;
            }
            let (bi, bj) = (birth[ri], birth[rj]);
            // The younger basin (higher birth value, later in order) dies.
            let older_first = vals[bi]
                .total_cmp(&vals[bj])
                .then(bi.cmp(&bj))
                .is_lt();
            let (keep, die) = if older_first { (ri, rj) } else { (rj, ri) };
            let dead_birth = birth[die];
            deaths.push((dead_birth, vals[i] - vals[dead_birth]));
            parent[die] = keep;
        }
    }
    let mut roots: Vec<(usize, Option<f64>)> = deaths
        .into_iter()
        .filter(|&(_, p)| p > prominence)
        .map(|(b, p)| (b, Some(p)))
        .collect();
    if len > 0 {
        let r = find(&mut parent, order[0]);
        let global = birth[r];
        // A constant field has no strict minimum.
        let constant = vals.iter().all(|&v| v == vals[global]);
        if !constant {
            roots.push((global, None));
        }
    }

    let mut minima: Vec<Minimum> = roots
        .into_iter()
        .map(|(b, persistence)| plateau_minimum(field, b, persistence))
        .collect();
    minima.sort_by(|a, b| {
        a.depth
            .total_cmp(&b.depth)
            .then(a.position.x.total_cmp(&b.position.x))
            .then(a.position.y.total_cmp(&b.position.y))
    });
    let found = minima.len();
    minima.truncate(n);
    for (k, m) in minima.iter_mut().enumerate() {
        m.rank = k + 1;
    }
    Ok(MinimaSearch {
        minima,
        found,
        shortage: found < n,
    })
}

/// Flood-fills the equal-valued plateau through `seed` and summarizes it.
fn plateau_minimum(field: &TransformField, seed: usize, persistence: Option<f64>) -> Minimum {
    let (w, h) = (field.spec.width, field.spec.height);
    let level = field.values[seed];
    let mut seen = vec![false; field.values.len()];
    let mut stack = vec![seed];
    let mut cells = Vec::new();
    seen[seed] = true;
    while let Some(i) = stack.pop() {
        cells.push(i);
        for j in neighbors(w, h, i) {
            if !seen[j] && field.values[j] == level {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    let (mut sx, mut sy) = (0.0, 0.0);
    for &i in &cells {
        let (c, r) = field.spec.col_row(i);
        let p = field.spec.cell_center(c, r);
        sx += p.x;
        sy += p.y;
    }
    let k = cells.len() as f64;
    let position = Point::new(sx / k, sy / k);
    let nearest = cells
        .iter()
        .copied()
        .min_by(|&a, &b| {
            let pa = field.spec.cell_center(a % w, a / w).dist(position);
            let pb = field.spec.cell_center(b % w, b / w).dist(position);
            pa.total_cmp(&pb).then(a.cmp(&b))
        })
        .expect("plateau holds its seed");
    let (c, r) = field.spec.col_row(nearest);
    Minimum {
        position,
        cell: [c, r],
        depth: level,
        rank: 0,
        plateau_cells: cells.len(),
        persistence,
    }
}
