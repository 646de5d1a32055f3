use std::collections::BTreeMap;

use super::run::StudyRecord;
use crate::estimators::EstimatorId;
use crate::table::{classify_extremes, Panel};

/// Pointy-top hexagonal grid anchored at `x = −1, y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexGeometry {
    /// Centre-to-centre distance along x.
    pub width: f64,
}

impl HexGeometry {
    /// `bins` hexagons across `x ∈ [−1, 1]`.
    pub fn across(bins: u32) -> Self {
        HexGeometry { width: 2.0 / bins as f64 }
    }

    /// Circumradius.
    pub fn radius(&self) -> f64 {
        self.width / 3f64.sqrt()
    }

    /// Axial coordinates `(q, r)` of the hexagon containing `(x, y)`.
    pub fn locate(&self, x: f64, y: f64) -> (i32, i32) {
        let size = self.radius();
        let px = x + 1.0;
        let q = (3f64.sqrt() / 3.0 * px - y / 3.0) / size;
        let r = (2.0 / 3.0 * y) / size;
        cube_round(q, r)
    }

    pub fn center(&self, q: i32, r: i32) -> (f64, f64) {
        let size = self.radius();
        let x = size * 3f64.sqrt() * (q as f64 + r as f64 / 2.0) - 1.0;
        let y = size * 1.5 * r as f64;
        (x, y)
    }
}

impl Default for HexGeometry {
    fn default() -> Self {
        HexGeometry::across(40)
    }
}

fn cube_round(q: f64, r: f64) -> (i32, i32) {
    let s = -q - r;
    let (mut rq, mut rr, rs) = (q.round(), r.round(), s.round());
    let (dq, dr, ds) = ((rq - q).abs(), (rr - r).abs(), (rs - s).abs());
    if dq > dr && dq > ds {
        rq = -rr - rs;
    } else if dr > ds {
        rr = -rq - rs;
    }
    (rq as i32, rr as i32)
}

/// Hexagon counts of `(G, estimator)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct HexbinGrid {
    pub estimator: EstimatorId,
    pub geometry: HexGeometry,
    pub panel: Option<Panel>,
    pub counts: BTreeMap<(i32, i32), u64>,
    /// Tables in the population where the estimator (or G) failed.
    pub failed: u64,
}

impl HexbinGrid {
    pub fn new(estimator: EstimatorId, geometry: HexGeometry, panel: Option<Panel>) -> Self {
        HexbinGrid { estimator, geometry, panel, counts: BTreeMap::new(), failed: 0 }
    }

    pub fn computable(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn non_computable_fraction(&self) -> f64 {
        let total = self.computable() + self.failed;
        if total == 0 {
            0.0
        } else {
            self.failed as f64 / total as f64
        }
    }

    pub fn add(&mut self, records: &[StudyRecord]) {
        for rec in records {
            if let Some(panel) = self.panel {
                if !panel.matches(&classify_extremes(&rec.table)) {
                    continue;
                }
            }
            match (rec.estimates.get(EstimatorId::G), rec.estimates.get(self.estimator)) {
                (Ok(x), Ok(y)) => *self.counts.entry(self.geometry.locate(x, y)).or_insert(0) += 1,
                _ => self.failed += 1,
            }
        }
    }

    pub fn merge(&mut self, other: &HexbinGrid) {
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_insert(0) += v;
        }
        self.failed += other.failed;
    }
}

/// Hexbin counts of `estimator` against G, optionally restricted to one
/// extreme-table panel.
pub fn hexbin_aggregate(
    records: &[StudyRecord],
    estimator: EstimatorId,
    geometry: HexGeometry,
    panel: Option<Panel>,
) -> HexbinGrid {
    let mut g = HexbinGrid::new(estimator, geometry, panel);
    g.add(records);
    g
}
