use super::run::StudyRecord;
use crate::estimators::EstimatorId;
use crate::inference::hdi;

/// Pearson correlation; `None` for fewer than 3 pairs or zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 3 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Ranks starting at 1, ties sharing their average rank.
pub fn midranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlation: Pearson on midranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    pearson(&midranks(x), &midranks(y))
}

/// Median with the two middle values averaged for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 0 { (v[m - 1] + v[m]) / 2.0 } else { v[m] })
}

/// Correlations of one estimator with G at one table size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeCorrelation {
    pub n: u64,
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
    /// Tables dropped because G or the estimator failed.
    pub dropped: u64,
}

/// Per-size correlations with G, pairwise-complete.
pub fn correlations_for_size(n: u64, records: &[StudyRecord], estimator: EstimatorId) -> SizeCorrelation {
    let mut xs = Vec::with_capacity(records.len());
    let mut ys = Vec::with_capacity(records.len());
    let mut dropped = 0;
    for rec in records {
        match (rec.estimates.get(EstimatorId::G), rec.estimates.get(estimator)) {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ => dropped += 1,
        }
    }
    SizeCorrelation { n, pearson: pearson(&xs, &ys), spearman: spearman(&xs, &ys), dropped }
}

/// Median and 95% HDI of a set of per-size correlations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spread {
    pub median: Option<f64>,
    pub hdi: Option<(f64, f64)>,
    pub defined: usize,
    pub undefined: usize,
}

impl Spread {
    pub fn of(values: impl IntoIterator<Item = Option<f64>>) -> Self {
        let mut defined = Vec::new();
        let mut undefined = 0;
        for v in values {
            match v {
                Some(x) => defined.push(x),
                None => undefined += 1,
            }
        }
        Spread { median: median(&defined), hdi: hdi(&defined, 0.95).ok(), defined: defined.len(), undefined }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRow {
    pub estimator: EstimatorId,
    pub per_size: Vec<SizeCorrelation>,
    pub pearson: Spread,
    pub spearman: Spread,
}

/// Correlations of estimators with G, summarised across table sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSummary {
    pub rows: Vec<CorrelationRow>,
}

impl CorrelationSummary {
    pub fn get(&self, id: EstimatorId) -> Option<&CorrelationRow> {
        self.rows.iter().find(|r| r.estimator == id)
    }
}

/// Collects per-size correlations as sizes stream past.
#[derive(Debug, Clone, Default)]
pub struct CorrelationAccumulator {
    per_size: Vec<(EstimatorId, Vec<SizeCorrelation>)>,
}

impl CorrelationAccumulator {
    pub fn new(estimators: &[EstimatorId]) -> Self {
        CorrelationAccumulator { per_size: estimators.iter().map(|&e| (e, Vec::new())).collect() }
    }

    /// Adds all records of a single table size.
    pub fn add_size(&mut self, n: u64, records: &[StudyRecord]) {
        for (id, v) in &mut self.per_size {
            v.push(correlations_for_size(n, records, *id));
        }
    }

    pub fn finish(self) -> CorrelationSummary {
        let rows = self
            .per_size
            .into_iter()
            .map(|(estimator, per_size)| CorrelationRow {
                estimator,
                pearson: Spread::of(per_size.iter().map(|s| s.pearson)),
                spearman: Spread::of(per_size.iter().map(|s| s.spearman)),
                per_size,
            })
            .collect();
        CorrelationSummary { rows }
    }
}

/// Runs the point-estimate study over `from..=to` and summarises the
/// correlation of each estimator with G.
pub fn correlations_by_n(
    from: u64,
    to: u64,
    estimators: &[EstimatorId],
) -> Result<CorrelationSummary, crate::error::StudyError> {
    let mut acc = CorrelationAccumulator::new(estimators);
    super::run::run_study(from, to, None, |n, recs| {
        acc.add_size(n, recs);
        Ok(())
    })?;
    Ok(acc.finish())
}
