use super::mistakes::is_mistake;
use super::run::StudyRecord;
use crate::error::StudyError;
use crate::inference::{Procedure, Region};

/// Default histogram width over `p_o`: one bin per attainable proportion up
/// to 100 bins.
pub fn default_bin_width(n: u64) -> f64 {
    1.0 / n.clamp(1, 100) as f64
}

/// Histograms over `p_o` of correct and mistaken decisions of one procedure.
///
/// Bins are centred on multiples of the width, bin `k` covering
/// `[(k−½)w, (k+½)w)`. Masses are fractions of all records seen.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityBins {
    pub procedure: Procedure,
    pub benchmark: Procedure,
    pub bin_width: f64,
    pub correct: Vec<u64>,
    pub mistakes: Vec<u64>,
    pub fails: u64,
    pub excluded: u64,
    /// Lowest and highest `p_o` where the benchmark retains H0.
    pub h0_band: Option<(f64, f64)>,
}

impl DensityBins {
    pub fn new(procedure: Procedure, benchmark: Procedure, bin_width: f64) -> Self {
        let bins = (1.0 / bin_width).round() as usize + 1;
        DensityBins {
            procedure,
            benchmark,
            bin_width,
            correct: vec![0; bins],
            mistakes: vec![0; bins],
            fails: 0,
            excluded: 0,
            h0_band: None,
        }
    }

    pub fn bin_of(&self, p_o: f64) -> usize {
        ((p_o / self.bin_width).round() as usize).min(self.correct.len() - 1)
    }

    pub fn bin_center(&self, k: usize) -> f64 {
        k as f64 * self.bin_width
    }

    pub fn total(&self) -> u64 {
        self.correct.iter().sum::<u64>() + self.mistakes.iter().sum::<u64>() + self.fails + self.excluded
    }

    /// Mass of bin `k` in the correct and mistake histograms.
    pub fn mass(&self, k: usize) -> (f64, f64) {
        let total = self.total().max(1) as f64;
        (self.correct[k] as f64 / total, self.mistakes[k] as f64 / total)
    }

    pub fn add(&mut self, records: &[StudyRecord]) -> Result<(), StudyError> {
        let missing = |p: Procedure| StudyError::Config(format!("records carry no decision for `{p}`"));
        for rec in records {
            let bench = rec.decision(self.benchmark).ok_or_else(|| missing(self.benchmark))?.region;
            let scored = rec.decision(self.procedure).ok_or_else(|| missing(self.procedure))?.region;
            let p_o = rec.p_o();
            if bench == Region::H0 {
                self.h0_band = Some(self.h0_band.map_or((p_o, p_o), |(lo, hi)| (lo.min(p_o), hi.max(p_o))));
            }
            if bench == Region::Fail {
                self.excluded += 1;
            } else if scored == Region::Fail {
                self.fails += 1;
            } else {
                let k = self.bin_of(p_o);
                if is_mistake(scored, bench, self.procedure.is_undirected()) {
                    self.mistakes[k] += 1;
                } else {
                    self.correct[k] += 1;
                }
            }
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &DensityBins) {
        for (a, b) in self.correct.iter_mut().zip(&other.correct) {
            *a += b;
        }
        for (a, b) in self.mistakes.iter_mut().zip(&other.mistakes) {
            *a += b;
        }
        self.fails += other.fails;
        self.excluded += other.excluded;
        self.h0_band = match (self.h0_band, other.h0_band) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (x, None) | (None, x) => x,
        };
    }
}

/// Correct/mistake histograms of `procedure` against `benchmark`.
pub fn density_bins(
    records: &[StudyRecord],
    procedure: Procedure,
    benchmark: Procedure,
    bin_width: f64,
) -> Result<DensityBins, StudyError> {
    let mut d = DensityBins::new(procedure, benchmark, bin_width);
    d.add(records)?;
    Ok(d)
}
