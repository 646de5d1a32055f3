use super::run::StudyRecord;
use crate::error::StudyError;
use crate::inference::{Procedure, Region};

/// Whether `scored` disagrees with `benchmark`. Undirected decisions on
/// either side are compared on the reject/retain partition only.
pub fn is_mistake(scored: Region, benchmark: Region, undirected: bool) -> bool {
    if undirected || benchmark == Region::Reject || scored == Region::Reject {
        scored.is_rejection() != benchmark.is_rejection()
    } else {
        scored != benchmark
    }
}

/// Decision agreement counts of one procedure against the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MistakeCounts {
    pub correct: u64,
    pub mistakes: u64,
    pub fails: u64,
    /// Tables where the benchmark itself failed.
    pub excluded: u64,
    /// Mistakes split by benchmark region: H1−, H0, H1+ (undirected
    /// benchmark rejections go to H1+).
    pub mistakes_by_region: [u64; 3],
}

impl MistakeCounts {
    pub fn total(&self) -> u64 {
        self.correct + self.mistakes + self.fails + self.excluded
    }

    pub fn mistake_fraction(&self) -> f64 {
        ratio(self.mistakes, self.total())
    }

    pub fn fail_fraction(&self) -> f64 {
        ratio(self.fails, self.total())
    }

    pub fn merge(&mut self, other: &MistakeCounts) {
        self.correct += other.correct;
        self.mistakes += other.mistakes;
        self.fails += other.fails;
        self.excluded += other.excluded;
        for (a, b) in self.mistakes_by_region.iter_mut().zip(other.mistakes_by_region) {
            *a += b;
        }
    }

    fn record(&mut self, scored: Region, benchmark: Region, undirected: bool) {
        if benchmark == Region::Fail {
            self.excluded += 1;
        } else if scored == Region::Fail {
            self.fails += 1;
        } else if is_mistake(scored, benchmark, undirected) {
            self.mistakes += 1;
            let slot = match benchmark {
                Region::H1Minus => 0,
                Region::H0 => 1,
                _ => 2,
            };
            self.mistakes_by_region[slot] += 1;
        } else {
            self.correct += 1;
        }
    }
}

fn ratio(x: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        x as f64 / total as f64
    }
}

/// Per-procedure mistake counts against one benchmark procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct MistakeSummary {
    pub benchmark: Procedure,
    pub rows: Vec<(Procedure, MistakeCounts)>,
}

impl MistakeSummary {
    pub fn empty(benchmark: Procedure, scored: &[Procedure]) -> Self {
        MistakeSummary { benchmark, rows: scored.iter().map(|&p| (p, MistakeCounts::default())).collect() }
    }

    pub fn get(&self, p: Procedure) -> Option<&MistakeCounts> {
        self.rows.iter().find(|(q, _)| *q == p).map(|(_, c)| c)
    }

    /// Adds a batch of records. Fails if a needed decision is missing.
    pub fn add(&mut self, records: &[StudyRecord]) -> Result<(), StudyError> {
        for rec in records {
            let bench = rec.decision(self.benchmark).ok_or_else(|| missing(self.benchmark))?.region;
            for (p, counts) in &mut self.rows {
                let scored = rec.decision(*p).ok_or_else(|| missing(*p))?.region;
                counts.record(scored, bench, p.is_undirected());
            }
        }
        Ok(())
    }

    /// Adds another summary over the same procedures.
    pub fn merge(&mut self, other: &MistakeSummary) {
        for ((p, a), (q, b)) in self.rows.iter_mut().zip(&other.rows) {
            debug_assert_eq!(p, q);
            a.merge(b);
        }
    }
}

fn missing(p: Procedure) -> StudyError {
    StudyError::Config(format!("records carry no decision for `{p}`"))
}

/// Mistake counts of every scored procedure against `benchmark`.
pub fn mistake_summary(
    records: &[StudyRecord],
    benchmark: Procedure,
    scored: &[Procedure],
) -> Result<MistakeSummary, StudyError> {
    let mut s = MistakeSummary::empty(benchmark, scored);
    s.add(records)?;
    Ok(s)
}

/// One candidate's score when taken as the benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkScore {
    pub candidate: Procedure,
    /// Uniform mean over the other candidates of the fraction of tables
    /// that are mistakes or where this candidate fails.
    pub global_mistakes: f64,
    /// Lowest and highest `p_o` among tables this candidate retains.
    pub h0_band: Option<(f64, f64)>,
}

impl BenchmarkScore {
    pub fn band_width(&self) -> Option<f64> {
        self.h0_band.map(|(lo, hi)| hi - lo)
    }

    pub fn band_center(&self) -> Option<f64> {
        self.h0_band.map(|(lo, hi)| (lo + hi) / 2.0)
    }
}

/// Scores each candidate as benchmark and ranks ascending by global mistakes.
pub fn benchmark_selection(
    records: &[StudyRecord],
    candidates: &[Procedure],
) -> Result<Vec<BenchmarkScore>, StudyError> {
    let mut scores = Vec::with_capacity(candidates.len());
    for &cand in candidates {
        let others: Vec<Procedure> = candidates.iter().copied().filter(|&p| p != cand).collect();
        let summary = mistake_summary(records, cand, &others)?;
        let global_mistakes = if others.is_empty() {
            0.0
        } else {
            summary.rows.iter().map(|(_, c)| ratio(c.mistakes + c.excluded, c.total())).sum::<f64>()
                / others.len() as f64
        };
        let mut band: Option<(f64, f64)> = None;
        for rec in records {
            if rec.decision(cand).map(|d| d.region) == Some(Region::H0) {
                let p = rec.p_o();
                band = Some(band.map_or((p, p), |(lo, hi)| (lo.min(p), hi.max(p))));
            }
        }
        scores.push(BenchmarkScore { candidate: cand, global_mistakes, h0_band: band });
    }
    scores.sort_by(|a, b| a.global_mistakes.total_cmp(&b.global_mistakes).then(a.candidate.cmp(&b.candidate)));
    Ok(scores)
}
