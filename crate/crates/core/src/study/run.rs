use rayon::prelude::*;

use crate::error::{StudyError, TableError};
use crate::estimators::{estimate_all, EstimateVector};
use crate::inference::{infer_table, lienert_u_test, DecisionSet, InferenceConfig, Procedure};
use crate::table::{count_tables, enumerate_tables, Table2x2};

/// One enumerated table with its estimates and, optionally, decisions.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyRecord {
    pub table: Table2x2,
    pub estimates: EstimateVector,
    pub decisions: Option<DecisionSet>,
}

impl StudyRecord {
    pub fn new(table: Table2x2, inference: Option<&InferenceConfig>) -> Self {
        let estimates = estimate_all(&table);
        let decisions = inference.map(|cfg| infer_table(&table, &estimates, cfg));
        StudyRecord { table, estimates, decisions }
    }

    pub fn p_o(&self) -> f64 {
        self.estimates.p_o
    }

    pub fn decision(&self, p: Procedure) -> Option<crate::inference::Decision> {
        self.decisions.as_ref().and_then(|d| d[p.index()])
    }
}

/// Evaluates a batch of tables in parallel, keeping input order.
pub fn study_tables(tables: &[Table2x2], inference: Option<&InferenceConfig>) -> Vec<StudyRecord> {
    tables.par_iter().map(|t| StudyRecord::new(*t, inference)).collect()
}

/// Runs every table with total in `from..=to`, one size at a time.
///
/// Each size is evaluated in parallel and handed to `sink` in enumeration
/// order, so only one size is held in memory. Returns the number of records.
pub fn run_study<F>(from: u64, to: u64, inference: Option<&InferenceConfig>, mut sink: F) -> Result<u64, StudyError>
where
    F: FnMut(u64, &[StudyRecord]) -> Result<(), StudyError>,
{
    count_tables(from, to)?;
    if let Some(cfg) = inference {
        cfg.validate().map_err(StudyError::Config)?;
    }
    let mut total = 0;
    for n in from..=to {
        let tables: Vec<Table2x2> = enumerate_tables(n)?.collect();
        let records = study_tables(&tables, inference);
        total += records.len() as u64;
        sink(n, &records)?;
    }
    Ok(total)
}

/// Range of agreement proportions for which Lienert's u test retains H0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H0Band {
    pub n: u64,
    /// Smallest and largest `a+d` retained.
    pub lo_count: u64,
    pub hi_count: u64,
}

impl H0Band {
    pub fn lo(&self) -> f64 {
        self.lo_count as f64 / self.n as f64
    }

    pub fn hi(&self) -> f64 {
        self.hi_count as f64 / self.n as f64
    }

    pub fn contains_count(&self, agreements: u64) -> bool {
        (self.lo_count..=self.hi_count).contains(&agreements)
    }
}

/// H0 band of G at size `n` and level `alpha`.
pub fn g_h0_interval(n: u64, alpha: f64) -> Result<H0Band, TableError> {
    if n < 1 {
        return Err(TableError::InvalidSize(n as i64));
    }
    let retained = |k: u64| {
        let t = Table2x2::from_counts(k, n - k, 0, 0).expect("n >= 1");
        lienert_u_test(&t).p_value.expect("always has p") >= alpha
    };
    let kept: Vec<u64> = (0..=n).filter(|&k| retained(k)).collect();
    // u is symmetric about n/2, so the retained set is never empty.
    Ok(H0Band { n, lo_count: kept[0], hi_count: *kept.last().expect("non-empty") })
}
