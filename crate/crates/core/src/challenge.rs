//! Built-in challenge tables: hand-made scenarios of agreement, disagreement
//! and neutrality, with a second set carrying zeros and ones in some cells.

use crate::estimators::{EstimateValue, EstimatorId};
use crate::table::Table2x2;

/// A labelled challenge scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChallengeTable {
    pub label: &'static str,
    pub cells: [u64; 4],
}

impl ChallengeTable {
    pub fn table(&self) -> Table2x2 {
        let [a, b, c, d] = self.cells;
        Table2x2::from_counts(a, b, c, d).expect("challenge tables are non-empty")
    }
}

const fn ct(label: &'static str, a: u64, b: u64, c: u64, d: u64) -> ChallengeTable {
    ChallengeTable { label, cells: [a, b, c, d] }
}

/// Balanced scenarios.
pub const REGULAR: [ChallengeTable; 9] = [
    ct("agr.high", 90, 10, 10, 90),
    ct("agr.high", 90, 11, 9, 90),
    ct("agr.low", 60, 41, 39, 60),
    ct("dis.high", 10, 90, 90, 10),
    ct("dis.high", 10, 91, 89, 10),
    ct("dis.low", 41, 60, 60, 39),
    ct("neutral", 50, 50, 50, 50),
    ct("neutral", 75, 25, 75, 25),
    ct("dis. a/c=b/d", 44, 88, 22, 44),
];

/// Scenarios with unitary or null cells.
pub const EXTREME: [ChallengeTable; 8] = [
    ct("agr. c=1", 94, 11, 1, 94),
    ct("dis. d=1", 11, 94, 94, 1),
    ct("agr. b=1, c=1", 99, 1, 1, 99),
    ct("agr. b=0, c=1", 100, 0, 1, 99),
    ct("agr. d=0", 180, 10, 10, 0),
    ct("dis. d=0", 10, 180, 10, 0),
    ct("agr. c=0, d=0", 190, 10, 0, 0),
    ct("dis. c=0, d=0", 10, 190, 0, 0),
];

/// Estimator rows of the challenge report, in display order.
pub const ROWS: [EstimatorId; 13] = [
    EstimatorId::G,
    EstimatorId::Ac1,
    EstimatorId::Pi,
    EstimatorId::Kappa,
    EstimatorId::KappaCorrected,
    EstimatorId::R,
    EstimatorId::Q,
    EstimatorId::Y,
    EstimatorId::B,
    EstimatorId::BAdj,
    EstimatorId::F1,
    EstimatorId::F1Adj,
    EstimatorId::McNemarNorm,
];

/// Value grid `[row][column]` for a set of challenge tables.
pub fn challenge_grid(set: &[ChallengeTable]) -> Vec<Vec<EstimateValue>> {
    ROWS.iter().map(|&id| set.iter().map(|t| id.evaluate(&t.table())).collect()).collect()
}

/// Five-decimal rendering with `div/0` for fails.
pub fn format_cell(v: EstimateValue) -> String {
    match v {
        Ok(x) => {
            let s = format!("{x:.5}");
            if s == "-0.00000" {
                "0.00000".to_string()
            } else {
                s
            }
        }
        Err(_) => "div/0".to_string(),
    }
}
