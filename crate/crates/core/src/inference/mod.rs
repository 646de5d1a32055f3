//! Inferential decisions for each estimator on a single table.
//!
//! Tests return a [`TestResult`] without applying a significance level;
//! [`decide`] turns one into a [`Decision`] at a given `alpha`.

mod asymptotic;
mod bootstrap;
mod exact;
mod hdi;

use std::fmt;
use std::str::FromStr;

pub use asymptotic::{ac1_test, ac1_variance, kappa_asymptotic_test, lienert_u_test, normal_two_sided, pearson_r_test};
pub use bootstrap::{
    bootstrap_resample, bootstrap_samples, bootstrap_test, table_rng, BootstrapConfig, BootstrapSample,
};
pub use exact::{exact_q_test, mcnemar_exact_test};
pub use hdi::{hdi, hdi_sorted};

use crate::estimators::{EstimateValue, EstimateVector, EstimatorId, Fail};
use crate::table::Table2x2;

/// Outcome region of a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Rejected toward disagreement.
    H1Minus,
    H0,
    /// Rejected toward agreement.
    H1Plus,
    /// Rejected without a direction (McNemar-type statistics).
    Reject,
    Fail,
}

impl Region {
    /// CSV code: −1, 0, 1, with undirected rejections written as 1.
    pub fn code(self) -> Option<i8> {
        match self {
            Region::H1Minus => Some(-1),
            Region::H0 => Some(0),
            Region::H1Plus | Region::Reject => Some(1),
            Region::Fail => None,
        }
    }

    pub fn is_rejection(self) -> bool {
        matches!(self, Region::H1Minus | Region::H1Plus | Region::Reject)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::H1Minus => "H1-",
            Region::H0 => "H0",
            Region::H1Plus => "H1+",
            Region::Reject => "reject",
            Region::Fail => "fail",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub region: Region,
    pub p_value: Option<f64>,
    /// 1 when the null value lies inside the bootstrap HDI.
    pub pbin: Option<u8>,
}

impl Decision {
    pub const FAIL: Decision = Decision { region: Region::Fail, p_value: None, pbin: None };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestMethod {
    LienertU,
    KappaZ,
    FisherExact,
    McNemarExact,
    PearsonT,
    Ac1T,
    Bootstrap,
}

impl fmt::Display for TestMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TestMethod::LienertU => "Lienert u",
            TestMethod::KappaZ => "kappa z",
            TestMethod::FisherExact => "Fisher exact",
            TestMethod::McNemarExact => "McNemar exact",
            TestMethod::PearsonT => "Pearson t",
            TestMethod::Ac1T => "AC1 t",
            TestMethod::Bootstrap => "bootstrap HDI",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: Option<f64>,
    /// Bootstrap HDI, `lo ≤ hi`.
    pub interval: Option<(f64, f64)>,
    /// Value the interval is checked against.
    pub null_value: f64,
    pub method: TestMethod,
}

impl TestResult {
    /// Whether H0 is rejected at `alpha`; HDI-based results ignore `alpha`.
    pub fn rejects(&self, alpha: f64) -> bool {
        match (self.p_value, self.interval) {
            (Some(p), _) => p < alpha,
            (None, Some((lo, hi))) => !(lo <= self.null_value && self.null_value <= hi),
            (None, None) => false,
        }
    }

    pub fn pbin(&self) -> Option<u8> {
        self.interval.map(|(lo, hi)| u8::from(lo <= self.null_value && self.null_value <= hi))
    }
}

/// Directed decision: H0 when not rejected, otherwise H1+ or H1− by the sign
/// of `direction` (a signed or rescaled point estimate).
pub fn decide(direction: EstimateValue, test: &Result<TestResult, Fail>, alpha: f64) -> Decision {
    let (Ok(direction), Ok(test)) = (direction, test) else {
        return Decision::FAIL;
    };
    let region = if !test.rejects(alpha) {
        Region::H0
    } else if direction > 0.0 {
        Region::H1Plus
    } else if direction < 0.0 {
        Region::H1Minus
    } else {
        Region::H0
    };
    Decision { region, p_value: test.p_value, pbin: test.pbin() }
}

/// Undirected decision: H0 or [`Region::Reject`].
pub fn decide_undirected(test: &Result<TestResult, Fail>, alpha: f64) -> Decision {
    let Ok(test) = test else {
        return Decision::FAIL;
    };
    let region = if test.rejects(alpha) { Region::Reject } else { Region::H0 };
    Decision { region, p_value: test.p_value, pbin: test.pbin() }
}

/// Tables at or below this size test G by bootstrap instead of Lienert's u.
pub const LIENERT_MIN_N: u64 = 31;

/// An estimator together with the way it is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Procedure {
    /// G by Lienert's u for n > 30, by bootstrap otherwise. The benchmark.
    G,
    /// G always by bootstrap.
    Sac,
    Ac1,
    Pi,
    Kappa,
    R,
    Y,
    Q,
    BAdj,
    B,
    F1,
    Mn,
    /// McNemar's χ² by the exact binomial test.
    McNemarChi2,
}

impl Procedure {
    pub const COUNT: usize = 13;

    pub const ALL: [Procedure; Self::COUNT] = [
        Procedure::G,
        Procedure::Sac,
        Procedure::Ac1,
        Procedure::Pi,
        Procedure::Kappa,
        Procedure::R,
        Procedure::Y,
        Procedure::Q,
        Procedure::BAdj,
        Procedure::B,
        Procedure::F1,
        Procedure::Mn,
        Procedure::McNemarChi2,
    ];

    /// The twelve procedures compared in the n = 64 decision study.
    pub const STUDY: [Procedure; 12] = [
        Procedure::G,
        Procedure::Sac,
        Procedure::Ac1,
        Procedure::Pi,
        Procedure::Kappa,
        Procedure::R,
        Procedure::Y,
        Procedure::Q,
        Procedure::BAdj,
        Procedure::B,
        Procedure::F1,
        Procedure::Mn,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Procedure::G => "g",
            Procedure::Sac => "sac",
            Procedure::Ac1 => "ac1",
            Procedure::Pi => "pi",
            Procedure::Kappa => "kappa",
            Procedure::R => "r",
            Procedure::Y => "y",
            Procedure::Q => "q",
            Procedure::BAdj => "b_adj",
            Procedure::B => "b",
            Procedure::F1 => "f1",
            Procedure::Mn => "mn_norm",
            Procedure::McNemarChi2 => "mn_chi2",
        }
    }

    /// CSV column holding this procedure's decision.
    pub fn column(self) -> String {
        format!("dec_{}", self.name())
    }

    /// Estimator whose value is reported with this procedure.
    pub fn estimator(self) -> EstimatorId {
        match self {
            Procedure::G | Procedure::Sac => EstimatorId::G,
            Procedure::Ac1 => EstimatorId::Ac1,
            Procedure::Pi => EstimatorId::Pi,
            Procedure::Kappa => EstimatorId::Kappa,
            Procedure::R => EstimatorId::R,
            Procedure::Y => EstimatorId::Y,
            Procedure::Q => EstimatorId::Q,
            Procedure::BAdj => EstimatorId::BAdj,
            Procedure::B => EstimatorId::B,
            Procedure::F1 => EstimatorId::F1,
            Procedure::Mn => EstimatorId::McNemarNorm,
            Procedure::McNemarChi2 => EstimatorId::McNemarChi2,
        }
    }

    /// Rejections carry no direction.
    pub fn is_undirected(self) -> bool {
        matches!(self, Procedure::Mn | Procedure::McNemarChi2)
    }

    /// Test used at table size `n`. AC1 reports its t test even on tables
    /// where it falls back to the bootstrap.
    pub fn method(self, n: u64) -> TestMethod {
        if self.bootstrap_rule(n).is_some() {
            return TestMethod::Bootstrap;
        }
        match self {
            Procedure::G => TestMethod::LienertU,
            Procedure::Kappa => TestMethod::KappaZ,
            Procedure::R => TestMethod::PearsonT,
            Procedure::Q => TestMethod::FisherExact,
            Procedure::McNemarChi2 => TestMethod::McNemarExact,
            _ => TestMethod::Ac1T,
        }
    }

    /// Bootstrap rule as (tested estimator, estimator giving the direction),
    /// always against 0. `None` for procedures with a closed-form test.
    fn bootstrap_rule(self, n: u64) -> Option<(EstimatorId, EstimatorId)> {
        match self {
            Procedure::G if n < LIENERT_MIN_N => Some((EstimatorId::G, EstimatorId::G)),
            Procedure::Sac => Some((EstimatorId::G, EstimatorId::G)),
            Procedure::Pi => Some((EstimatorId::Pi, EstimatorId::Pi)),
            Procedure::Y => Some((EstimatorId::Y, EstimatorId::Y)),
            Procedure::F1 => Some((EstimatorId::F1Adj, EstimatorId::F1Adj)),
            Procedure::BAdj => Some((EstimatorId::BAdj, EstimatorId::BAdj)),
            // Raw B against 0; being non-negative it can only reject towards agreement.
            Procedure::B => Some((EstimatorId::B, EstimatorId::B)),
            Procedure::Mn => Some((EstimatorId::McNemarNorm, EstimatorId::McNemarNorm)),
            _ => None,
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownProcedure(pub String);

impl fmt::Display for UnknownProcedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown procedure `{}`", self.0)
    }
}

impl std::error::Error for UnknownProcedure {}

impl FromStr for Procedure {
    type Err = UnknownProcedure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        Procedure::ALL.into_iter().find(|p| p.name() == key).ok_or_else(|| UnknownProcedure(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InferenceConfig {
    pub alpha: f64,
    pub bootstrap: BootstrapConfig,
    pub procedures: Vec<Procedure>,
}

impl Default for InferenceConfig {
    fn default() -> Self {
        InferenceConfig { alpha: 0.05, bootstrap: BootstrapConfig::default(), procedures: Procedure::STUDY.to_vec() }
    }
}

impl InferenceConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        self.bootstrap.validate()
    }
}

/// Decisions of one table, indexed by [`Procedure::index`]; `None` for
/// procedures that were not requested.
pub type DecisionSet = [Option<Decision>; Procedure::COUNT];

/// Bootstrap decision for a single estimator: H0 when 0 lies in the HDI.
///
/// F1 and B are tested on their rescaled forms; McNemar's normalised
/// statistic gets an undirected decision.
pub fn bootstrap_decision(t: &Table2x2, estimator: EstimatorId, cfg: &BootstrapConfig) -> Decision {
    let tested = match estimator {
        EstimatorId::F1 => EstimatorId::F1Adj,
        EstimatorId::B => EstimatorId::BAdj,
        other => other,
    };
    let test = bootstrap_test(t, tested, 0.0, cfg);
    if estimator == EstimatorId::McNemarNorm {
        decide_undirected(&test, 0.05)
    } else {
        decide(tested.evaluate(t), &test, 0.05)
    }
}

/// Runs every requested procedure on one table. Bootstrap procedures share
/// a single set of resamples drawn from the table's own stream.
pub fn infer_table(t: &Table2x2, est: &EstimateVector, cfg: &InferenceConfig) -> DecisionSet {
    let mut out: DecisionSet = [None; Procedure::COUNT];
    let n = t.n();

    // Closed-form tests first; AC1 may need the bootstrap afterwards.
    let mut ac1_fallback = false;
    for &p in &cfg.procedures {
        let decision = match p {
            Procedure::G if n >= LIENERT_MIN_N => decide(est.get(EstimatorId::G), &Ok(lienert_u_test(t)), cfg.alpha),
            Procedure::Ac1 => match ac1_test(t) {
                Ok(Some(test)) => decide(est.get(EstimatorId::Ac1), &Ok(test), cfg.alpha),
                Ok(None) => {
                    ac1_fallback = true;
                    continue;
                }
                Err(f) => decide(Err(f), &Err(f), cfg.alpha),
            },
            Procedure::Kappa => decide(est.get(EstimatorId::Kappa), &kappa_asymptotic_test(t), cfg.alpha),
            Procedure::R => decide(est.get(EstimatorId::R), &pearson_r_test(t), cfg.alpha),
            Procedure::Q => decide(est.get(EstimatorId::Q), &exact_q_test(t), cfg.alpha),
            Procedure::McNemarChi2 => decide_undirected(&mcnemar_exact_test(t), cfg.alpha),
            _ => continue,
        };
        out[p.index()] = Some(decision);
    }

    // Bootstrap: (procedure, tested estimator, direction estimator).
    let mut rules: Vec<(Procedure, EstimatorId, EstimatorId)> = Vec::new();
    for &p in &cfg.procedures {
        if let Some((tested, dir)) = p.bootstrap_rule(n) {
            rules.push((p, tested, dir));
        } else if p == Procedure::Ac1 && ac1_fallback {
            rules.push((p, EstimatorId::Ac1, EstimatorId::Ac1));
        }
    }
    // Point estimates that fail on the table itself decide Fail without resampling.
    rules.retain(|&(p, tested, _)| {
        if est.get(tested).is_err() {
            out[p.index()] = Some(Decision::FAIL);
            false
        } else {
            true
        }
    });
    if rules.is_empty() {
        return out;
    }
    let mut wanted: Vec<EstimatorId> = rules.iter().map(|r| r.1).collect();
    wanted.sort();
    wanted.dedup();
    let samples = bootstrap_samples(t, &wanted, &cfg.bootstrap);
    for (p, tested, dir) in rules {
        let sample = samples.iter().find(|s| s.estimator == tested).expect("sampled");
        let test = bootstrap::test_from_sample(est.get(tested).expect("checked"), 0.0, sample, cfg.bootstrap.mass);
        let decision = if p.is_undirected() {
            decide_undirected(&test, cfg.alpha)
        } else {
            decide(est.get(dir), &test, cfg.alpha)
        };
        out[p.index()] = Some(decision);
    }
    out
}
