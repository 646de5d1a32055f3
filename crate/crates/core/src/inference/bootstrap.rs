use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::hdi::hdi_sorted;
use super::{TestMethod, TestResult};
use crate::estimators::{EstimatorId, Fail};
use crate::table::Table2x2;

/// Resampling settings. The same config and table always give the same draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub seed: u64,
    pub mass: f64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig { resamples: 10_000, seed: 0, mass: 0.95 }
    }
}

impl BootstrapConfig {
    pub const MIN_RESAMPLES: usize = 100;

    pub fn validate(&self) -> Result<(), String> {
        if self.resamples < Self::MIN_RESAMPLES {
            return Err(format!("bootstrap needs at least {} resamples, got {}", Self::MIN_RESAMPLES, self.resamples));
        }
        if !(self.mass > 0.0 && self.mass < 1.0) {
            return Err(format!("HDI mass must lie in (0, 1), got {}", self.mass));
        }
        Ok(())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-table random stream keyed by the base seed and the table content, so
/// scheduling order never changes a result.
pub fn table_rng(seed: u64, t: &Table2x2) -> ChaCha8Rng {
    let mut h = splitmix64(seed);
    for x in [t.n(), t.a(), t.b(), t.c(), t.d()] {
        h = splitmix64(h ^ x);
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn binomial<R: Rng + ?Sized>(rng: &mut R, trials: u64, p: f64) -> u64 {
    if trials == 0 || p <= 0.0 {
        0
    } else if p >= 1.0 {
        trials
    } else {
        Binomial::new(trials, p).expect("p in (0, 1)").sample(rng)
    }
}

/// One multinomial resample of `n` subjects with cell probabilities
/// `(a, b, c, d)/n`, drawn as a chain of conditional binomials.
pub fn bootstrap_resample<R: Rng + ?Sized>(t: &Table2x2, rng: &mut R) -> Table2x2 {
    let n = t.n();
    let [a, b, c, _] = t.cells();
    let ra = binomial(rng, n, a as f64 / n as f64);
    let rest = n - a;
    let rb = binomial(rng, n - ra, if rest == 0 { 0.0 } else { b as f64 / rest as f64 });
    let rest = rest - b;
    let rc = binomial(rng, n - ra - rb, if rest == 0 { 0.0 } else { c as f64 / rest as f64 });
    Table2x2::from_counts(ra, rb, rc, n - ra - rb - rc).expect("resample keeps n")
}

/// Bootstrap distribution of one estimator, with failed resamples dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapSample {
    pub estimator: EstimatorId,
    /// Sorted ascending.
    pub values: Vec<f64>,
    pub dropped: usize,
}

impl BootstrapSample {
    /// HDI of the kept values, or a fail when more than half were dropped.
    pub fn interval(&self, mass: f64) -> Result<(f64, f64), Fail> {
        if self.dropped * 2 > self.values.len() + self.dropped || self.values.len() < 2 {
            return Err(Fail::Undefined);
        }
        Ok(hdi_sorted(&self.values, mass))
    }
}

/// Draws `cfg.resamples` tables once and evaluates every listed estimator on
/// each, so that all estimators see the same resamples.
pub fn bootstrap_samples(t: &Table2x2, estimators: &[EstimatorId], cfg: &BootstrapConfig) -> Vec<BootstrapSample> {
    let mut rng = table_rng(cfg.seed, t);
    let mut out: Vec<BootstrapSample> = estimators
        .iter()
        .map(|&estimator| BootstrapSample { estimator, values: Vec::with_capacity(cfg.resamples), dropped: 0 })
        .collect();
    if out.is_empty() {
        return out;
    }
    for _ in 0..cfg.resamples {
        let r = bootstrap_resample(t, &mut rng);
        for s in &mut out {
            match s.estimator.evaluate(&r) {
                Ok(v) => s.values.push(v),
                Err(_) => s.dropped += 1,
            }
        }
    }
    for s in &mut out {
        s.values.sort_unstable_by(f64::total_cmp);
    }
    out
}

/// Bootstrap HDI test of `estimator` against `null`.
///
/// The statistic is the point estimate on the original table. Fails when the
/// estimator fails on the original table or on more than half of the resamples.
pub fn bootstrap_test(
    t: &Table2x2,
    estimator: EstimatorId,
    null: f64,
    cfg: &BootstrapConfig,
) -> Result<TestResult, Fail> {
    let point = estimator.evaluate(t)?;
    let sample = bootstrap_samples(t, &[estimator], cfg).pop().expect("one estimator");
    test_from_sample(point, null, &sample, cfg.mass)
}

pub(crate) fn test_from_sample(point: f64, null: f64, sample: &BootstrapSample, mass: f64) -> Result<TestResult, Fail> {
    let interval = sample.interval(mass)?;
    Ok(TestResult {
        statistic: point,
        p_value: None,
        interval: Some(interval),
        null_value: null,
        method: TestMethod::Bootstrap,
    })
}
