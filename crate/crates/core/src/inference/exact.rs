use statrs::function::factorial::ln_binomial;

use super::{TestMethod, TestResult};
use crate::estimators::{yule_q, Fail};
use crate::table::Table2x2;

/// Fisher's exact conditional test of independence, two-sided.
///
/// Outcomes no more likely than the observed one are summed, with a relative
/// tolerance of 1e-7 on the comparison. Fails on any empty row or column.
pub fn exact_q_test(t: &Table2x2) -> Result<TestResult, Fail> {
    if t.has_empty_marginal() {
        return Err(Fail::Undefined);
    }
    let statistic = yule_q(t)?;
    let p = fisher_p(t);
    Ok(TestResult { statistic, p_value: Some(p), interval: None, null_value: 0.0, method: TestMethod::FisherExact })
}

fn fisher_p(t: &Table2x2) -> f64 {
    let [r1, r2, c1, _] = t.marginals();
    let lo = c1.saturating_sub(r2);
    let hi = r1.min(c1);
    let log_d: Vec<f64> = (lo..=hi).map(|x| ln_binomial(r1, x) + ln_binomial(r2, c1 - x)).collect();
    let max = log_d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let d: Vec<f64> = log_d.iter().map(|v| (v - max).exp()).collect();
    let total: f64 = d.iter().sum();
    let observed = d[(t.a() - lo) as usize];
    let cutoff = observed * (1.0 + 1e-7);
    let p: f64 = d.iter().filter(|&&v| v <= cutoff).sum::<f64>() / total;
    p.min(1.0)
}

/// Exact binomial test of `b` successes in `b + c` trials with p = ½.
pub fn mcnemar_exact_test(t: &Table2x2) -> Result<TestResult, Fail> {
    let m = t.b() + t.c();
    if m == 0 {
        return Err(Fail::DivisionByZero);
    }
    let ln_half = -(m as f64) * std::f64::consts::LN_2;
    let tail: f64 = (0..=t.b().min(t.c())).map(|i| (ln_binomial(m, i) + ln_half).exp()).sum();
    let p = (2.0 * tail).min(1.0);
    let statistic = crate::estimators::mcnemar_chi2(t)?;
    Ok(TestResult { statistic, p_value: Some(p), interval: None, null_value: 0.0, method: TestMethod::McNemarExact })
}
