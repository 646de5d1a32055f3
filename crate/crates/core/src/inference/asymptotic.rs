use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::function::erf::erfc;

use super::{TestMethod, TestResult};
use crate::estimators::{cohen_kappa, gwet_ac1, pearson_r, Fail};
use crate::table::Table2x2;

/// Two-sided p-value of a standard normal statistic.
pub fn normal_two_sided(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2).min(1.0)
}

fn t_two_sided(t: f64, df: f64) -> f64 {
    let dist = StudentsT::new(0.0, 1.0, df).expect("df > 0");
    (2.0 * dist.sf(t.abs())).min(1.0)
}

/// Lienert's u test of G: under H0 the number of agreements is
/// Binomial(n, ½), approximated by a normal with mean n/2 and variance n/4.
pub fn lienert_u_test(t: &Table2x2) -> TestResult {
    let n = t.n() as f64;
    let u = ((t.a() + t.d()) as f64 - n / 2.0) / (n / 4.0).sqrt();
    TestResult {
        statistic: u,
        p_value: Some(normal_two_sided(u)),
        interval: None,
        null_value: 0.0,
        method: TestMethod::LienertU,
    }
}

/// z test of Cohen's κ using the standard error under independence.
///
/// Fails when κ fails or any row or column is empty.
pub fn kappa_asymptotic_test(t: &Table2x2) -> Result<TestResult, Fail> {
    let kappa = cohen_kappa(t)?;
    if t.has_empty_marginal() {
        return Err(Fail::Undefined);
    }
    let n = t.n() as f64;
    let [r1, r2, c1, c2] = t.marginals().map(|m| m as f64 / n);
    let pc = r1 * c1 + r2 * c2;
    let cross = r1 * c1 * (r1 + c1) + r2 * c2 * (r2 + c2);
    let var0 = (pc + pc * pc - cross) / (n * (1.0 - pc) * (1.0 - pc));
    if !(var0 > 0.0 && var0.is_finite()) {
        return Err(Fail::Undefined);
    }
    let z = kappa / var0.sqrt();
    Ok(TestResult {
        statistic: z,
        p_value: Some(normal_two_sided(z)),
        interval: None,
        null_value: 0.0,
        method: TestMethod::KappaZ,
    })
}

/// t test of Pearson's r with n−2 degrees of freedom.
pub fn pearson_r_test(t: &Table2x2) -> Result<TestResult, Fail> {
    let r = pearson_r(t)?;
    let n = t.n() as f64;
    if n <= 2.0 {
        return Err(Fail::Undefined);
    }
    if r.abs() >= 1.0 {
        let stat = r.signum() * f64::INFINITY;
        return Ok(TestResult {
            statistic: stat,
            p_value: Some(0.0),
            interval: None,
            null_value: 0.0,
            method: TestMethod::PearsonT,
        });
    }
    let stat = r * (n - 2.0).sqrt() / (1.0 - r * r).sqrt();
    Ok(TestResult {
        statistic: stat,
        p_value: Some(t_two_sided(stat, n - 2.0)),
        interval: None,
        null_value: 0.0,
        method: TestMethod::PearsonT,
    })
}

/// Variance of AC1 from subject-level contributions.
///
/// Subjects fall into three groups: both positive (a), both negative (d),
/// and discordant (b+c). Returns `None` when the variance is degenerate.
pub fn ac1_variance(t: &Table2x2) -> Option<f64> {
    let n = t.n() as f64;
    if t.n() < 2 {
        return None;
    }
    let ac1 = gwet_ac1(t).ok()?;
    let pi1 = (2 * t.a() + t.b() + t.c()) as f64 / (2.0 * n);
    let pi2 = 1.0 - pi1;
    let pe = 2.0 * pi1 * pi2;
    let groups = [(t.a(), 1.0, pi2), (t.d(), 1.0, pi1), (t.b() + t.c(), 0.0, 0.5)];
    let mut ss = 0.0;
    for (count, pa_i, pe_i) in groups {
        let ac1_i = (pa_i - pe) / (1.0 - pe);
        let x = ac1_i - 2.0 * (1.0 - ac1) * (pe_i - pe) / (1.0 - pe);
        ss += count as f64 * (x - ac1) * (x - ac1);
    }
    let var = ss / (n * (n - 1.0));
    (var > 0.0 && var.is_finite()).then_some(var)
}

/// t test of AC1 with n−1 degrees of freedom.
///
/// Returns `Ok(None)` when the variance degenerates so the caller can fall
/// back to the bootstrap.
pub fn ac1_test(t: &Table2x2) -> Result<Option<TestResult>, Fail> {
    let ac1 = gwet_ac1(t)?;
    let Some(var) = ac1_variance(t) else {
        return Ok(None);
    };
    let stat = ac1 / var.sqrt();
    let p = t_two_sided(stat, t.n() as f64 - 1.0);
    Ok(Some(TestResult {
        statistic: stat,
        p_value: Some(p),
        interval: None,
        null_value: 0.0,
        method: TestMethod::Ac1T,
    }))
}
