//! Point estimators of agreement and association for a 2×2 table.
//!
//! Every estimator returns an [`EstimateValue`]: either a finite `f64` or a
//! typed [`Fail`]. Products of cells are formed in `i128` so that no
//! intermediate overflows for any realistic table.

use std::fmt;
use std::str::FromStr;

use crate::table::Table2x2;

/// Why an estimate could not be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fail {
    DivisionByZero,
    Undefined,
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fail::DivisionByZero => f.write_str("division by zero"),
            Fail::Undefined => f.write_str("undefined"),
        }
    }
}

impl std::error::Error for Fail {}

pub type EstimateValue = Result<f64, Fail>;

fn ratio(num: f64, den: f64) -> EstimateValue {
    if den == 0.0 {
        return Err(Fail::DivisionByZero);
    }
    let v = num / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Fail::Undefined)
    }
}

fn iratio(num: i128, den: i128) -> EstimateValue {
    ratio(num as f64, den as f64)
}

struct Cells {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
    n: i128,
}

fn cells(t: &Table2x2) -> Cells {
    let [a, b, c, d] = t.cells().map(i128::from);
    Cells { a, b, c, d, n: a + b + c + d }
}

/// Holley and Guilford's G, `(a+d−b−c)/n`.
pub fn holley_guilford_g(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, n } = cells(t);
    iratio(a + d - b - c, n)
}

/// Observed agreement `p_o = (a+d)/n`.
pub fn observed_agreement(t: &Table2x2) -> f64 {
    t.observed_agreement()
}

/// Chance agreement from the product of marginals, as used by Cohen's κ.
pub fn chance_agreement(t: &Table2x2) -> f64 {
    let Cells { a, b, c, d, n } = cells(t);
    ((a + b) * (a + c) + (c + d) * (b + d)) as f64 / (n * n) as f64
}

/// Cohen's κ, `2(ad−bc) / ((a+c)(c+d)+(b+d)(a+b))`.
pub fn cohen_kappa(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, .. } = cells(t);
    iratio(2 * (a * d - b * c), (a + c) * (c + d) + (b + d) * (a + b))
}

/// Maximum κ attainable under the observed marginals.
pub fn kappa_max(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, n } = cells(t);
    let s = (a + b) * (a + c) + (c + d) * (b + d);
    let diag_max = (a + c).min(a + b) + (b + d).min(c + d);
    iratio(n * diag_max - s, n * n - s)
}

/// κ/κ_M for positive κ, κ itself otherwise.
pub fn kappa_corrected(t: &Table2x2) -> EstimateValue {
    let k = cohen_kappa(t)?;
    if k > 0.0 {
        ratio(k, kappa_max(t)?)
    } else {
        Ok(k)
    }
}

/// Scott's π from the factored form `(4ad−(b+c)²) / ((2a+b+c)(2d+b+c))`.
pub fn scott_pi(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, .. } = cells(t);
    let off = b + c;
    iratio(4 * a * d - off * off, (2 * a + off) * (2 * d + off))
}

/// Scott's π by way of its chance agreement from pooled marginal proportions.
pub fn scott_pi_via_chance(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, n } = cells(t);
    let p_o = (a + d) as f64 / n as f64;
    let pos = (2 * a + b + c) as f64 / (2 * n) as f64;
    let neg = (2 * d + b + c) as f64 / (2 * n) as f64;
    let p_c = pos * pos + neg * neg;
    ratio(p_o - p_c, 1.0 - p_c)
}

/// Gwet's AC1.
pub fn gwet_ac1(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, .. } = cells(t);
    let diag2 = 2 * (a * a + d * d);
    let off = b + c;
    iratio(diag2 - off * off, diag2 + off * off + 2 * (a + d) * off)
}

/// Yule's Q, `(ad−bc)/(ad+bc)`.
pub fn yule_q(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, .. } = cells(t);
    iratio(a * d - b * c, a * d + b * c)
}

/// Yule's Y (coefficient of colligation).
pub fn yule_y(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, .. } = cells(t);
    let ad = ((a * d) as f64).sqrt();
    let bc = ((b * c) as f64).sqrt();
    ratio(ad - bc, ad + bc)
}

/// Odds ratio, its logarithm and the two risk ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioFamily {
    pub odds_ratio: EstimateValue,
    pub log_odds_ratio: EstimateValue,
    pub rr_pos: EstimateValue,
    pub rr_neg: EstimateValue,
}

pub fn ratio_family(t: &Table2x2) -> RatioFamily {
    let Cells { a, b, c, d, .. } = cells(t);
    let log_odds_ratio = if a * d == 0 || b * c == 0 {
        Err(Fail::Undefined)
    } else {
        Ok((a as f64).ln() + (d as f64).ln() - (b as f64).ln() - (c as f64).ln())
    };
    RatioFamily {
        odds_ratio: iratio(a * d, b * c),
        log_odds_ratio,
        rr_pos: iratio(a * (c + d), c * (a + b)),
        rr_neg: iratio(b * (c + d), d * (a + b)),
    }
}

fn marginal_product(t: &Table2x2) -> i128 {
    let Cells { a, b, c, d, .. } = cells(t);
    (a + b) * (a + c) * (b + d) * (c + d)
}

/// Pearson's X² for independence.
pub fn pearson_chi2(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, n } = cells(t);
    let det = (a * d - b * c) as f64;
    ratio(n as f64 * det * det, marginal_product(t) as f64)
}

/// Cramér's V, `|ad−bc| / √((a+b)(c+d)(a+c)(b+d))`.
pub fn cramer_v(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, .. } = cells(t);
    ratio((a * d - b * c).abs() as f64, (marginal_product(t) as f64).sqrt()).map(|v| v.min(1.0))
}

/// Pearson's contingency coefficient, `√(X²/(X²+n))`.
pub fn pcc(t: &Table2x2) -> EstimateValue {
    let chi2 = pearson_chi2(t)?;
    ratio(chi2, chi2 + t.n() as f64).map(f64::sqrt)
}

/// Pearson's r on the dichotomous ratings (φ, Matthews coefficient).
pub fn pearson_r(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, .. } = cells(t);
    ratio((a * d - b * c) as f64, (marginal_product(t) as f64).sqrt()).map(|v| v.clamp(-1.0, 1.0))
}

/// Hubert's Γ, `1 − 4(a+d)(b+c)/n²`.
pub fn hubert_gamma(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, d, n } = cells(t);
    iratio(n * n - 4 * (a + d) * (b + c), n * n)
}

/// McNemar's χ², `(b−c)²/(b+c)`.
pub fn mcnemar_chi2(t: &Table2x2) -> EstimateValue {
    let Cells { b, c, .. } = cells(t);
    iratio((b - c) * (b - c), b + c)
}

/// McNemar's statistic normalised to `[0, 1]`, `|b−c|/(b+c)`.
pub fn mcnemar_normalized(t: &Table2x2) -> EstimateValue {
    let Cells { b, c, .. } = cells(t);
    iratio((b - c).abs(), b + c)
}

/// Dice's F1, `2a/(2a+b+c)`.
pub fn dice_f1(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, .. } = cells(t);
    iratio(2 * a, 2 * a + b + c)
}

/// F1 rescaled to `[−1, 1]`.
pub fn f1_adj(t: &Table2x2) -> EstimateValue {
    let Cells { a, b, c, .. } = cells(t);
    iratio(2 * a - b - c, 2 * a + b + c)
}

fn bangdiwala_parts(t: &Table2x2) -> (i128, i128) {
    let Cells { a, b, c, d, .. } = cells(t);
    (a * a + d * d, (a + c) * (a + b) + (b + d) * (c + d))
}

/// Shankar and Bangdiwala's B.
pub fn bangdiwala_b(t: &Table2x2) -> EstimateValue {
    let (num, den) = bangdiwala_parts(t);
    iratio(num, den)
}

/// B rescaled to `[−1, 1]`.
pub fn b_adj(t: &Table2x2) -> EstimateValue {
    let (num, den) = bangdiwala_parts(t);
    iratio(2 * num - den, den)
}

/// φ reconstructed from G and the first row and column proportions.
///
/// `φ = (G/4 − (r1−½)(c1−½)) / √(r1·r2·c1·c2)`.
pub fn phi_from_g(g: f64, r1: f64, c1: f64) -> EstimateValue {
    let (r2, c2) = (1.0 - r1, 1.0 - c1);
    ratio(g / 4.0 - (r1 - 0.5) * (c1 - 0.5), (r1 * r2 * c1 * c2).sqrt())
}

/// κ reconstructed from G and the chance agreement, `((G+1)/2 − p_c)/(1 − p_c)`.
pub fn kappa_from_g(g: f64, p_c: f64) -> EstimateValue {
    ratio((g + 1.0) / 2.0 - p_c, 1.0 - p_c)
}

/// Identifier of every estimator carried in an [`EstimateVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorId {
    G,
    Kappa,
    KappaMax,
    KappaCorrected,
    Pi,
    Ac1,
    Q,
    Y,
    R,
    Chi2,
    CramerV,
    Pcc,
    McNemarChi2,
    McNemarNorm,
    F1,
    F1Adj,
    B,
    BAdj,
    Gamma,
    OddsRatio,
    LogOddsRatio,
    RrPos,
    RrNeg,
}

impl EstimatorId {
    pub const COUNT: usize = 23;

    pub const ALL: [EstimatorId; Self::COUNT] = [
        EstimatorId::G,
        EstimatorId::Kappa,
        EstimatorId::KappaMax,
        EstimatorId::KappaCorrected,
        EstimatorId::Pi,
        EstimatorId::Ac1,
        EstimatorId::Q,
        EstimatorId::Y,
        EstimatorId::R,
        EstimatorId::Chi2,
        EstimatorId::CramerV,
        EstimatorId::Pcc,
        EstimatorId::McNemarChi2,
        EstimatorId::McNemarNorm,
        EstimatorId::F1,
        EstimatorId::F1Adj,
        EstimatorId::B,
        EstimatorId::BAdj,
        EstimatorId::Gamma,
        EstimatorId::OddsRatio,
        EstimatorId::LogOddsRatio,
        EstimatorId::RrPos,
        EstimatorId::RrNeg,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Column name used in CSV output and on the command line.
    pub fn column(self) -> &'static str {
        match self {
            EstimatorId::G => "g",
            EstimatorId::Kappa => "kappa",
            EstimatorId::KappaMax => "kappa_max",
            EstimatorId::KappaCorrected => "kappa_corrected",
            EstimatorId::Pi => "pi",
            EstimatorId::Ac1 => "ac1",
            EstimatorId::Q => "q",
            EstimatorId::Y => "y",
            EstimatorId::R => "r",
            EstimatorId::Chi2 => "chi2",
            EstimatorId::CramerV => "cramer_v",
            EstimatorId::Pcc => "pcc",
            EstimatorId::McNemarChi2 => "mn_chi2",
            EstimatorId::McNemarNorm => "mn_norm",
            EstimatorId::F1 => "f1",
            EstimatorId::F1Adj => "f1_adj",
            EstimatorId::B => "b",
            EstimatorId::BAdj => "b_adj",
            EstimatorId::Gamma => "gamma",
            EstimatorId::OddsRatio => "or",
            EstimatorId::LogOddsRatio => "log_or",
            EstimatorId::RrPos => "rr_pos",
            EstimatorId::RrNeg => "rr_neg",
        }
    }

    /// Human-readable name.
    pub fn label(self) -> &'static str {
        match self {
            EstimatorId::G => "Holley and Guilford's G",
            EstimatorId::Kappa => "Cohen's kappa",
            EstimatorId::KappaMax => "Maximum kappa",
            EstimatorId::KappaCorrected => "Corrected Cohen's kappa",
            EstimatorId::Pi => "Scott's pi",
            EstimatorId::Ac1 => "Gwet's AC1",
            EstimatorId::Q => "Yule's Q",
            EstimatorId::Y => "Yule's Y",
            EstimatorId::R => "Pearson's r",
            EstimatorId::Chi2 => "Pearson's chi-squared",
            EstimatorId::CramerV => "Cramer's V",
            EstimatorId::Pcc => "Pearson's contingency coefficient",
            EstimatorId::McNemarChi2 => "McNemar's chi-squared",
            EstimatorId::McNemarNorm => "Normalized McNemar's chi-squared",
            EstimatorId::F1 => "Dice's F1",
            EstimatorId::F1Adj => "Adjusted F1",
            EstimatorId::B => "Shankar and Bangdiwala's B",
            EstimatorId::BAdj => "Adjusted B",
            EstimatorId::Gamma => "Hubert's Gamma",
            EstimatorId::OddsRatio => "Odds ratio",
            EstimatorId::LogOddsRatio => "Log odds ratio",
            EstimatorId::RrPos => "Positive risk ratio",
            EstimatorId::RrNeg => "Negative risk ratio",
        }
    }

    /// Estimators bounded to `[−1, 1]` with 0 as the neutral value.
    pub fn is_signed(self) -> bool {
        matches!(
            self,
            EstimatorId::G
                | EstimatorId::Kappa
                | EstimatorId::KappaMax
                | EstimatorId::KappaCorrected
                | EstimatorId::Pi
                | EstimatorId::Ac1
                | EstimatorId::Q
                | EstimatorId::Y
                | EstimatorId::R
                | EstimatorId::F1Adj
                | EstimatorId::BAdj
        )
    }

    /// Evaluates this single estimator.
    pub fn evaluate(self, t: &Table2x2) -> EstimateValue {
        match self {
            EstimatorId::G => holley_guilford_g(t),
            EstimatorId::Kappa => cohen_kappa(t),
            EstimatorId::KappaMax => kappa_max(t),
            EstimatorId::KappaCorrected => kappa_corrected(t),
            EstimatorId::Pi => scott_pi(t),
            EstimatorId::Ac1 => gwet_ac1(t),
            EstimatorId::Q => yule_q(t),
            EstimatorId::Y => yule_y(t),
            EstimatorId::R => pearson_r(t),
            EstimatorId::Chi2 => pearson_chi2(t),
            EstimatorId::CramerV => cramer_v(t),
            EstimatorId::Pcc => pcc(t),
            EstimatorId::McNemarChi2 => mcnemar_chi2(t),
            EstimatorId::McNemarNorm => mcnemar_normalized(t),
            EstimatorId::F1 => dice_f1(t),
            EstimatorId::F1Adj => f1_adj(t),
            EstimatorId::B => bangdiwala_b(t),
            EstimatorId::BAdj => b_adj(t),
            EstimatorId::Gamma => hubert_gamma(t),
            EstimatorId::OddsRatio => ratio_family(t).odds_ratio,
            EstimatorId::LogOddsRatio => ratio_family(t).log_odds_ratio,
            EstimatorId::RrPos => ratio_family(t).rr_pos,
            EstimatorId::RrNeg => ratio_family(t).rr_neg,
        }
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownEstimator(pub String);

impl fmt::Display for UnknownEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown estimator `{}`", self.0)
    }
}

impl std::error::Error for UnknownEstimator {}

impl FromStr for EstimatorId {
    type Err = UnknownEstimator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        EstimatorId::ALL.into_iter().find(|id| id.column() == key).ok_or_else(|| UnknownEstimator(s.to_string()))
    }
}

/// All estimator values for one table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateVector {
    pub p_o: f64,
    pub p_c: f64,
    values: [EstimateValue; EstimatorId::COUNT],
}

impl EstimateVector {
    /// Rebuilds a vector from stored values, in [`EstimatorId::ALL`] order.
    pub fn from_values(p_o: f64, p_c: f64, values: [EstimateValue; EstimatorId::COUNT]) -> Self {
        EstimateVector { p_o, p_c, values }
    }

    pub fn get(&self, id: EstimatorId) -> EstimateValue {
        self.values[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (EstimatorId, EstimateValue)> + '_ {
        EstimatorId::ALL.into_iter().zip(self.values.iter().copied())
    }
}

/// Evaluates every estimator once.
pub fn estimate_all(t: &Table2x2) -> EstimateVector {
    let kappa = cohen_kappa(t);
    let k_max = kappa_max(t);
    let k_corr = match kappa {
        Ok(k) if k > 0.0 => k_max.and_then(|m| ratio(k, m)),
        other => other,
    };
    let ratios = ratio_family(t);
    let chi2 = pearson_chi2(t);
    let pcc = chi2.and_then(|x| ratio(x, x + t.n() as f64).map(f64::sqrt));
    let values = [
        holley_guilford_g(t),
        kappa,
        k_max,
        k_corr,
        scott_pi(t),
        gwet_ac1(t),
        yule_q(t),
        yule_y(t),
        pearson_r(t),
        chi2,
        cramer_v(t),
        pcc,
        mcnemar_chi2(t),
        mcnemar_normalized(t),
        dice_f1(t),
        f1_adj(t),
        bangdiwala_b(t),
        b_adj(t),
        hubert_gamma(t),
        ratios.odds_ratio,
        ratios.log_odds_ratio,
        ratios.rr_pos,
        ratios.rr_neg,
    ];
    EstimateVector { p_o: t.observed_agreement(), p_c: chance_agreement(t), values }
}

/// Qualitative scales for κ-like coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KappaScheme {
    LandisKoch,
    Altman,
    Fleiss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KappaCategory {
    pub scheme: KappaScheme,
    pub label: &'static str,
}

/// Labels a value in `[−1, 1]`. Intervals are half-open `[lo, hi)` with the
/// top one closed at 1.
pub fn classify_kappa(value: f64, scheme: KappaScheme) -> Result<KappaCategory, Fail> {
    if !(-1.0..=1.0).contains(&value) {
        return Err(Fail::Undefined);
    }
    let cuts: &[(f64, &'static str)] = match scheme {
        KappaScheme::LandisKoch => &[
            (0.0, "Poor"),
            (0.2, "Slight"),
            (0.4, "Fair"),
            (0.6, "Moderate"),
            (0.8, "Substantial"),
            (f64::INFINITY, "Almost perfect"),
        ],
        KappaScheme::Altman => {
            &[(0.2, "Poor"), (0.4, "Fair"), (0.6, "Moderate"), (0.8, "Good"), (f64::INFINITY, "Very good")]
        }
        KappaScheme::Fleiss => &[(0.4, "Poor"), (0.75, "Intermediate to Good"), (f64::INFINITY, "Excellent")],
    };
    let label = cuts.iter().find(|(hi, _)| value < *hi).map(|(_, l)| *l).expect("last cut is infinite");
    Ok(KappaCategory { scheme, label })
}
