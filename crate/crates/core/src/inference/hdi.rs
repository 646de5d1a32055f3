use crate::estimators::Fail;

/// Shortest interval of the empirical sample holding `mass` of its points.
///
/// Follows the usual sample-based rule: with `N` sorted values the window
/// spans `floor(N·mass) + 1` consecutive points, and the first narrowest
/// window wins ties.
pub fn hdi(samples: &[f64], mass: f64) -> Result<(f64, f64), Fail> {
    if samples.len() < 2 || !(mass > 0.0 && mass < 1.0) || samples.iter().any(|x| !x.is_finite()) {
        return Err(Fail::Undefined);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok(hdi_sorted(&sorted, mass))
}

/// As [`hdi`] but on an already sorted, finite slice of length ≥ 2.
pub fn hdi_sorted(sorted: &[f64], mass: f64) -> (f64, f64) {
    let n = sorted.len();
    let span = window_span(n, mass);
    let mut best = (sorted[0], sorted[span]);
    for i in 1..n - span {
        let (lo, hi) = (sorted[i], sorted[i + span]);
        if hi - lo < best.1 - best.0 {
            best = (lo, hi);
        }
    }
    best
}

/// Index distance between the ends of the window, `floor(N·mass)`, capped at `N−1`.
fn window_span(n: usize, mass: f64) -> usize {
    // The small nudge keeps e.g. 100·0.95 from flooring to 94.
    let k = (n as f64 * mass + 1e-9).floor() as usize;
    k.min(n - 1)
}
