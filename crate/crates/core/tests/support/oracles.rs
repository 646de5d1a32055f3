#![allow(dead_code)]
//! Brute-force reference implementations for components normally taken from
//! statistical packages.

use agree2x2::table::Table2x2;

fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Two-sided Fisher p-value by enumerating every table with the observed
/// margins and summing those no more likely than the observed one.
pub fn fisher_p(t: &Table2x2) -> f64 {
    let [r1, r2, c1, _] = t.marginals();
    let weight = |a: u64| choose(r1, a) * choose(r2, c1 - a);
    let observed = weight(t.a());
    let lo = c1.saturating_sub(r2);
    let hi = r1.min(c1);
    let hits: u128 = (lo..=hi).map(weight).filter(|&w| w <= observed).sum();
    hits as f64 / choose(t.n(), c1) as f64
}

/// Shortest interval over every pair of order statistics covering at least
/// `floor(mass·N) + 1` points; the leftmost wins ties.
pub fn hdi_scan(xs: &[f64], mass: f64) -> (f64, f64) {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let k = ((mass * n as f64 + 1e-9).floor() as usize + 1).min(n);
    let mut best = (v[0], v[n - 1]);
    for i in 0..n {
        for j in i..n {
            if j - i + 1 >= k && v[j] - v[i] < best.1 - best.0 {
                best = (v[i], v[j]);
            }
        }
    }
    best
}

/// Standardised deviation of each cell's mean over `draws` from its
/// multinomial expectation `n·p`. Cells with zero variance give 0 when the
/// mean is exact and infinity otherwise.
pub fn mean_z_scores(t: &Table2x2, draws: &[Table2x2]) -> [f64; 4] {
    let n = t.n() as f64;
    let reps = draws.len() as f64;
    let mut sums = [0f64; 4];
    for d in draws {
        for (s, x) in sums.iter_mut().zip(d.cells()) {
            *s += x as f64;
        }
    }
    let mut z = [0f64; 4];
    for (k, (&cell, sum)) in t.cells().iter().zip(sums).enumerate() {
        let p = cell as f64 / n;
        let se = (n * p * (1.0 - p) / reps).sqrt();
        let dev = sum / reps - n * p;
        z[k] = if se == 0.0 {
            if dev == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            dev / se
        };
    }
    z
}

/// Whether every cell's mean lies within 3σ of its expectation.
pub fn means_within_three_sigma(t: &Table2x2, draws: &[Table2x2]) -> bool {
    mean_z_scores(t, draws).iter().all(|z| z.abs() < 3.0)
}
