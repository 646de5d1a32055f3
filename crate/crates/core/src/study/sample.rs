use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::table::Table2x2;

/// Random subsample of exactly `size` tables, stratified by the number of
/// agreements `a+d` with proportional allocation.
///
/// Stratum quotas are rounded down and the remaining slots go to the largest
/// fractional parts (ties to the lower stratum). Within a stratum tables are
/// drawn without replacement and the output keeps the input order.
pub fn stratified_sample(tables: &[Table2x2], size: usize, seed: u64) -> Vec<Table2x2> {
    let size = size.min(tables.len());
    if size == 0 {
        return Vec::new();
    }
    let max_diag = tables.iter().map(|t| t.a() + t.d()).max().unwrap_or(0) as usize;
    let mut strata: Vec<Vec<usize>> = vec![Vec::new(); max_diag + 1];
    for (i, t) in tables.iter().enumerate() {
        strata[(t.a() + t.d()) as usize].push(i);
    }
    let total = tables.len();
    let mut quotas: Vec<usize> = strata.iter().map(|s| s.len() * size / total).collect();
    let mut remainders: Vec<(usize, usize)> =
        strata.iter().enumerate().map(|(k, s)| (s.len() * size % total, k)).collect();
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let short = size - quotas.iter().sum::<usize>();
    for &(_, k) in remainders.iter().take(short) {
        quotas[k] += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    for (stratum, &quota) in strata.iter().zip(&quotas) {
        chosen.extend(index::sample(&mut rng, stratum.len(), quota).into_iter().map(|j| stratum[j]));
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|i| tables[i]).collect()
}
