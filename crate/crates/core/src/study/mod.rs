//! Exhaustive studies over every table in a size range: decision mistakes
//! against a benchmark, density histograms, hexbin maps and correlations.

mod correlation;
mod csvio;
mod density;
mod hexbin;
mod mistakes;
mod run;
mod sample;

pub use correlation::{
    correlations_by_n, correlations_for_size, median, midranks, pearson, spearman, CorrelationAccumulator,
    CorrelationRow, CorrelationSummary, SizeCorrelation, Spread,
};
pub use csvio::{
    format_value, read_study_csv, write_correlations_csv, write_density_csv, write_hexbin_csv, write_mistakes_csv,
    StudyColumns, StudyCsvWriter,
};
pub use density::{default_bin_width, density_bins, DensityBins};
pub use hexbin::{hexbin_aggregate, HexGeometry, HexbinGrid};
pub use mistakes::{benchmark_selection, is_mistake, mistake_summary, BenchmarkScore, MistakeCounts, MistakeSummary};
pub use run::{g_h0_interval, run_study, study_tables, H0Band, StudyRecord};
pub use sample::stratified_sample;
