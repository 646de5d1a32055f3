use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use agree2x2::estimators::EstimatorId;
use agree2x2::study::{default_bin_width, read_study_csv, DensityBins, HexGeometry, HexbinGrid};

use crate::error::CliError;
use crate::provenance::{OutputFile, RunConfig};
use crate::study::parse_procedure;
use crate::svg::{density_svg, hexbin_svg};
use crate::{PlotArgs, PlotKind};

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path).map(BufReader::new).map_err(CliError::io(path))
}

/// Provenance lines at the top of the input, without their marker.
fn input_provenance(path: &Path) -> Result<Vec<String>, CliError> {
    let mut lines = Vec::new();
    for line in open(path)?.lines() {
        let line = line.map_err(CliError::io(path))?;
        match line.strip_prefix('#') {
            Some(rest) => lines.push(format!("input {}", rest.trim())),
            None => break,
        }
    }
    Ok(lines)
}

pub fn run(args: &PlotArgs) -> Result<(), CliError> {
    let input = &args.input;
    let config = RunConfig {
        subcommand: "plot",
        benchmark: (args.kind == PlotKind::Density).then(|| args.benchmark.clone()),
        hex_bins: (args.kind == PlotKind::Hexbin).then_some(args.hex_bins),
        flags: vec![format!("kind={:?}", args.kind).to_lowercase(), format!("estimator={}", args.estimator)],
        ..Default::default()
    };
    let mut comments = config.lines();
    comments.extend(input_provenance(input)?);

    let svg = match args.kind {
        PlotKind::Density => {
            let procedure = parse_procedure(&args.estimator)?;
            let benchmark = parse_procedure(&args.benchmark)?;
            let mut max_n = 0;
            let columns = read_study_csv(open(input)?, |rec| {
                max_n = max_n.max(rec.table.n());
                Ok(())
            })
            .map_err(CliError::study(input))?;
            for p in [procedure, benchmark] {
                if !columns.procedures.iter().any(|(q, _)| *q == p) {
                    return Err(CliError::Usage(format!("{} has no decisions for `{p}`", input.display())));
                }
            }
            let mut bins = DensityBins::new(procedure, benchmark, default_bin_width(max_n.max(1)));
            read_study_csv(open(input)?, |rec| bins.add(std::slice::from_ref(rec))).map_err(CliError::study(input))?;
            density_svg(&bins, &comments)
        }
        PlotKind::Hexbin => {
            let estimator: EstimatorId =
                args.estimator.parse().map_err(|_| CliError::UnknownEstimator(args.estimator.clone()))?;
            if args.hex_bins == 0 {
                return Err(CliError::Usage("--hex-bins must be at least 1".into()));
            }
            let mut grid = HexbinGrid::new(estimator, HexGeometry::across(args.hex_bins), None);
            let columns = read_study_csv(open(input)?, |rec| {
                grid.add(std::slice::from_ref(rec));
                Ok(())
            })
            .map_err(CliError::study(input))?;
            if !columns.has_estimator(estimator) || !columns.has_estimator(EstimatorId::G) {
                return Err(CliError::Usage(format!("{} has no `{}` column", input.display(), estimator.column())));
            }
            hexbin_svg(&grid, &comments)
        }
    };

    let mut file = OutputFile::create(&args.out)?;
    file.writer().write_all(svg.as_bytes()).map_err(CliError::io(&args.out))?;
    file.commit()?;
    println!("wrote {}", args.out.display());
    Ok(())
}
