use std::fs;
use std::io::{IsTerminal, Write};

use agree2x2::estimators::EstimatorId;
use agree2x2::inference::Procedure;
use agree2x2::study::{
    default_bin_width, run_study, write_correlations_csv, write_density_csv, write_hexbin_csv, write_mistakes_csv,
    CorrelationAccumulator, DensityBins, HexGeometry, HexbinGrid, MistakeSummary, StudyCsvWriter,
};
use agree2x2::table::count_tables;

use crate::error::CliError;
use crate::provenance::{OutputFile, RunConfig};
use crate::StudyArgs;

pub const DECISION_NOTE: &str =
    "decisions: -1 = H1- (disagreement), 0 = H0, 1 = H1+ (agreement) or, for mn_norm and mn_chi2, an undirected rejection; NA = fail";
pub const MISTAKE_NOTE: &str = "undirected procedures are scored on the reject/retain partition of the benchmark only";

pub fn parse_procedure(name: &str) -> Result<Procedure, CliError> {
    name.parse().map_err(|_| CliError::UnknownEstimator(name.to_string()))
}

fn procedures(args: &StudyArgs, benchmark: Procedure) -> Result<Vec<Procedure>, CliError> {
    let mut procs = if args.procedures.is_empty() {
        Procedure::ALL.to_vec()
    } else {
        args.procedures.iter().map(|p| parse_procedure(p)).collect::<Result<Vec<_>, _>>()?
    };
    if !procs.contains(&benchmark) {
        procs.push(benchmark);
    }
    procs.sort();
    procs.dedup();
    Ok(procs)
}

pub fn run(args: &StudyArgs) -> Result<(), CliError> {
    if args.from < 1 || args.from > args.to {
        return Err(CliError::Usage(format!("invalid range --from {} --to {}", args.from, args.to)));
    }
    if args.hex_bins == 0 {
        return Err(CliError::Usage("--hex-bins must be at least 1".into()));
    }
    let benchmark = parse_procedure(&args.benchmark)?;
    let procs = procedures(args, benchmark)?;
    let inference = if args.no_test { None } else { Some(args.inference.config(procs.clone())?) };

    let mut config = RunConfig {
        subcommand: "study",
        from: Some(args.from),
        to: Some(args.to),
        hex_bins: Some(args.hex_bins),
        ..Default::default()
    };
    if inference.is_some() {
        config.alpha = Some(args.inference.alpha);
        config.bootstrap = Some(args.inference.boot);
        config.seed = Some(args.inference.seed);
        config.benchmark = Some(benchmark.name().to_string());
        config.procedures = procs.iter().map(|p| p.name().to_string()).collect();
    } else {
        config.flags.push("no-test".into());
    }

    fs::create_dir_all(&args.out).map_err(CliError::io(&args.out))?;
    let path = |name: &str| args.out.join(name);

    let decision_procs: &[Procedure] = if inference.is_some() { &procs } else { &[] };
    let mut study_file = OutputFile::create(&path("study.csv"))?;
    config.write_csv_header(study_file.writer(), &[DECISION_NOTE]).map_err(CliError::io(path("study.csv")))?;
    let mut rows =
        StudyCsvWriter::new(study_file.writer(), decision_procs).map_err(CliError::study(path("study.csv")))?;

    let mut mistakes = MistakeSummary::empty(benchmark, &procs);
    let width = default_bin_width(args.to);
    let mut densities: Vec<DensityBins> = procs.iter().map(|&p| DensityBins::new(p, benchmark, width)).collect();
    let geometry = HexGeometry::across(args.hex_bins);
    let mut grids: Vec<HexbinGrid> = EstimatorId::ALL.iter().map(|&e| HexbinGrid::new(e, geometry, None)).collect();
    let mut correlations = CorrelationAccumulator::new(&EstimatorId::ALL);

    let progress = std::io::stderr().is_terminal();
    let total = run_study(args.from, args.to, inference.as_ref(), |n, records| {
        rows.write(records)?;
        if inference.is_some() {
            mistakes.add(records)?;
            for d in &mut densities {
                d.add(records)?;
            }
        }
        for g in &mut grids {
            g.add(records);
        }
        correlations.add_size(n, records);
        if progress {
            eprint!("\rn = {n}");
        }
        Ok(())
    })
    .map_err(CliError::study(path("study.csv")))?;
    if progress {
        eprintln!();
    }
    rows.finish().map_err(CliError::study(path("study.csv")))?;
    study_file.commit()?;
    debug_assert_eq!(total as u128, count_tables(args.from, args.to)?);

    if inference.is_some() {
        write_summary(&config, &path("mistakes.csv"), &[MISTAKE_NOTE], |w| write_mistakes_csv(w, &mistakes))?;
        write_summary(&config, &path("density.csv"), &[MISTAKE_NOTE], |w| write_density_csv(w, &densities))?;
    }
    write_summary(&config, &path("hexbin.csv"), &[], |w| write_hexbin_csv(w, &grids))?;
    let correlations = correlations.finish();
    write_summary(&config, &path("correlations.csv"), &[], |w| write_correlations_csv(w, &correlations))?;

    println!("{total} tables written to {}", args.out.display());
    if inference.is_some() {
        println!("{:<10} {:>8} {:>8} {:>8} {:>10}", "procedure", "correct", "mistakes", "fails", "mistakes %");
        for (p, c) in &mistakes.rows {
            println!(
                "{:<10} {:>8} {:>8} {:>8} {:>10.2}",
                p.name(),
                c.correct,
                c.mistakes,
                c.fails,
                100.0 * c.mistake_fraction()
            );
        }
    }
    Ok(())
}

fn write_summary<F>(config: &RunConfig, path: &std::path::Path, notes: &[&str], body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), agree2x2::error::StudyError>,
{
    let mut file = OutputFile::create(path)?;
    config.write_csv_header(file.writer(), notes).map_err(CliError::io(path))?;
    body(file.writer()).map_err(CliError::study(path))?;
    file.commit()
}
