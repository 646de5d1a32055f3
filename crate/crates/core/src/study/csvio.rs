//! CSV persistence of study records and summaries.
//!
//! Fails are written as `NA`; decisions as `-1`, `0`, `1` or `NA`, with
//! undirected rejections written as `1`. Lines starting with `#` are
//! comments and are skipped on reading.

use std::io::{Read, Write};

use super::correlation::CorrelationSummary;
use super::density::DensityBins;
use super::hexbin::HexbinGrid;
use super::mistakes::MistakeSummary;
use super::run::StudyRecord;
use crate::error::StudyError;
use crate::estimators::{EstimateValue, EstimateVector, EstimatorId, Fail};
use crate::inference::{Decision, DecisionSet, Procedure, Region};
use crate::table::Table2x2;

/// Shortest round-tripping decimal, with negative zero folded to `0`.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn format_estimate(v: EstimateValue) -> String {
    v.map_or_else(|_| "NA".to_string(), format_value)
}

fn format_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), format_value)
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// Streaming writer of study rows.
pub struct StudyCsvWriter<W: Write> {
    inner: csv::Writer<W>,
    procedures: Vec<Procedure>,
}

impl<W: Write> StudyCsvWriter<W> {
    /// Writes the header: `n,a,b,c,d,po`, every estimator, then one
    /// `dec_<procedure>` column per procedure.
    pub fn new(out: W, procedures: &[Procedure]) -> Result<Self, StudyError> {
        let mut inner = writer(out);
        let mut header: Vec<String> = ["n", "a", "b", "c", "d", "po"].map(String::from).to_vec();
        header.extend(EstimatorId::ALL.iter().map(|e| e.column().to_string()));
        header.extend(procedures.iter().map(|p| p.column()));
        inner.write_record(&header)?;
        Ok(StudyCsvWriter { inner, procedures: procedures.to_vec() })
    }

    pub fn write(&mut self, records: &[StudyRecord]) -> Result<(), StudyError> {
        let mut row: Vec<String> = Vec::with_capacity(6 + EstimatorId::COUNT + self.procedures.len());
        for rec in records {
            row.clear();
            let t = &rec.table;
            row.extend([t.n(), t.a(), t.b(), t.c(), t.d()].map(|v| v.to_string()));
            row.push(format_value(rec.p_o()));
            row.extend(rec.estimates.iter().map(|(_, v)| format_estimate(v)));
            for &p in &self.procedures {
                let code = rec.decision(p).and_then(|d| d.region.code());
                row.push(code.map_or_else(|| "NA".to_string(), |c| c.to_string()));
            }
            self.inner.write_record(&row)?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<W, StudyError> {
        self.inner.flush()?;
        self.inner.into_inner().map_err(|e| StudyError::Io(e.into_error()))
    }
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input)
}

/// Layout of a study CSV as found in its header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StudyColumns {
    pub estimators: Vec<(EstimatorId, usize)>,
    pub procedures: Vec<(Procedure, usize)>,
}

impl StudyColumns {
    pub fn has_estimator(&self, id: EstimatorId) -> bool {
        self.estimators.iter().any(|(e, _)| *e == id)
    }
}

fn parse_header(header: &csv::StringRecord) -> Result<(StudyColumns, [usize; 6]), StudyError> {
    let find = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| StudyError::Parse { line: 1, message: format!("missing column `{name}`") })
    };
    let base = [find("n")?, find("a")?, find("b")?, find("c")?, find("d")?, find("po")?];
    let mut estimators = Vec::new();
    let mut procedures = Vec::new();
    for (i, h) in header.iter().enumerate() {
        // Bangdiwala's `b` shares its name with the cell column.
        if base.contains(&i) {
            continue;
        }
        if let Some(p) = h.strip_prefix("dec_") {
            if let Ok(p) = p.parse::<Procedure>() {
                procedures.push((p, i));
            }
        } else if let Ok(e) = h.parse::<EstimatorId>() {
            estimators.push((e, i));
        }
    }
    Ok((StudyColumns { estimators, procedures }, base))
}

/// Reads a study CSV row by row, rebuilding each record. Missing estimator
/// columns read as fails; decisions carry only their region.
pub fn read_study_csv<R: Read, F>(input: R, mut visit: F) -> Result<StudyColumns, StudyError>
where
    F: FnMut(&StudyRecord) -> Result<(), StudyError>,
{
    let mut rdr = reader(input);
    let header = rdr.headers()?.clone();
    let (columns, base) = parse_header(&header)?;
    let mut record = csv::StringRecord::new();
    while rdr.read_record(&mut record)? {
        let line = record.position().map_or(0, |p| p.line());
        let err = |message: String| StudyError::Parse { line, message };
        let int =
            |i: usize| record[i].parse::<u64>().map_err(|e| err(format!("column {}: {e}", header[i].to_string())));
        let table = Table2x2::from_counts(int(base[1])?, int(base[2])?, int(base[3])?, int(base[4])?)?;
        if int(base[0])? != table.n() {
            return Err(err("n does not equal a+b+c+d".into()));
        }
        let mut values = [Err(Fail::Undefined); EstimatorId::COUNT];
        for &(id, i) in &columns.estimators {
            values[id.index()] = match &record[i] {
                "NA" => Err(Fail::Undefined),
                s => Ok(s.parse::<f64>().map_err(|e| err(format!("column {}: {e}", id.column())))?),
            };
        }
        let decisions = if columns.procedures.is_empty() {
            None
        } else {
            let mut set: DecisionSet = [None; Procedure::COUNT];
            for &(p, i) in &columns.procedures {
                let region = match &record[i] {
                    "NA" => Region::Fail,
                    "-1" => Region::H1Minus,
                    "0" => Region::H0,
                    "1" if p.is_undirected() => Region::Reject,
                    "1" => Region::H1Plus,
                    other => return Err(err(format!("bad decision `{other}` in {}", p.column()))),
                };
                set[p.index()] = Some(Decision { region, p_value: None, pbin: None });
            }
            Some(set)
        };
        let estimates = EstimateVector::from_values(
            table.observed_agreement(),
            crate::estimators::chance_agreement(&table),
            values,
        );
        visit(&StudyRecord { table, estimates, decisions })?;
    }
    Ok(columns)
}

pub fn write_mistakes_csv<W: Write>(out: W, summary: &MistakeSummary) -> Result<(), StudyError> {
    let mut w = writer(out);
    w.write_record([
        "benchmark",
        "procedure",
        "correct",
        "mistakes",
        "fails",
        "excluded",
        "total",
        "mistakes_h1minus",
        "mistakes_h0",
        "mistakes_h1plus",
        "mistake_fraction",
        "fail_fraction",
    ])?;
    for (p, c) in &summary.rows {
        let [m0, m1, m2] = c.mistakes_by_region;
        w.write_record([
            summary.benchmark.name().to_string(),
            p.name().to_string(),
            c.correct.to_string(),
            c.mistakes.to_string(),
            c.fails.to_string(),
            c.excluded.to_string(),
            c.total().to_string(),
            m0.to_string(),
            m1.to_string(),
            m2.to_string(),
            format_value(c.mistake_fraction()),
            format_value(c.fail_fraction()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_density_csv<W: Write>(out: W, bins: &[DensityBins]) -> Result<(), StudyError> {
    let mut w = writer(out);
    w.write_record([
        "procedure",
        "benchmark",
        "bin",
        "po",
        "correct",
        "mistakes",
        "correct_mass",
        "mistake_mass",
        "h0_lo",
        "h0_hi",
    ])?;
    for d in bins {
        let (lo, hi) = d.h0_band.map_or((None, None), |(a, b)| (Some(a), Some(b)));
        for k in 0..d.correct.len() {
            let (cm, mm) = d.mass(k);
            w.write_record([
                d.procedure.name().to_string(),
                d.benchmark.name().to_string(),
                k.to_string(),
                format_value(d.bin_center(k)),
                d.correct[k].to_string(),
                d.mistakes[k].to_string(),
                format_value(cm),
                format_value(mm),
                format_opt(lo),
                format_opt(hi),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_hexbin_csv<W: Write>(out: W, grids: &[HexbinGrid]) -> Result<(), StudyError> {
    let mut w = writer(out);
    w.write_record(["estimator", "panel", "q", "r", "x", "y", "count", "hex_width", "failed"])?;
    for g in grids {
        let panel = g.panel.map_or_else(|| "all".to_string(), |p| p.name());
        for (&(q, r), &count) in &g.counts {
            let (x, y) = g.geometry.center(q, r);
            w.write_record([
                g.estimator.column().to_string(),
                panel.clone(),
                q.to_string(),
                r.to_string(),
                format_value(x),
                format_value(y),
                count.to_string(),
                format_value(g.geometry.width),
                g.failed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_correlations_csv<W: Write>(out: W, summary: &CorrelationSummary) -> Result<(), StudyError> {
    let mut w = writer(out);
    w.write_record([
        "estimator",
        "pearson_median",
        "pearson_hdi_lb",
        "pearson_hdi_ub",
        "spearman_median",
        "spearman_hdi_lb",
        "spearman_hdi_ub",
        "sizes_defined",
        "sizes_undefined",
    ])?;
    for row in &summary.rows {
        let (plo, phi) = row.pearson.hdi.map_or((None, None), |(a, b)| (Some(a), Some(b)));
        let (slo, shi) = row.spearman.hdi.map_or((None, None), |(a, b)| (Some(a), Some(b)));
        w.write_record([
            row.estimator.column().to_string(),
            format_opt(row.pearson.median),
            format_opt(plo),
            format_opt(phi),
            format_opt(row.spearman.median),
            format_opt(slo),
            format_opt(shi),
            row.pearson.defined.to_string(),
            row.pearson.undefined.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
