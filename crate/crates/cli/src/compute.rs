use std::fmt::Write as _;

use agree2x2::challenge::format_cell;
use agree2x2::estimators::{estimate_all, EstimatorId};
use agree2x2::inference::{infer_table, Procedure};
use agree2x2::table::Table2x2;
use serde::Serialize;

use crate::error::CliError;
use crate::ComputeArgs;

#[derive(Serialize)]
struct JsonEstimate {
    id: &'static str,
    label: &'static str,
    value: Option<f64>,
}

#[derive(Serialize)]
struct JsonDecision {
    procedure: &'static str,
    method: String,
    decision: String,
    p_value: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport {
    table: [u64; 4],
    n: u64,
    p_o: f64,
    p_c: f64,
    estimates: Vec<JsonEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decisions: Option<Vec<JsonDecision>>,
}

pub fn run(args: &ComputeArgs) -> Result<(), CliError> {
    let t = Table2x2::new(args.a, args.b, args.c, args.d)?;
    let est = estimate_all(&t);
    let decisions = if args.test {
        let cfg = args.inference.config(Procedure::ALL.to_vec())?;
        Some(infer_table(&t, &est, &cfg))
    } else {
        None
    };

    if args.json {
        let report = JsonReport {
            table: t.cells(),
            n: t.n(),
            p_o: est.p_o,
            p_c: est.p_c,
            estimates: est
                .iter()
                .map(|(id, v)| JsonEstimate { id: id.column(), label: id.label(), value: v.ok() })
                .collect(),
            decisions: decisions.map(|set| {
                Procedure::ALL
                    .iter()
                    .map(|&p| {
                        let d = set[p.index()].expect("all procedures requested");
                        JsonDecision {
                            procedure: p.name(),
                            method: p.method(t.n()).to_string(),
                            decision: d.region.to_string(),
                            p_value: d.p_value,
                        }
                    })
                    .collect()
            }),
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
        return Ok(());
    }

    let mut out = String::new();
    let [a, b, c, d] = t.cells();
    writeln!(out, "table    a={a} b={b} c={c} d={d} n={}", t.n()).unwrap();
    writeln!(out, "p_o      {:.5}", est.p_o).unwrap();
    writeln!(out, "p_c      {:.5}", est.p_c).unwrap();
    writeln!(out).unwrap();
    let width = EstimatorId::ALL.iter().map(|e| e.label().len()).max().unwrap_or(0);
    for (id, v) in est.iter() {
        writeln!(out, "{:<width$}  {:>12}", id.label(), format_cell(v)).unwrap();
    }
    if let Some(set) = decisions {
        writeln!(out).unwrap();
        writeln!(out, "{:<10} {:<15} {:<8} {:>10}", "procedure", "test", "decision", "p").unwrap();
        for p in Procedure::ALL {
            let d = set[p.index()].expect("all procedures requested");
            let pv = d.p_value.map_or_else(
                || "-".to_string(),
                |x| if x != 0.0 && x < 1e-4 { format!("{x:.3e}") } else { format!("{x:.5}") },
            );
            writeln!(
                out,
                "{:<10} {:<15} {:<8} {:>10}",
                p.name(),
                p.method(t.n()).to_string(),
                d.region.to_string(),
                pv
            )
            .unwrap();
        }
    }
    print!("{out}");
    Ok(())
}
