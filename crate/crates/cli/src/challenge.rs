use std::fmt::Write as _;

use agree2x2::challenge::{challenge_grid, format_cell, ChallengeTable, EXTREME, REGULAR, ROWS};

use crate::error::CliError;
use crate::{ChallengeArgs, ChallengeSet};

/// Text table with one column per challenge table and one row per estimator.
pub fn render(set: &[ChallengeTable]) -> String {
    let grid = challenge_grid(set);
    let label_w = ROWS.iter().map(|e| e.label().len()).max().unwrap_or(0);
    let col_w = set.iter().map(|t| t.label.len()).max().unwrap_or(0).max(15);
    let mut out = String::new();
    let mut line = |first: &str, cells: Vec<String>| {
        write!(out, "{first:<label_w$}").unwrap();
        for c in cells {
            write!(out, "  {c:>col_w$}").unwrap();
        }
        out.push('\n');
    };
    line("", set.iter().map(|t| t.label.to_string()).collect());
    line("", set.iter().map(|t| format!("{:?}", t.cells).replace(' ', "")).collect());
    for (row, id) in ROWS.iter().enumerate() {
        line(id.label(), grid[row].iter().map(|&v| format_cell(v)).collect());
    }
    out
}

pub fn run(args: &ChallengeArgs) -> Result<(), CliError> {
    let set: &[ChallengeTable] = match args.set {
        ChallengeSet::Regular => &REGULAR,
        ChallengeSet::Extreme => &EXTREME,
    };
    print!("{}", render(set));
    Ok(())
}
