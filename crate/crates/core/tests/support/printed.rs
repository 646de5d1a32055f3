#![allow(dead_code)]
//! Challenge-table values as printed, shared by the golden tests.

// Rows follow `ROWS`: G, AC1, pi, kappa, corrected kappa, r, Q, Y, B, B_adj,
// F1, F1_adj, normalized MN.
pub const PRINTED_REGULAR: [[&str; 9]; 13] = [
    ["0.80000", "0.80000", "0.20000", "-0.80000", "-0.80000", "-0.20000", "0.00000", "0.00000", "-0.11111"],
    ["0.80000", "0.80000", "0.20000", "-0.80000", "-0.80000", "-0.19988", "0.00000", "0.05882", "-0.11111"],
    ["0.80000", "0.80000", "0.20000", "-0.80000", "-0.80000", "-0.20012", "0.00000", "-0.06667", "-0.11111"],
    ["0.80000", "0.80002", "0.20008", "-0.80000", "-0.79982", "-0.20012", "0.00000", "0.00000", "0.00000"],
    ["1.00000", "0.98000", "0.98000", "-0.80000", "-0.79982", "-0.20012", "0.00000", "0.00000", "0.00000"],
    ["0.80000", "0.80018", "0.20012", "-0.80000", "-0.79998", "-0.20012", "0.00000", "0.00000", "0.00000"],
    ["0.97561", "0.97585", "0.38488", "-0.97561", "-0.97561", "-0.38488", "0.00000", "0.00000", "0.00000"],
    ["0.80000", "0.80090", "0.20015", "-0.80000", "-0.79999", "-0.20015", "0.00000", "0.00000", "0.00000"],
    ["0.81000", "0.81008", "0.36004", "0.01000", "0.01000", "0.16008", "0.25000", "0.31250", "0.22222"],
    ["0.62000", "0.62016", "-0.27993", "-0.98000", "-0.98000", "-0.67983", "-0.50000", "-0.37500", "-0.55556"],
    ["0.90000", "0.90000", "0.60000", "0.10000", "0.10000", "0.40594", "0.50000", "0.60000", "0.44444"],
    ["0.80000", "0.80000", "0.20000", "-0.80000", "-0.80000", "-0.18812", "0.00000", "0.20000", "-0.11111"],
    ["0.00000", "0.10000", "0.02500", "0.00000", "0.01111", "0.00000", "0.00000", "0.50000", "0.60000"],
];

pub const PRINTED_EXTREME: [[&str; 8]; 13] = [
    ["0.88000", "-0.88000", "0.98000", "0.99000", "0.80000", "-0.90000", "0.90000", "-0.90000"],
    ["0.88000", "-0.87531", "0.98000", "0.99000", "0.88950", "-0.89526", "0.94744", "-0.89526"],
    ["0.88000", "-0.88471", "0.98000", "0.99000", "-0.05263", "-0.90476", "-0.02564", "-0.90476"],
    ["0.88030", "-0.88471", "0.98000", "0.99000", "-0.05263", "-0.10465", "0.00000", "0.00000"],
    ["0.90025", "-0.88471", "1.00000", "0.99000", "-0.05263", "-0.10465", "0.00000", "0.00000"],
    ["0.88471", "-0.88471", "0.98000", "0.99005", "-0.05263", "-0.68825", "div/0", "div/0"],
    ["0.99751", "-0.99751", "0.99980", "1.00000", "-1.00000", "-1.00000", "div/0", "div/0"],
    ["0.93184", "-0.93184", "0.98000", "1.00000", "-1.00000", "-1.00000", "div/0", "div/0"],
    ["0.88581", "0.00608", "0.98010", "0.99005", "0.89503", "0.01786", "0.95000", "0.05000"],
    ["0.77163", "-0.98783", "0.96020", "0.98010", "0.79006", "-0.96429", "0.90000", "-0.90000"],
    ["0.94000", "0.10476", "0.99000", "0.99502", "0.94737", "0.09524", "0.97436", "0.09524"],
    ["0.88000", "-0.79048", "0.98000", "0.99005", "0.89474", "-0.80952", "0.94872", "-0.80952"],
    ["0.83333", "0.00000", "0.00000", "1.00000", "0.00000", "0.89474", "1.00000", "1.00000"],
];

/// Corrected-kappa cells where the print is kappa_M rather than kappa/kappa_M:
/// (set, column, printed, computed).
pub const KNOWN_DISCREPANCIES: [(&str, usize, &str, &str); 6] = [
    ("regular", 0, "1.00000", "0.80000"),
    ("regular", 1, "0.98000", "0.81635"),
    ("regular", 2, "0.98000", "0.20416"),
    ("extreme", 0, "0.90025", "0.97784"),
    ("extreme", 2, "1.00000", "0.98000"),
    ("extreme", 3, "0.99000", "1.00000"),
];

/// Cells where `computed` (row-major, same shape as `printed`) differs from
/// the print, as (set, column, printed, computed).
pub fn differences<const C: usize>(
    set: &str,
    printed: &[[&str; C]; 13],
    computed: &[Vec<String>],
) -> Vec<(String, usize, String, String)> {
    let mut out = Vec::new();
    for (row, cells) in printed.iter().enumerate() {
        for (col, want) in cells.iter().enumerate() {
            let got = &computed[row][col];
            if got != want {
                out.push((set.to_string(), col, want.to_string(), got.clone()));
            }
        }
    }
    out
}

pub fn known_discrepancies() -> Vec<(String, usize, String, String)> {
    KNOWN_DISCREPANCIES.iter().map(|&(s, c, p, g)| (s.to_string(), c, p.to_string(), g.to_string())).collect()
}
