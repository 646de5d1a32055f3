//! 2×2 tables: construction, exhaustive enumeration, expansion to rating
//! pairs, and classification of extreme configurations.
//!
//! Cells follow the usual layout, rows for rater A and columns for rater B:
//!
//! ```text
//!              B+    B-
//!     A+       a     b     a+b
//!     A-       c     d     c+d
//!             a+c   b+d     n
//! ```
//!
//! `a` and `d` are agreements (main diagonal), `b` and `c` disagreements.

use std::fmt;
use std::io::Write;

use crate::error::TableError;

/// Name of one of the four cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    A,
    B,
    C,
    D,
}

impl Cell {
    pub const ALL: [Cell; 4] = [Cell::A, Cell::B, Cell::C, Cell::D];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Cell::A => "a",
            Cell::B => "b",
            Cell::C => "c",
            Cell::D => "d",
        };
        f.write_str(s)
    }
}

/// A non-empty 2×2 table of counts.
///
/// The total `n` is always derived from the cells, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table2x2 {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl Table2x2 {
    /// Builds a table from signed input, rejecting negative cells and the
    /// all-zero table.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, TableError> {
        let mut cells = [0u64; 4];
        for (cell, value) in Cell::ALL.into_iter().zip([a, b, c, d]) {
            cells[cell.index()] = u64::try_from(value).map_err(|_| TableError::InvalidCell { cell, value })?;
        }
        Self::from_counts(cells[0], cells[1], cells[2], cells[3])
    }

    /// Builds a table from unsigned counts.
    pub fn from_counts(a: u64, b: u64, c: u64, d: u64) -> Result<Self, TableError> {
        if a == 0 && b == 0 && c == 0 && d == 0 {
            return Err(TableError::EmptyTable);
        }
        Ok(Table2x2 { a, b, c, d })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }

    pub fn cell(&self, cell: Cell) -> u64 {
        match cell {
            Cell::A => self.a,
            Cell::B => self.b,
            Cell::C => self.c,
            Cell::D => self.d,
        }
    }

    pub fn cells(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Row and column totals as `[a+b, c+d, a+c, b+d]`.
    pub fn marginals(&self) -> [u64; 4] {
        [self.a + self.b, self.c + self.d, self.a + self.c, self.b + self.d]
    }

    pub fn has_empty_marginal(&self) -> bool {
        self.marginals().contains(&0)
    }

    /// Observed proportion of agreement, `(a+d)/n`.
    pub fn observed_agreement(&self) -> f64 {
        (self.a + self.d) as f64 / self.n() as f64
    }

    /// The same table with the labels of both raters swapped: `(d, c, b, a)`.
    pub fn label_swapped(&self) -> Self {
        Table2x2 { a: self.d, b: self.c, c: self.b, d: self.a }
    }

    /// The same table with raters exchanged: `b` and `c` swap.
    pub fn transposed(&self) -> Self {
        Table2x2 { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    /// Every cell multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        assert!(k >= 1, "scale factor must be positive");
        Table2x2 { a: self.a * k, b: self.b * k, c: self.c * k, d: self.d * k }
    }
}

impl fmt::Display for Table2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// Number of 2×2 tables with total exactly `n`, `C(n+3, 3)`.
pub fn tables_of_size(n: u64) -> u128 {
    binomial4(n as u128 + 3, 3)
}

/// Number of tables whose total lies in `from..=to`, by closed form.
///
/// Uses the hockey-stick identity `Σ C(k+3,3) = C(to+4,4) − C(from+3,4)`.
pub fn count_tables(from: u64, to: u64) -> Result<u128, TableError> {
    if from < 1 || from > to {
        return Err(TableError::InvalidRange { from: from as i64, to: to as i64 });
    }
    Ok(binomial4(to as u128 + 4, 4) - binomial4(from as u128 + 3, 4))
}

fn binomial4(n: u128, k: u128) -> u128 {
    debug_assert!(k <= 4);
    if n < k {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Iterator over all tables of a fixed total, lexicographic on `(a, b, c)`.
#[derive(Debug, Clone)]
pub struct TablesOfSize {
    n: u64,
    next: Option<(u64, u64, u64)>,
    remaining: u128,
}

/// All tables with total `n`, each exactly once, ordered by `(a, b, c)`.
pub fn enumerate_tables(n: u64) -> Result<TablesOfSize, TableError> {
    if n < 1 {
        return Err(TableError::InvalidSize(n as i64));
    }
    Ok(TablesOfSize { n, next: Some((0, 0, 0)), remaining: tables_of_size(n) })
}

/// All tables with totals `from..=to`, ordered by `n` then `(a, b, c)`.
pub fn enumerate_range(from: u64, to: u64) -> Result<impl Iterator<Item = Table2x2>, TableError> {
    count_tables(from, to)?;
    Ok((from..=to).flat_map(|n| enumerate_tables(n).expect("n >= 1")))
}

impl Iterator for TablesOfSize {
    type Item = Table2x2;

    fn next(&mut self) -> Option<Table2x2> {
        let (a, b, c) = self.next?;
        let n = self.n;
        let table = Table2x2 { a, b, c, d: n - a - b - c };
        self.next = if a + b + c < n {
            Some((a, b, c + 1))
        } else if a + b < n {
            Some((a, b + 1, 0))
        } else if a < n {
            Some((a + 1, 0, 0))
        } else {
            None
        };
        self.remaining -= 1;
        Some(table)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

impl ExactSizeIterator for TablesOfSize {}

/// Binary rating of one subject by one rater.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rating {
    Positive,
    Negative,
}

/// Two aligned rating sequences, one entry per subject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingPairs {
    rater_a: Vec<Rating>,
    rater_b: Vec<Rating>,
}

impl RatingPairs {
    pub fn new(rater_a: Vec<Rating>, rater_b: Vec<Rating>) -> Result<Self, TableError> {
        if rater_a.len() != rater_b.len() {
            return Err(TableError::LengthMismatch { left: rater_a.len(), right: rater_b.len() });
        }
        Ok(RatingPairs { rater_a, rater_b })
    }

    pub fn len(&self) -> usize {
        self.rater_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rater_a.is_empty()
    }

    pub fn rater_a(&self) -> &[Rating] {
        &self.rater_a
    }

    pub fn rater_b(&self) -> &[Rating] {
        &self.rater_b
    }

    pub fn iter(&self) -> impl Iterator<Item = (Rating, Rating)> + '_ {
        self.rater_a.iter().copied().zip(self.rater_b.iter().copied())
    }

    /// Counts the pairs back into a table.
    pub fn cross_tabulate(&self) -> Result<Table2x2, TableError> {
        let mut cells = [0u64; 4];
        for pair in self.iter() {
            let idx = match pair {
                (Rating::Positive, Rating::Positive) => 0,
                (Rating::Positive, Rating::Negative) => 1,
                (Rating::Negative, Rating::Positive) => 2,
                (Rating::Negative, Rating::Negative) => 3,
            };
            cells[idx] += 1;
        }
        Table2x2::from_counts(cells[0], cells[1], cells[2], cells[3])
    }
}

/// Expands a table into one rating pair per subject.
///
/// Order is fixed: `a` copies of (+,+), then `b` of (+,−), `c` of (−,+),
/// and `d` of (−,−).
pub fn untable(t: &Table2x2) -> RatingPairs {
    use Rating::{Negative as N, Positive as P};
    let n = t.n() as usize;
    let mut rater_a = Vec::with_capacity(n);
    let mut rater_b = Vec::with_capacity(n);
    for (count, (x, y)) in t.cells().into_iter().zip([(P, P), (P, N), (N, P), (N, N)]) {
        for _ in 0..count {
            rater_a.push(x);
            rater_b.push(y);
        }
    }
    RatingPairs { rater_a, rater_b }
}

/// Concentration flags of a table. Thresholds are strict and exact:
/// "over 90%" is `10·x > 9·n`, "under 10%" is `10·x < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExtremeProfile {
    pub cell_over_90pct: [bool; 4],
    pub cell_under_10pct: [bool; 4],
    pub diag_main_over_90pct: bool,
    pub diag_off_over_90pct: bool,
    pub row1_over_90pct: bool,
    pub row2_over_90pct: bool,
    pub col1_over_90pct: bool,
    pub col2_over_90pct: bool,
}

pub fn classify_extremes(t: &Table2x2) -> ExtremeProfile {
    let n = t.n() as u128;
    let over = |x: u64| 10 * x as u128 > 9 * n;
    let under = |x: u64| (10 * x as u128) < n;
    let [r1, r2, c1, c2] = t.marginals();
    ExtremeProfile {
        cell_over_90pct: t.cells().map(over),
        cell_under_10pct: t.cells().map(under),
        diag_main_over_90pct: over(t.a + t.d),
        diag_off_over_90pct: over(t.b + t.c),
        row1_over_90pct: over(r1),
        row2_over_90pct: over(r2),
        col1_over_90pct: over(c1),
        col2_over_90pct: over(c2),
    }
}

/// Sub-populations of extreme tables used for panelled hexbin maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Panel {
    CellOver90(Cell),
    CellUnder10(Cell),
    MainDiagonal,
    OffDiagonal,
    Row1,
    Row2,
    Col1,
    Col2,
}

impl Panel {
    /// The fourteen panels in display order.
    pub const ALL: [Panel; 14] = [
        Panel::CellOver90(Cell::A),
        Panel::CellOver90(Cell::B),
        Panel::CellOver90(Cell::C),
        Panel::CellOver90(Cell::D),
        Panel::CellUnder10(Cell::A),
        Panel::CellUnder10(Cell::B),
        Panel::CellUnder10(Cell::C),
        Panel::CellUnder10(Cell::D),
        Panel::MainDiagonal,
        Panel::OffDiagonal,
        Panel::Row1,
        Panel::Row2,
        Panel::Col1,
        Panel::Col2,
    ];

    pub fn matches(self, p: &ExtremeProfile) -> bool {
        match self {
            Panel::CellOver90(c) => p.cell_over_90pct[c.index()],
            Panel::CellUnder10(c) => p.cell_under_10pct[c.index()],
            Panel::MainDiagonal => p.diag_main_over_90pct,
            Panel::OffDiagonal => p.diag_off_over_90pct,
            Panel::Row1 => p.row1_over_90pct,
            Panel::Row2 => p.row2_over_90pct,
            Panel::Col1 => p.col1_over_90pct,
            Panel::Col2 => p.col2_over_90pct,
        }
    }

    pub fn name(self) -> String {
        match self {
            Panel::CellOver90(c) => format!("{c}_over90"),
            Panel::CellUnder10(c) => format!("{c}_under10"),
            Panel::MainDiagonal => "main_diag_over90".into(),
            Panel::OffDiagonal => "off_diag_over90".into(),
            Panel::Row1 => "row1_over90".into(),
            Panel::Row2 => "row2_over90".into(),
            Panel::Col1 => "col1_over90".into(),
            Panel::Col2 => "col2_over90".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Panel> {
        Panel::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Writes tables as CSV with header `n,a,b,c,d` and LF line endings.
/// Returns the number of rows written.
pub fn write_tables_csv<W: Write>(out: W, tables: impl IntoIterator<Item = Table2x2>) -> csv::Result<u64> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["n", "a", "b", "c", "d"])?;
    let mut rows = 0;
    for t in tables {
        w.write_record(&[t.n(), t.a, t.b, t.c, t.d].map(|v| v.to_string()))?;
        rows += 1;
    }
    w.flush()?;
    Ok(rows)
}
