//! Golden tables: reference values for the convergence tables, the Tsit5DA
//! coefficient check and the pendulum statistics, and the harness that
//! recomputes and compares them.
//!
//! A golden file is a CSV with the columns
//! `table,row_key,column,expected,tolerance,tolerance_kind,provenance`.
//! Cells are compared by relative factor, absolute difference or one-sided
//! bound, never by float equality.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::conditions::{
    condition_residuals_for, r_infinity, simplifying_residuals, DEFAULT_TOLERANCE,
};
use crate::experiments::{order_test, pendulum_run, ExperimentError, OrderRow};
use crate::problems::{Pendulum, Prob1, ProtheroRobinson};
use crate::tableau::{check_stiffly_accurate, tsit5da};

/// The reference tables shipped with the crate.
pub const BUILTIN_GOLDEN: &str = include_str!("../golden/tables.csv");

/// Tables recomputed by a quick run.
pub const QUICK_TABLES: [&str; 2] = ["table1", "table3"];

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("golden line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceKind {
    /// `measured / expected` within `[1/tol, tol]`.
    Factor,
    /// `|measured - expected| <= tol`.
    Absolute,
    /// `measured >= expected`.
    AtLeast,
    /// `measured <= expected`.
    AtMost,
}

impl ToleranceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ToleranceKind::Factor => "factor",
            ToleranceKind::Absolute => "absolute",
            ToleranceKind::AtLeast => "at_least",
            ToleranceKind::AtMost => "at_most",
        }
    }
}

impl FromStr for ToleranceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "factor" => Ok(ToleranceKind::Factor),
            "absolute" => Ok(ToleranceKind::Absolute),
            "at_least" => Ok(ToleranceKind::AtLeast),
            "at_most" => Ok(ToleranceKind::AtMost),
            other => Err(format!("unknown tolerance kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCell {
    pub table: String,
    pub row_key: String,
    pub column: String,
    pub expected: f64,
    pub tolerance: f64,
    pub kind: ToleranceKind,
    /// Where the expected value comes from, e.g. `published` or `derived`.
    pub provenance: String,
}

impl GoldenCell {
    pub fn accepts(&self, measured: f64) -> bool {
        if !measured.is_finite() {
            return false;
        }
        match self.kind {
            ToleranceKind::Factor => {
                let ratio = measured / self.expected;
                ratio >= 1.0 / self.tolerance && ratio <= self.tolerance
            }
            ToleranceKind::Absolute => (measured - self.expected).abs() <= self.tolerance,
            ToleranceKind::AtLeast => measured >= self.expected,
            ToleranceKind::AtMost => measured <= self.expected,
        }
    }

    fn key(&self) -> (String, String, String) {
        (
            self.table.clone(),
            self.row_key.clone(),
            self.column.clone(),
        )
    }
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenCell>, GoldenError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut cells = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |message: String| GoldenError::Parse { line, message };
        if record.len() != 7 {
            return Err(err(format!("expected 7 fields, found {}", record.len())));
        }
        let number = |i: usize| {
            record[i]
                .parse::<f64>()
                .map_err(|e| err(format!("field {}: {e}", i + 1)))
        };
        let cell = GoldenCell {
            table: record[0].to_string(),
            row_key: record[1].to_string(),
            column: record[2].to_string(),
            expected: number(3)?,
            tolerance: number(4)?,
            kind: record[5].parse().map_err(err)?,
            provenance: record[6].to_string(),
        };
        if cell.kind == ToleranceKind::Factor && !(cell.tolerance >= 1.0 && cell.expected > 0.0) {
            return Err(err(
                "factor cells need tolerance >= 1 and a positive value".into()
            ));
        }
        cells.push(cell);
    }
    Ok(cells)
}

pub fn load_golden(path: impl AsRef<Path>) -> Result<Vec<GoldenCell>, GoldenError> {
    parse_golden(&std::fs::read_to_string(path)?)
}

pub fn builtin_golden() -> Vec<GoldenCell> {
    parse_golden(BUILTIN_GOLDEN).expect("built-in golden table parses")
}

/// Measured values keyed by `(table, row_key, column)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Measurements {
    values: BTreeMap<(String, String, String), f64>,
}

impl Measurements {
    pub fn insert(&mut self, table: &str, row_key: &str, column: &str, value: f64) {
        self.values
            .insert((table.into(), row_key.into(), column.into()), value);
    }

    pub fn get(&self, table: &str, row_key: &str, column: &str) -> Option<f64> {
        self.values
            .get(&(table.into(), row_key.into(), column.into()))
            .copied()
    }

    pub fn extend(&mut self, other: Measurements) {
        self.values.extend(other.values);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub cell: GoldenCell,
    pub measured: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GoldenReport {
    pub outcomes: Vec<CellOutcome>,
    /// Wall time per recomputed table.
    pub timings: Vec<(String, f64)>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let c = &o.cell;
            let measured = o
                .measured
                .map_or_else(|| "missing".to_string(), |m| format!("{m:.3e}"));
            let rule = match c.kind {
                ToleranceKind::Factor | ToleranceKind::Absolute => {
                    format!("{} {}", c.kind.as_str(), c.tolerance)
                }
                ToleranceKind::AtLeast | ToleranceKind::AtMost => c.kind.as_str().to_string(),
            };
            writeln!(
                f,
                "{} {}[{}][{}] expected {:.3e} ({rule}) measured {}",
                if o.passed { "PASS" } else { "FAIL" },
                c.table,
                c.row_key,
                c.column,
                c.expected,
                measured
            )?;
        }
        for (table, secs) in &self.timings {
            writeln!(f, "time {table} {secs:.2}s")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} cells passed",
            self.outcomes.len() - failed,
            self.outcomes.len()
        )
    }
}

/// Compares every cell with its measurement; a missing measurement fails.
pub fn compare(cells: &[GoldenCell], measured: &Measurements) -> GoldenReport {
    let outcomes = cells
        .iter()
        .map(|cell| {
            let (t, r, c) = cell.key();
            let m = measured.get(&t, &r, &c);
            CellOutcome {
                cell: cell.clone(),
                measured: m,
                passed: m.is_some_and(|v| cell.accepts(v)),
            }
        })
        .collect();
    GoldenReport {
        outcomes,
        timings: Vec::new(),
    }
}

/// Row key of a step size, e.g. `h=3.12e-2`.
pub fn step_key(h: f64) -> String {
    format!("h={h:.2e}")
}

fn record_order_rows(m: &mut Measurements, table: &str, rows: &[OrderRow]) {
    for r in rows {
        let key = step_key(r.h);
        m.insert(table, &key, "err_main", r.err_main);
        if let Some(v) = r.order_main {
            m.insert(table, &key, "order_main", v);
        }
        if let Some(v) = r.err_embedded {
            m.insert(table, &key, "err_embedded", v);
        }
        if let Some(v) = r.order_embedded {
            m.insert(table, &key, "order_embedded", v);
        }
    }
}

/// Fixed-step Tsit5DA errors on the index-1 test problem, `h = 1/8 .. 1/128`.
pub fn measure_table1() -> Result<Measurements, ExperimentError> {
    let rows = order_test(&tsit5da(), &Prob1, 0.125, 5, None)?;
    let mut m = Measurements::default();
    record_order_rows(&mut m, "table1", &rows);
    Ok(m)
}

/// Fixed-step Tsit5DA errors on Prothero-Robinson, `h = 1/2 .. 1/128`.
pub fn measure_table2() -> Result<Measurements, ExperimentError> {
    let rows = order_test(&tsit5da(), &ProtheroRobinson::default(), 0.5, 7, None)?;
    let mut m = Measurements::default();
    record_order_rows(&mut m, "table2", &rows);
    Ok(m)
}

/// Order-condition and stability checks of the built-in Tsit5DA coefficients.
pub fn measure_table3() -> Result<Measurements, ExperimentError> {
    let t = tsit5da();
    let main = condition_residuals_for(&t, t.b())?;
    let bhat = t.bhat().expect("tsit5da has embedded weights");
    let embedded = condition_residuals_for(&t, bhat)?;
    let simplifying = simplifying_residuals(&t)?;
    let mut m = Measurements::default();
    let key = t.name().to_string();
    m.insert(
        "table3",
        &key,
        "attained_order",
        f64::from(main.attained_order(DEFAULT_TOLERANCE)),
    );
    m.insert(
        "table3",
        &key,
        "embedded_order",
        f64::from(embedded.attained_order(DEFAULT_TOLERANCE)),
    );
    m.insert(
        "table3",
        &key,
        "embedded_rk_order",
        f64::from(embedded.explicit_subset().attained_order(DEFAULT_TOLERANCE)),
    );
    let worst = main.entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    m.insert("table3", &key, "max_residual", worst);
    m.insert(
        "table3",
        &key,
        "simplifying_residual",
        simplifying.iter().copied().fold(0.0, f64::max),
    );
    m.insert(
        "table3",
        &key,
        "stiffly_accurate",
        if check_stiffly_accurate(&t).holds {
            1.0
        } else {
            0.0
        },
    );
    m.insert("table3", &key, "r_infinity", r_infinity(&t)?);
    Ok(m)
}

/// Adaptive Tsit5DA on the five-mass pendulum at `rtol = atol = 1e-7, 1e-8`.
pub fn measure_table4() -> Result<Measurements, ExperimentError> {
    let t = tsit5da();
    let p = Pendulum::new(5)?;
    let mut m = Measurements::default();
    for (key, tol) in [("rtol=1e-7", 1e-7), ("rtol=1e-8", 1e-8)] {
        let row = pendulum_run(&t, &p, tol, tol)?;
        m.insert("table4", key, "nsucc", row.stats.nsucc as f64);
        m.insert("table4", key, "nfail", row.stats.nfail as f64);
        m.insert("table4", key, "nf", row.stats.nf as f64);
        m.insert("table4", key, "err_length", row.err_length);
        m.insert("table4", key, "initial_residual", row.initial_residual);
    }
    Ok(m)
}

/// Recomputes the tables referenced by `cells` and compares them.
///
/// With `quick` only the convergence table on the index-1 problem and the
/// coefficient check are recomputed, and cells of other tables are skipped.
pub fn reproduce(cells: &[GoldenCell], quick: bool) -> Result<GoldenReport, ExperimentError> {
    type Measure = fn() -> Result<Measurements, ExperimentError>;
    let all: [(&str, Measure); 4] = [
        ("table1", measure_table1),
        ("table2", measure_table2),
        ("table3", measure_table3),
        ("table4", measure_table4),
    ];
    let wanted = |table: &str| !quick || QUICK_TABLES.contains(&table);
    let mut measured = Measurements::default();
    let mut timings = Vec::new();
    for (table, measure) in all {
        if wanted(table) && cells.iter().any(|c| c.table == table) {
            let start = Instant::now();
            measured.extend(measure()?);
            timings.push((table.to_string(), start.elapsed().as_secs_f64()));
        }
    }
    let selected: Vec<GoldenCell> = cells.iter().filter(|c| wanted(&c.table)).cloned().collect();
    let mut report = compare(&selected, &measured);
    report.timings = timings;
    Ok(report)
}

/// [`reproduce`] against the built-in golden tables.
pub fn reproduce_all(quick: bool) -> Result<GoldenReport, ExperimentError> {
    reproduce(&builtin_golden(), quick)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_parses() {
        let cells = builtin_golden();
        assert!(cells.len() > 30);
        assert!(cells.iter().all(|c| !c.provenance.is_empty()));
    }

    #[test]
    fn step_keys_match_printed_sizes() {
        let keys: Vec<String> = (0..7)
            .map(|k| step_key(0.5 / f64::from(1u32 << k)))
            .collect();
        assert_eq!(
            keys,
            [
                "h=5.00e-1",
                "h=2.50e-1",
                "h=1.25e-1",
                "h=6.25e-2",
                "h=3.12e-2",
                "h=1.56e-2",
                "h=7.81e-3"
            ]
        );
    }

    #[test]
    fn tolerance_kinds() {
        let mut c = GoldenCell {
            table: "t".into(),
            row_key: "r".into(),
            column: "c".into(),
            expected: 1e-6,
            tolerance: 3.0,
            kind: ToleranceKind::Factor,
            provenance: "derived".into(),
        };
        assert!(c.accepts(2.9e-6) && c.accepts(0.34e-6));
        assert!(!c.accepts(3.1e-6) && !c.accepts(0.3e-6) && !c.accepts(f64::NAN));
        c.kind = ToleranceKind::AtMost;
        assert!(c.accepts(1e-7) && !c.accepts(2e-6));
        c.kind = ToleranceKind::AtLeast;
        assert!(c.accepts(2e-6) && !c.accepts(1e-7));
        c.kind = ToleranceKind::Absolute;
        c.tolerance = 0.3;
        c.expected = 5.0;
        assert!(c.accepts(5.29) && !c.accepts(4.6));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "table,row_key,column,expected,tolerance,tolerance_kind,provenance\n\
                    t,r,c,1.0,3,factor,derived\n\
                    t,r,c,x,3,factor,derived\n";
        match parse_golden(text) {
            Err(GoldenError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let bad_kind = "table,row_key,column,expected,tolerance,tolerance_kind,provenance\n\
                        t,r,c,1.0,3,roughly,derived\n";
        assert!(parse_golden(bad_kind).is_err());
    }

    #[test]
    fn missing_measurement_fails() {
        let cells = builtin_golden();
        let report = compare(&cells[..1], &Measurements::default());
        assert!(!report.passed());
        assert!(report.to_string().contains("table1[h=1.25e-1][err_main]"));
    }
}
