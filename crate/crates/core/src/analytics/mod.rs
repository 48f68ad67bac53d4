//! Featurized tables, filters, sums and pivots.

mod places;
mod pivot;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::ops::AddAssign;
use std::path::Path;

use thiserror::Error;

use crate::features::{column_index, extract_features, QuiringVector, COLUMN_COUNT, QUIRING_COLUMNS};
use crate::grammar::{parse_with, Alphabet, ParseFailure};
use crate::ingest::EditionRecord;

pub use places::PlaceSet;
pub use pivot::{
    century_range, pivot_centuries, pivot_evolution, pivot_formats, CENTURIES, CENTURIES_CSV, EVOLUTION_CSV,
    FORMATS_CSV,
};

/// Bibliographic formats in table order.
pub const FORMATS: [&str; 9] = [
    "plano",
    "folio",
    "quarto",
    "octavo",
    "duodecimo",
    "sextodecimo",
    "octodecimo",
    "vicesimoquarto",
    "tricesimosecundo",
];

/// Formats compared across centuries.
pub const STANDARD_FORMATS: [&str; 4] = ["folio", "quarto", "octavo", "duodecimo"];

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("unknown format `{0}`; expected one of {FORMATS:?}")]
    UnknownFormatName(String),
    #[error("year range {lo}:{hi} is empty")]
    EmptyYearRange { lo: i64, hi: i64 },
    #[error("duplicate row label `{0}`")]
    DuplicateLabel(String),
    #[error("cannot read place set {path}: {source}")]
    PlaceSetUnreadable { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    WriteFailure { path: String, source: csv::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureRow {
    pub record: EditionRecord,
    pub vector: QuiringVector,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureTable {
    pub rows: Vec<FeatureRow>,
}

impl FeatureTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn records(&self) -> Vec<EditionRecord> {
        self.rows.iter().map(|r| r.record.clone()).collect()
    }

    pub fn vectors(&self) -> Vec<QuiringVector> {
        self.rows.iter().map(|r| r.vector).collect()
    }

    fn retain(&self, keep: impl Fn(&FeatureRow) -> bool) -> FeatureTable {
        FeatureTable {
            rows: self.rows.iter().filter(|r| keep(r)).cloned().collect(),
        }
    }
}

/// A record whose collation did not parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeaturizeFailure {
    pub identifier: String,
    pub collation: String,
    pub failure: ParseFailure,
}

impl fmt::Display for FeaturizeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}: {}", self.identifier, self.collation, self.failure)
    }
}

/// Parses and featurizes every record. Unparseable collations are left out
/// of the table and returned alongside it.
pub fn featurize(
    records: impl IntoIterator<Item = EditionRecord>,
    alphabet: &Alphabet,
) -> (FeatureTable, Vec<FeaturizeFailure>) {
    let mut table = FeatureTable::default();
    let mut failures = Vec::new();
    for record in records {
        match parse_with(&record.collation, alphabet).into_result() {
            Ok(formula) => {
                let vector = extract_features(&formula);
                table.rows.push(FeatureRow { record, vector });
            }
            Err(failure) => failures.push(FeaturizeFailure {
                identifier: record.identifier,
                collation: record.collation,
                failure,
            }),
        }
    }
    (table, failures)
}

/// Inclusive range of publication years.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YearRange {
    pub lo: i64,
    pub hi: i64,
}

impl YearRange {
    pub fn new(lo: i64, hi: i64) -> Result<Self, AnalyticsError> {
        if lo > hi {
            return Err(AnalyticsError::EmptyYearRange { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, year: i64) -> bool {
        (self.lo..=self.hi).contains(&year)
    }
}

/// Reads a year cell numerically; `1601` and `1601.0` are both 1601.
pub fn numeric_year(text: &str) -> Option<i64> {
    let text = text.trim();
    if let Ok(n) = text.parse::<i64>() {
        return Some(n);
    }
    let x = text.parse::<f64>().ok()?;
    (x.is_finite() && x.fract() == 0.0).then_some(x as i64)
}

/// Row selection. Every present criterion must hold.
#[derive(Debug, Clone, Default)]
pub struct FilterSpec {
    pub format: Option<String>,
    /// Applied to `year1`; rows with a non-numeric year are excluded.
    pub years: Option<YearRange>,
    pub places: Option<PlaceSet>,
    /// Sum per edition (flags OR-ed over an identifier's rows) instead of
    /// per row.
    pub per_edition: bool,
}

impl FilterSpec {
    pub fn format(mut self, name: &str) -> Self {
        self.format = Some(name.to_string());
        self
    }

    pub fn years(mut self, range: YearRange) -> Self {
        self.years = Some(range);
        self
    }

    pub fn places(mut self, places: PlaceSet) -> Self {
        self.places = Some(places);
        self
    }

    pub fn validate(&self) -> Result<(), AnalyticsError> {
        if let Some(name) = &self.format {
            if !FORMATS.contains(&name.as_str()) {
                return Err(AnalyticsError::UnknownFormatName(name.clone()));
            }
        }
        if let Some(YearRange { lo, hi }) = self.years {
            YearRange::new(lo, hi)?;
        }
        Ok(())
    }

    pub fn matches(&self, record: &EditionRecord) -> bool {
        if let Some(format) = &self.format {
            if &record.format != format {
                return false;
            }
        }
        if let Some(range) = self.years {
            match numeric_year(&record.year1) {
                Some(y) if range.contains(y) => {}
                _ => return false,
            }
        }
        if let Some(places) = &self.places {
            if !places.contains(&record.place_code) {
                return false;
            }
        }
        true
    }
}

pub fn filter(table: &FeatureTable, spec: &FilterSpec) -> Result<FeatureTable, AnalyticsError> {
    spec.validate()?;
    Ok(table.retain(|row| spec.matches(&row.record)))
}

/// A labeled row of 34 column sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateRow {
    pub label: String,
    pub sums: [u64; COLUMN_COUNT],
}

impl AggregateRow {
    pub fn zero(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            sums: [0; COLUMN_COUNT],
        }
    }

    pub fn get(&self, column: &str) -> Option<u64> {
        column_index(column).map(|i| self.sums[i])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn add_vector(&mut self, v: &QuiringVector) {
        for (sum, &flag) in self.sums.iter_mut().zip(v.flags()) {
            *sum += u64::from(flag);
        }
    }

    /// Nonzero columns in column order.
    pub fn nonzero(&self) -> Vec<(&'static str, u64)> {
        QUIRING_COLUMNS
            .iter()
            .zip(self.sums)
            .filter(|&(_, s)| s > 0)
            .map(|(&c, s)| (c, s))
            .collect()
    }

    pub fn max(&self) -> u64 {
        self.sums.iter().copied().max().unwrap_or(0)
    }
}

impl AddAssign<&AggregateRow> for AggregateRow {
    fn add_assign(&mut self, other: &AggregateRow) {
        for (a, b) in self.sums.iter_mut().zip(other.sums) {
            *a += b;
        }
    }
}

/// Per-row column sums.
pub fn sum_features(table: &FeatureTable) -> AggregateRow {
    let mut row = AggregateRow::zero("total");
    for r in &table.rows {
        row.add_vector(&r.vector);
    }
    row
}

/// Column sums per edition: an edition counts once for a column if any of
/// its rows has the flag.
pub fn sum_features_per_edition(table: &FeatureTable) -> AggregateRow {
    let mut editions: HashMap<&str, QuiringVector> = HashMap::new();
    for r in &table.rows {
        let entry = editions.entry(r.record.identifier.as_str()).or_default();
        *entry = entry.union(&r.vector);
    }
    let mut row = AggregateRow::zero("total");
    for v in editions.values() {
        row.add_vector(v);
    }
    row
}

/// Filters then sums, honoring `spec.per_edition`.
pub fn summarize(table: &FeatureTable, spec: &FilterSpec) -> Result<AggregateRow, AnalyticsError> {
    let subset = filter(table, spec)?;
    Ok(if spec.per_edition {
        sum_features_per_edition(&subset)
    } else {
        sum_features(&subset)
    })
}

/// Rows with unique labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AggregateTable {
    rows: Vec<AggregateRow>,
}

impl AggregateTable {
    pub fn new(rows: Vec<AggregateRow>) -> Result<Self, AnalyticsError> {
        for (i, row) in rows.iter().enumerate() {
            if rows[..i].iter().any(|r| r.label == row.label) {
                return Err(AnalyticsError::DuplicateLabel(row.label.clone()));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[AggregateRow] {
        &self.rows
    }

    pub fn row(&self, label: &str) -> Option<&AggregateRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Columnwise total of all rows.
    pub fn total(&self) -> AggregateRow {
        let mut out = AggregateRow::zero("total");
        for r in &self.rows {
            out += r;
        }
        out
    }
}

/// CSV with a `label` column followed by the 34 feature columns.
pub fn write_table<W: Write>(writer: W, table: &AggregateTable) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(std::iter::once("label").chain(QUIRING_COLUMNS))?;
    for row in table.rows() {
        w.write_record(std::iter::once(row.label.clone()).chain(row.sums.iter().map(u64::to_string)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_table(table: &AggregateTable, path: impl AsRef<Path>) -> Result<(), AnalyticsError> {
    let path = path.as_ref();
    let fail = |source: csv::Error| AnalyticsError::WriteFailure {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(|e| fail(e.into()))?;
    write_table(io::BufWriter::new(file), table).map_err(fail)
}

/// Row counts of formats outside [`FORMATS`]; such rows pass through filters
/// that do not constrain format but appear in no format pivot row.
pub fn format_diagnostics(table: &FeatureTable) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for r in &table.rows {
        if !FORMATS.contains(&r.record.format.as_str()) {
            *out.entry(r.record.format.clone()).or_default() += 1;
        }
    }
    out
}
