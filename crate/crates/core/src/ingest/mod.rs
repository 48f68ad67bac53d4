//! Catalogue records: loading, cleaning and row-level CSV export.

mod catalogue;
mod csv_io;

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalogue::{load_catalogue, CATALOGUE_QUERY};
pub use csv_io::{
    export_records, export_rows, export_vectors, load_csv, read_csv, write_records, write_rows,
    write_vectors, ALL_CSV, ALL_QUIRING_CSV, QUIRING_CSV,
};

/// Column names of an [`EditionRecord`] row, in file order.
pub const RECORD_COLUMNS: [&str; 9] = [
    "identifier",
    "format",
    "collation",
    "year1",
    "year2",
    "place_code",
    "place_name",
    "publisher_code",
    "publisher_name",
];

/// One collation row of the catalogue. Editions in several volumes appear
/// once per volume, all sharing the identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EditionRecord {
    pub identifier: String,
    pub format: String,
    pub collation: String,
    pub year1: String,
    pub year2: String,
    pub place_code: String,
    pub place_name: String,
    pub publisher_code: String,
    pub publisher_name: String,
}

impl EditionRecord {
    pub fn fields(&self) -> [&str; 9] {
        [
            &self.identifier,
            &self.format,
            &self.collation,
            &self.year1,
            &self.year2,
            &self.place_code,
            &self.place_name,
            &self.publisher_code,
            &self.publisher_name,
        ]
    }

    pub(crate) fn from_fields(f: [String; 9]) -> Self {
        let [identifier, format, collation, year1, year2, place_code, place_name, publisher_code, publisher_name] =
            f;
        Self {
            identifier,
            format,
            collation,
            year1,
            year2,
            place_code,
            place_name,
            publisher_code,
            publisher_name,
        }
    }

    /// A row that repeats the column labels instead of data.
    pub fn is_header_echo(&self) -> bool {
        self.identifier == RECORD_COLUMNS[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DropReason {
    EmptyFormat,
    DashFormat,
    EmptyCollation,
    TrailingHash,
    VolumesPlaceholder,
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cleaning {
    Keep,
    Drop(DropReason),
}

/// The catalogue query's row filters:
///
/// ```sql
/// not format='' and not format='- ' and not collation_ka=''
/// and not collation_ka like '%#' and not collation_ka like '% volumes'
/// ```
///
/// `like` is SQLite's: `%` matches any run, ASCII letters compare without case.
pub fn clean(record: &EditionRecord) -> Cleaning {
    let collation = record.collation.as_str();
    let reason = if record.format.is_empty() {
        DropReason::EmptyFormat
    } else if record.format == "- " {
        DropReason::DashFormat
    } else if collation.is_empty() {
        DropReason::EmptyCollation
    } else if collation.ends_with('#') {
        DropReason::TrailingHash
    } else if ends_with_ignore_ascii_case(collation, " volumes") {
        DropReason::VolumesPlaceholder
    } else {
        return Cleaning::Keep;
    };
    Cleaning::Drop(reason)
}

fn ends_with_ignore_ascii_case(s: &str, suffix: &str) -> bool {
    s.len() >= suffix.len()
        && s.is_char_boundary(s.len() - suffix.len())
        && s[s.len() - suffix.len()..].eq_ignore_ascii_case(suffix)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CleanReport {
    pub kept: usize,
    pub dropped: Vec<(String, DropReason)>,
    /// Rows skipped because they repeat the column labels.
    pub header_rows: usize,
    /// Rows that could not be decoded, as `Error: ...` lines.
    pub row_errors: Vec<String>,
}

impl CleanReport {
    pub fn examined(&self) -> usize {
        self.kept + self.dropped.len()
    }

    pub fn count(&self, reason: DropReason) -> usize {
        self.dropped.iter().filter(|(_, r)| *r == reason).count()
    }
}

/// Cleaned records together with what was dropped on the way.
#[derive(Debug, Clone, Default)]
pub struct Loaded {
    pub records: Vec<EditionRecord>,
    pub report: CleanReport,
}

/// Applies [`clean`] to every record, keeping the survivors.
pub fn clean_all(records: impl IntoIterator<Item = EditionRecord>) -> Loaded {
    let mut report = CleanReport::default();
    let mut kept = Vec::new();
    for record in records {
        if record.is_header_echo() {
            report.header_rows += 1;
            continue;
        }
        match clean(&record) {
            Cleaning::Keep => {
                report.kept += 1;
                kept.push(record);
            }
            Cleaning::Drop(reason) => report.dropped.push((record.identifier, reason)),
        }
    }
    Loaded {
        records: kept,
        report,
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    FileUnreadable {
        path: PathBuf,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error("catalogue schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("CSV header does not match the record columns: {0}")]
    HeaderMismatch(String),
    #[error("malformed CSV row at line {line}: {message}")]
    MalformedRow { line: u64, message: String },
    #[error("cannot write {path}: {source}")]
    WriteFailure {
        path: PathBuf,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error("{records} records but {vectors} feature vectors")]
    Misaligned { records: usize, vectors: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, format: &str, collation: &str) -> EditionRecord {
        EditionRecord::from_fields([
            id.into(),
            format.into(),
            collation.into(),
            "1600".into(),
            "".into(),
            "".into(),
            "".into(),
            "".into(),
            "".into(),
        ])
    }

    #[test]
    fn predicates() {
        let c = |f: &str, col: &str| clean(&record("x", f, col));
        assert_eq!(c("- ", "A^8"), Cleaning::Drop(DropReason::DashFormat));
        assert_eq!(c("", "A^8"), Cleaning::Drop(DropReason::EmptyFormat));
        assert_eq!(c("folio", ""), Cleaning::Drop(DropReason::EmptyCollation));
        assert_eq!(c("folio", "16#"), Cleaning::Drop(DropReason::TrailingHash));
        assert_eq!(c("quarto", "3 volumes"), Cleaning::Drop(DropReason::VolumesPlaceholder));
        assert_eq!(c("quarto", "3 Volumes"), Cleaning::Drop(DropReason::VolumesPlaceholder));
        assert_eq!(c("octavo", "A^8"), Cleaning::Keep);
        // a volume marker at the start is not a trailing hash
        assert_eq!(c("octavo", "1# π⁴ A- Z⁸ 2A⁶"), Cleaning::Keep);
        assert_eq!(c("-", "A^8"), Cleaning::Keep);
        assert_eq!(c("folio", "volumes"), Cleaning::Keep);
        assert_eq!(c("folio", "χ volumes"), Cleaning::Drop(DropReason::VolumesPlaceholder));
    }

    #[test]
    fn cleaning_twice_is_cleaning_once() {
        let rows = vec![
            record("a", "folio", "A^6"),
            record("b", "- ", "A^6"),
            record("c", "quarto", "2 volumes"),
            record("identifier", "format", "collation"),
        ];
        let once = clean_all(rows);
        assert_eq!(once.report.kept, 1);
        assert_eq!(once.report.header_rows, 1);
        assert_eq!(once.report.examined(), 3);
        let twice = clean_all(once.records.clone());
        assert_eq!(once.records, twice.records);
        assert!(twice.report.dropped.is_empty());
    }
}
