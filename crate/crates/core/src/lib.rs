//! Parsing and data mining of hand-press collation formulas.
//!
//! The crate turns catalogue collation strings such as `1# π⁴ A- Z⁸ 2A⁶` into
//! a typed AST ([`grammar`]), derives a 34-column quiring vector from each
//! formula ([`features`]), loads and cleans catalogue rows from SQLite or CSV
//! ([`ingest`]) and aggregates the vectors by format, century and place
//! ([`analytics`]).

pub mod analytics;
pub mod features;
pub mod grammar;
pub mod ingest;

pub use features::{extract_counts, extract_features, vector_columns, QuiringCounts, QuiringVector};
pub use grammar::{parse, parse_with, serialize, Alphabet, CollationFormula, ParseReport};
pub use ingest::{load_catalogue, load_csv, EditionRecord};
