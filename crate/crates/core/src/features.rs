//! The 34-column quiring vector and its extraction from a parsed formula.
//!
//! Columns `1`..`20` record uniform gathering sizes, six columns record the
//! common alternating patterns, `double`..`septuple` record quire-mark series
//! 2 to 7 (`^2A`), and `pi`/`chi` record superscript π/χ prefixes. Presence
//! mode ([`extract_features`]) sets a column to 1 if the formula uses it at
//! all; count mode ([`extract_counts`]) counts gatherings after expanding
//! ranges.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use crate::grammar::{
    range_len, Alphabet, CollationFormula, GatheringItem, Greek, MarkClass, RangeError,
    Signature, SizeSpec,
};

pub const COLUMN_COUNT: usize = 34;

pub const QUIRING_COLUMNS: [&str; COLUMN_COUNT] = [
    "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16", "17",
    "18", "19", "20", "4/2", "4/6", "4/8", "6/8", "8/4", "8/6", "double", "triple", "quadruple",
    "quintuple", "sextuple", "septuple", "pi", "chi",
];

pub const ALTERNATING_PAIRS: [(u32, u32); 6] = [(4, 2), (4, 6), (4, 8), (6, 8), (8, 4), (8, 6)];

const MAX_UNIFORM: u32 = 20;
const FIRST_ALTERNATING: usize = 20;
const FIRST_SERIES: usize = 26;
const PI: usize = 32;
const CHI: usize = 33;

pub fn vector_columns() -> &'static [&'static str; COLUMN_COUNT] {
    &QUIRING_COLUMNS
}

pub fn column_index(name: &str) -> Option<usize> {
    QUIRING_COLUMNS.iter().position(|&c| c == name)
}

fn size_column(size: SizeSpec) -> Option<usize> {
    match size {
        SizeSpec::Uniform(n) if (1..=MAX_UNIFORM).contains(&n) => Some(n as usize - 1),
        SizeSpec::Uniform(_) => None,
        SizeSpec::Alternating(a, b) => ALTERNATING_PAIRS
            .iter()
            .position(|&p| p == (a, b))
            .map(|k| FIRST_ALTERNATING + k),
    }
}

fn series_column(series_index: u32) -> Option<usize> {
    (2..=7)
        .contains(&series_index)
        .then(|| FIRST_SERIES + series_index as usize - 2)
}

fn greek_column(greek: Greek) -> usize {
    match greek {
        Greek::Pi => PI,
        Greek::Chi => CHI,
    }
}

/// Columns a signature sets, besides the size.
fn signature_columns(sig: &Signature) -> impl Iterator<Item = usize> {
    series_column(sig.series_index)
        .into_iter()
        .chain(sig.superscript_greek().map(greek_column))
}

/// Observations the closed column schema cannot hold: sizes above 20,
/// alternating pairs outside the six listed, and inline (non-superscript) π/χ
/// marks. Keys are `"24"`, `"6/4"`, `"π"` and `"χ"`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extras(BTreeMap<String, u64>);

impl Extras {
    fn add(&mut self, key: String, n: u64) {
        *self.0.entry(key).or_default() += n;
    }

    pub fn get(&self, key: &str) -> u64 {
        self.0.get(key).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    fn record_item(&mut self, item: &GatheringItem, n: u64) {
        if size_column(item.size).is_none() {
            let key = match item.size {
                SizeSpec::Uniform(s) => s.to_string(),
                SizeSpec::Alternating(a, b) => format!("{a}/{b}"),
            };
            self.add(key, n);
        }
        for sig in item.signatures() {
            let inline_greek = match sig.mark.class {
                MarkClass::GreekPi => Some(Greek::Pi),
                MarkClass::GreekChi => Some(Greek::Chi),
                _ => None,
            }
            .into_iter()
            .chain(sig.greek_prefix.filter(|p| !p.superscript).map(|p| p.letter));
            for g in inline_greek {
                self.add(g.as_char().to_string(), 1);
            }
        }
    }
}

/// Presence flags, one per column of [`QUIRING_COLUMNS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuiringVector([u8; COLUMN_COUNT]);

impl Default for QuiringVector {
    fn default() -> Self {
        Self([0; COLUMN_COUNT])
    }
}

impl QuiringVector {
    pub fn from_flags(flags: [u8; COLUMN_COUNT]) -> Self {
        debug_assert!(flags.iter().all(|&f| f <= 1));
        Self(flags)
    }

    pub fn flags(&self) -> &[u8; COLUMN_COUNT] {
        &self.0
    }

    pub fn get(&self, column: &str) -> Option<u8> {
        column_index(column).map(|i| self.0[i])
    }

    /// Names of the columns set to 1.
    pub fn set_columns(&self) -> Vec<&'static str> {
        QUIRING_COLUMNS
            .iter()
            .zip(self.0)
            .filter(|&(_, f)| f == 1)
            .map(|(&name, _)| name)
            .collect()
    }

    /// Columnwise OR.
    pub fn union(&self, other: &Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] | other.0[i]))
    }
}

impl Index<usize> for QuiringVector {
    type Output = u8;

    fn index(&self, i: usize) -> &u8 {
        &self.0[i]
    }
}

impl fmt::Display for QuiringVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.set_columns().join(", "))
    }
}

/// Gathering counts per column, after range expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiringCounts {
    pub counts: [u64; COLUMN_COUNT],
    pub extras: Extras,
}

impl Default for QuiringCounts {
    fn default() -> Self {
        Self {
            counts: [0; COLUMN_COUNT],
            extras: Extras::default(),
        }
    }
}

impl QuiringCounts {
    pub fn get(&self, column: &str) -> Option<u64> {
        column_index(column).map(|i| self.counts[i])
    }

    /// Nonzero columns with their counts, in column order.
    pub fn nonzero(&self) -> Vec<(&'static str, u64)> {
        QUIRING_COLUMNS
            .iter()
            .zip(self.counts)
            .filter(|&(_, c)| c > 0)
            .map(|(&name, c)| (name, c))
            .collect()
    }

    pub fn presence(&self) -> QuiringVector {
        QuiringVector(std::array::from_fn(|i| (self.counts[i] > 0) as u8))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub vector: QuiringVector,
    pub extras: Extras,
}

pub fn extract_features(formula: &CollationFormula) -> QuiringVector {
    extract(formula).vector
}

/// Presence vector plus the out-of-schema side channel.
pub fn extract(formula: &CollationFormula) -> Extraction {
    let mut flags = [0u8; COLUMN_COUNT];
    let mut extras = Extras::default();
    for item in formula.all_items() {
        if let Some(c) = size_column(item.size) {
            flags[c] = 1;
        }
        for sig in item.signatures() {
            for c in signature_columns(sig) {
                flags[c] = 1;
            }
        }
        extras.record_item(item, 1);
    }
    Extraction {
        vector: QuiringVector(flags),
        extras,
    }
}

/// Counts gatherings rather than flagging presence.
///
/// A range counts once per signature it spans. Series and π/χ columns count
/// the gatherings whose signature carries the property; for a range, a
/// property written on either endpoint applies to the whole run.
pub fn extract_counts(formula: &CollationFormula, alphabet: &Alphabet) -> Result<QuiringCounts, RangeError> {
    let mut out = QuiringCounts::default();
    for item in formula.all_items() {
        let n = range_len(item, alphabet)? as u64;
        if let Some(c) = size_column(item.size) {
            out.counts[c] += n;
        }
        let mut columns: Vec<usize> = item.signatures().flat_map(signature_columns).collect();
        columns.sort_unstable();
        columns.dedup();
        for c in columns {
            out.counts[c] += n;
        }
        out.extras.record_item(item, n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse;

    fn features(raw: &str) -> Vec<&'static str> {
        extract_features(parse(raw).formula().unwrap()).set_columns()
    }

    fn counts(raw: &str) -> Vec<(&'static str, u64)> {
        extract_counts(parse(raw).formula().unwrap(), &Alphabet::default())
            .unwrap()
            .nonzero()
    }

    #[test]
    fn column_order() {
        let cols = vector_columns();
        assert_eq!(cols.len(), 34);
        assert_eq!(cols[0], "1");
        assert_eq!(cols[20], "4/2");
        assert_eq!(cols[33], "chi");
        assert_eq!(column_index("double"), Some(FIRST_SERIES));
        assert_eq!(column_index("pi"), Some(PI));
    }

    #[test]
    fn displayed_rows() {
        assert_eq!(features("1# π⁴ A- Z⁸ 2A⁶"), ["4", "6", "8"]);
        assert_eq!(features("3# [A] ⁸ B- Z⁸ (Z8 blank)"), ["8"]);
    }

    #[test]
    fn repeated_series() {
        assert_eq!(features("A-F^4 ^2A-F^4"), ["4", "double"]);
        assert_eq!(features("A^4 ^7B^4 ^8C^2"), ["2", "4", "septuple"]);
    }

    #[test]
    fn greek_prefixes() {
        // inline π/χ never sets the columns
        assert_eq!(features("π^4 χA^2 B^8"), ["2", "4", "8"]);
        assert_eq!(features("^πA^4 ^χB^2"), ["2", "4", "pi", "chi"]);
    }

    #[test]
    fn inserted_items_count() {
        assert_eq!(features("A^8 (A5 + ^χA^2 B-D^6)"), ["2", "6", "8", "chi"]);
    }

    #[test]
    fn out_of_schema_goes_to_extras() {
        let f = parse("π^4 A-C^24 D^6/4 E^4/2").into_result().unwrap();
        let e = extract(&f);
        assert_eq!(e.vector.set_columns(), ["4", "4/2"]);
        assert_eq!(e.extras.get("24"), 1);
        assert_eq!(e.extras.get("6/4"), 1);
        assert_eq!(e.extras.get("π"), 1);
        let c = extract_counts(&f, &Alphabet::default()).unwrap();
        assert_eq!(c.extras.get("24"), 3);
    }

    #[test]
    fn counts_expand_ranges() {
        assert_eq!(counts("A-F^4 G^2"), [("2", 1), ("4", 6)]);
        assert_eq!(counts("A^8"), [("8", 1)]);
        assert_eq!(counts("π^4 A-Z^8 2A^6"), [("4", 1), ("6", 1), ("8", 23)]);
        assert_eq!(counts("A-F^4 ^2A-F^4"), [("4", 12), ("double", 6)]);
    }

    #[test]
    fn counts_reject_letters_outside_alphabet() {
        let wide = Alphabet::parse("A B C D E F G H I J").unwrap();
        let f = crate::grammar::parse_with("A-J^4", &wide).into_result().unwrap();
        assert!(extract_counts(&f, &wide).is_ok());
        assert!(matches!(
            extract_counts(&f, &Alphabet::default()),
            Err(RangeError::LetterNotInAlphabet(_))
        ));
    }
}
