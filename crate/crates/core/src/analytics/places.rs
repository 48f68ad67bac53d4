use std::collections::BTreeSet;
use std::path::Path;

use super::AnalyticsError;

const ANTWERP: &str = include_str!("../../../../place-sets/antwerp.txt");

/// A set of place codes. The text form has one code per line; blank lines
/// and lines starting with `#` are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlaceSet(BTreeSet<String>);

impl PlaceSet {
    pub fn parse(text: &str) -> Self {
        Self(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect(),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AnalyticsError> {
        let path = path.as_ref();
        std::fs::read_to_string(path)
            .map(|t| Self::parse(&t))
            .map_err(|source| AnalyticsError::PlaceSetUnreadable {
                path: path.display().to_string(),
                source,
            })
    }

    /// Place codes of Antwerp.
    pub fn antwerp() -> Self {
        Self::parse(ANTWERP)
    }

    /// Built-in sets by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "antwerp" => Some(Self::antwerp()),
            _ => None,
        }
    }

    pub fn contains(&self, code: &str) -> bool {
        self.0.contains(code)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl FromIterator<String> for PlaceSet {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}
