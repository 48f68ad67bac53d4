use std::fmt;

use thiserror::Error;

/// The 23-letter signing alphabet of the hand-press period: no J, U or W.
pub const DEFAULT_LETTERS: [char; 23] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'K', 'L', 'M', 'N', 'O', 'P', 'Q', 'R', 'S', 'T',
    'V', 'X', 'Y', 'Z',
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("`{0}` is not a single Latin letter")]
    NotALetter(String),
    #[error("letter `{0}` listed twice")]
    Duplicate(char),
}

/// Ordered signing letters used to expand ranges such as `A-F`.
///
/// Lookups ignore case, so lowercase alphabets (`a-e`) expand against the
/// same sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Default for Alphabet {
    fn default() -> Self {
        Self {
            letters: DEFAULT_LETTERS.to_vec(),
        }
    }
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, AlphabetError> {
        let mut out: Vec<char> = Vec::new();
        for c in letters {
            if !c.is_ascii_alphabetic() {
                return Err(AlphabetError::NotALetter(c.to_string()));
            }
            let c = c.to_ascii_uppercase();
            if out.contains(&c) {
                return Err(AlphabetError::Duplicate(c));
            }
            out.push(c);
        }
        if out.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(Self { letters: out })
    }

    /// Parses an alphabet file: letters separated by whitespace or commas,
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, AlphabetError> {
        let mut letters = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for item in line.split(|c: char| c.is_whitespace() || c == ',') {
                if item.is_empty() {
                    continue;
                }
                let mut chars = item.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => letters.push(c),
                    _ => return Err(AlphabetError::NotALetter(item.to_string())),
                }
            }
        }
        Self::new(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        let c = c.to_ascii_uppercase();
        self.letters.iter().position(|&l| l == c)
    }

    pub fn letter(&self, index: usize) -> Option<char> {
        self.letters.get(index).copied()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_skips_j_u_w() {
        let a = Alphabet::default();
        assert_eq!(a.len(), 23);
        for c in ['J', 'U', 'W'] {
            assert_eq!(a.index_of(c), None);
        }
        assert_eq!(a.index_of('k'), Some(9));
        assert_eq!(a.letter(22), Some('Z'));
    }

    #[test]
    fn parse_file_format() {
        let a = Alphabet::parse("# 24 letters\nA B C D E F G H I J K L M N O P Q R S T U V X Y Z\n")
            .unwrap();
        assert_eq!(a.len(), 25);
        assert_eq!(Alphabet::parse("A, b,c").unwrap().letters(), ['A', 'B', 'C']);
        assert_eq!(Alphabet::parse(""), Err(AlphabetError::Empty));
        assert_eq!(Alphabet::parse("A a"), Err(AlphabetError::Duplicate('A')));
        assert!(matches!(Alphabet::parse("AB"), Err(AlphabetError::NotALetter(_))));
    }
}
