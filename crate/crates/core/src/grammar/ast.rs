//! Parsed collation formulas and their canonical text form.

use std::fmt::{self, Write};

use super::normalize::NormalizedFormula;
use super::token::{MarkClass, GREEK_CHI, GREEK_PI};

/// The printed quire mark itself, without prefixes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mark {
    pub class: MarkClass,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Greek {
    Pi,
    Chi,
}

impl Greek {
    pub fn as_char(self) -> char {
        match self {
            Greek::Pi => GREEK_PI,
            Greek::Chi => GREEK_CHI,
        }
    }
}

/// A π or χ standing before a quire mark (`χA`, `^πA`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GreekPrefix {
    pub letter: Greek,
    /// Written as a superscript (`^χA`) rather than inline (`χA`).
    pub superscript: bool,
}

/// One quire mark with its prefixes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub mark: Mark,
    /// Alphabet pass from a plain digit prefix: `2A` is 2.
    pub alphabet_repeat: u32,
    /// Series from a superscript digit prefix: `^2A` is 2.
    pub series_index: u32,
    pub greek_prefix: Option<GreekPrefix>,
    /// Supplied by the cataloguer: `[A]`.
    pub bracketed: bool,
}

impl Signature {
    pub fn latin(letter: &str) -> Self {
        Self {
            mark: Mark {
                class: MarkClass::LatinLetters,
                text: letter.to_string(),
            },
            alphabet_repeat: 1,
            series_index: 1,
            greek_prefix: None,
            bracketed: false,
        }
    }

    pub fn is_latin(&self) -> bool {
        self.mark.class == MarkClass::LatinLetters
    }

    /// The superscript Greek letter before the mark, if any.
    pub fn superscript_greek(&self) -> Option<Greek> {
        self.greek_prefix
            .filter(|p| p.superscript)
            .map(|p| p.letter)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bracketed {
            f.write_char('[')?;
        }
        if self.series_index > 1 {
            write!(f, "^{}", self.series_index)?;
        }
        if let Some(prefix) = self.greek_prefix {
            if prefix.superscript {
                f.write_char('^')?;
            }
            f.write_char(prefix.letter.as_char())?;
        }
        if self.alphabet_repeat > 1 {
            write!(f, "{}", self.alphabet_repeat)?;
        }
        f.write_str(&self.mark.text)?;
        if self.bracketed {
            f.write_char(']')?;
        }
        Ok(())
    }
}

/// Leaves per gathering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeSpec {
    Uniform(u32),
    /// Gatherings alternate between two sizes: `^4/2`.
    Alternating(u32, u32),
}

impl fmt::Display for SizeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeSpec::Uniform(n) => write!(f, "^{n}"),
            SizeSpec::Alternating(a, b) => write!(f, "^{a}/{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Annotation {
    /// `(Z8 blank)`
    BlankLeaf(String),
    /// `(A5 + χA^2 B-D^8)`: gatherings inserted after the anchor leaf.
    Insertion {
        anchor: String,
        items: Vec<GatheringItem>,
    },
    RawNote(String),
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Annotation::BlankLeaf(leaf) => write!(f, "({leaf} blank)"),
            Annotation::Insertion { anchor, items } => {
                write!(f, "({anchor} + ")?;
                write_items(f, items)?;
                f.write_char(')')
            }
            Annotation::RawNote(text) => write!(f, "({text})"),
        }
    }
}

/// A single gathering or a signature range sharing one size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GatheringItem {
    pub start: Signature,
    pub end: Option<Signature>,
    pub size: SizeSpec,
    pub annotations: Vec<Annotation>,
}

impl GatheringItem {
    /// Visits this item and, depth first, every item inserted by its
    /// annotations.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a GatheringItem)) {
        visit(self);
        for annotation in &self.annotations {
            if let Annotation::Insertion { items, .. } = annotation {
                for item in items {
                    item.walk(visit);
                }
            }
        }
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        std::iter::once(&self.start).chain(self.end.as_ref())
    }
}

impl fmt::Display for GatheringItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        if let Some(end) = &self.end {
            write!(f, "-{end}")?;
        }
        write!(f, "{}", self.size)?;
        for annotation in &self.annotations {
            write!(f, " {annotation}")?;
        }
        Ok(())
    }
}

fn write_items(f: &mut fmt::Formatter<'_>, items: &[GatheringItem]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A successfully parsed collation formula.
#[derive(Debug, Clone)]
pub struct CollationFormula {
    pub source: String,
    pub normalized: NormalizedFormula,
    pub items: Vec<GatheringItem>,
}

impl CollationFormula {
    pub fn volume(&self) -> Option<u32> {
        self.normalized.volume
    }

    pub fn truncated(&self) -> bool {
        self.normalized.truncated
    }

    /// Every item, including those nested in insertions, depth first.
    pub fn all_items(&self) -> Vec<&GatheringItem> {
        let mut out = Vec::new();
        for item in &self.items {
            item.walk(&mut |i| out.push(i));
        }
        out
    }

    /// Canonical body text without volume marker or truncation marker.
    pub fn body_text(&self) -> String {
        self.items
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Structural equality: volume, truncation and items. The source text is
    /// ignored.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.volume() == other.volume()
            && self.truncated() == other.truncated()
            && self.items == other.items
    }
}

/// Canonical caret-form text: `[N# ]item item...[...]`.
pub fn serialize(formula: &CollationFormula) -> String {
    let mut out = String::new();
    if let Some(volume) = formula.volume() {
        let _ = write!(out, "{volume}# ");
    }
    out.push_str(&formula.body_text());
    if formula.truncated() {
        out.push_str("...");
    }
    out
}
