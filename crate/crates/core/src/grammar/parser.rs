//! Recursive-descent parser from token stream to [`CollationFormula`].
//!
//! ```text
//! formula    := item ( SPACE? ( item | annotation ) )*
//! item       := signature ( '-' signature )? SIZE
//! signature  := '['? SERIES-DIGIT? ( SERIES-GREEK | GREEK-MARK )? DIGIT-PREFIX? MARK ']'?
//! annotation := '(' leaf 'blank' ')' | '(' leaf '+' item+ ')' | '(' text ')'
//! ```

use std::fmt;

use super::alphabet::Alphabet;
use super::ast::{Annotation, CollationFormula, GatheringItem, Greek, GreekPrefix, Mark, Signature, SizeSpec};
use super::normalize::{normalize, NormalizeError};
use super::range::range_len;
use super::token::{is_mark_start, tokenize_str, MarkClass, Token, TokenKind};

/// Largest gathering size the grammar accepts.
pub const MAX_SIZE: u32 = 999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReasonCode {
    EmptyInput,
    UnexpectedCharacter,
    DanglingRange,
    SizeMissing,
    UnbalancedParen,
    UnbalancedBracket,
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFailure {
    /// Byte offset into the normalized body.
    pub position: usize,
    pub reason: ReasonCode,
    pub message: String,
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}: {}", self.reason, self.position, self.message)
    }
}

impl std::error::Error for ParseFailure {}

#[derive(Debug, Clone)]
pub enum ParseReport {
    Success(CollationFormula),
    Failure(ParseFailure),
}

impl ParseReport {
    pub fn formula(&self) -> Option<&CollationFormula> {
        match self {
            ParseReport::Success(f) => Some(f),
            ParseReport::Failure(_) => None,
        }
    }

    pub fn into_result(self) -> Result<CollationFormula, ParseFailure> {
        match self {
            ParseReport::Success(f) => Ok(f),
            ParseReport::Failure(e) => Err(e),
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, ParseReport::Success(_))
    }
}

/// Parses with the default 23-letter alphabet.
pub fn parse(raw: &str) -> ParseReport {
    parse_with(raw, &Alphabet::default())
}

pub fn parse_with(raw: &str, alphabet: &Alphabet) -> ParseReport {
    let normalized = match normalize(raw) {
        Ok(n) => n,
        Err(NormalizeError::EmptyInput) => {
            return ParseReport::Failure(fail(0, ReasonCode::EmptyInput, "collation is empty"))
        }
    };
    let tokens = match tokenize_str(&normalized.body) {
        Ok(t) => t,
        Err(e) => {
            return ParseReport::Failure(fail(
                e.position,
                ReasonCode::UnexpectedCharacter,
                "character cannot start a token",
            ))
        }
    };
    let parser = Parser {
        body: &normalized.body,
        tokens: &tokens,
        alphabet,
    };
    match parser.items(0, tokens.len()) {
        Ok(items) => ParseReport::Success(CollationFormula {
            source: raw.to_string(),
            normalized,
            items,
        }),
        Err(e) => ParseReport::Failure(e),
    }
}

fn fail(position: usize, reason: ReasonCode, message: impl Into<String>) -> ParseFailure {
    ParseFailure {
        position,
        reason,
        message: message.into(),
    }
}

struct Parser<'a> {
    body: &'a str,
    tokens: &'a [Token],
    alphabet: &'a Alphabet,
}

type Parsed<T> = Result<T, ParseFailure>;

impl Parser<'_> {
    fn kind(&self, i: usize, hi: usize) -> Option<TokenKind> {
        (i < hi).then(|| self.tokens[i].kind)
    }

    fn pos(&self, i: usize) -> usize {
        self.tokens.get(i).map_or(self.body.len(), |t| t.start)
    }

    fn text(&self, i: usize) -> &str {
        self.tokens[i].text(self.body)
    }

    fn unexpected(&self, i: usize, what: &str) -> ParseFailure {
        let found = if i < self.tokens.len() {
            format!("found `{}`", self.text(i))
        } else {
            "found end of formula".to_string()
        };
        fail(self.pos(i), ReasonCode::UnexpectedCharacter, format!("expected {what}, {found}"))
    }

    /// Parses tokens `lo..hi` as a space-separated item list.
    fn items(&self, lo: usize, hi: usize) -> Parsed<Vec<GatheringItem>> {
        let mut items: Vec<GatheringItem> = Vec::new();
        let mut i = lo;
        loop {
            while self.kind(i, hi) == Some(TokenKind::Space) {
                i += 1;
            }
            let Some(kind) = self.kind(i, hi) else { break };
            match kind {
                TokenKind::OpenParen => {
                    let close = self.matching_paren(i, hi)?;
                    let annotation = self.annotation(i, close);
                    match items.last_mut() {
                        Some(item) => item.annotations.push(annotation),
                        None => return Err(self.unexpected(i, "a gathering before the note")),
                    }
                    i = close + 1;
                }
                TokenKind::CloseParen => {
                    return Err(fail(self.pos(i), ReasonCode::UnbalancedParen, "`)` without `(`"))
                }
                TokenKind::CloseBracket => {
                    return Err(fail(self.pos(i), ReasonCode::UnbalancedBracket, "`]` without `[`"))
                }
                _ => {
                    let (item, next) = self.item(i, hi)?;
                    items.push(item);
                    i = next;
                    match self.kind(i, hi) {
                        None | Some(TokenKind::Space | TokenKind::OpenParen) => {}
                        Some(TokenKind::CloseParen) => {
                            return Err(fail(self.pos(i), ReasonCode::UnbalancedParen, "`)` without `(`"))
                        }
                        Some(TokenKind::CloseBracket) => {
                            return Err(fail(self.pos(i), ReasonCode::UnbalancedBracket, "`]` without `[`"))
                        }
                        Some(_) => return Err(self.unexpected(i, "a space after the gathering size")),
                    }
                }
            }
        }
        if items.is_empty() {
            return Err(fail(self.pos(lo), ReasonCode::EmptyInput, "no gatherings"));
        }
        Ok(items)
    }

    fn matching_paren(&self, open: usize, hi: usize) -> Parsed<usize> {
        let mut depth = 0usize;
        for i in open..hi {
            match self.tokens[i].kind {
                TokenKind::OpenParen => depth += 1,
                TokenKind::CloseParen => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(i);
                    }
                }
                _ => {}
            }
        }
        Err(fail(self.pos(open), ReasonCode::UnbalancedParen, "`(` is never closed"))
    }

    fn annotation(&self, open: usize, close: usize) -> Annotation {
        let inner_start = self.tokens[open].end;
        let inner = &self.body[inner_start..self.tokens[close].start];
        let trimmed = inner.trim();
        if let Some((leaf, word)) = trimmed.split_once(' ') {
            if word == "blank" && is_leaf_ref(leaf) {
                return Annotation::BlankLeaf(leaf.to_string());
            }
        }
        if let Some((anchor, _)) = trimmed.split_once(" + ") {
            if is_leaf_ref(anchor) {
                let offset = inner_start + (inner.len() - inner.trim_start().len()) + anchor.len() + 3;
                let first = (open + 1..close).find(|&i| self.tokens[i].start == offset);
                if let Some(Ok(items)) = first.map(|lo| self.items(lo, close)) {
                    return Annotation::Insertion {
                        anchor: anchor.to_string(),
                        items,
                    };
                }
            }
        }
        Annotation::RawNote(inner.to_string())
    }

    fn item(&self, i: usize, hi: usize) -> Parsed<(GatheringItem, usize)> {
        let start_token = i;
        let (start, mut i) = self.signature(i, hi)?;
        let mut end = None;
        let mut dash = None;
        if self.kind(i, hi) == Some(TokenKind::RangeDash) {
            dash = Some(i);
            i += 1;
            if !matches!(
                self.kind(i, hi),
                Some(
                    TokenKind::SignatureMark(_)
                        | TokenKind::OpenBracket
                        | TokenKind::SeriesPrefix
                        | TokenKind::DigitPrefix
                )
            ) {
                return Err(fail(self.pos(i - 1), ReasonCode::DanglingRange, "range has no end mark"));
            }
            let (sig, next) = self.signature(i, hi)?;
            end = Some(sig);
            i = next;
        }
        if self.kind(i, hi) == Some(TokenKind::CloseBracket) {
            return Err(fail(self.pos(i), ReasonCode::UnbalancedBracket, "`]` without `[`"));
        }
        if self.kind(i, hi) != Some(TokenKind::Size) {
            return Err(fail(
                self.pos(start_token),
                ReasonCode::SizeMissing,
                format!("gathering `{}` has no size", &self.body[self.pos(start_token)..self.pos(i)]),
            ));
        }
        let size = self.size(i)?;
        let item = GatheringItem {
            start,
            end,
            size,
            annotations: Vec::new(),
        };
        if let Some(dash) = dash {
            if let Err(e) = range_len(&item, self.alphabet) {
                return Err(fail(self.pos(dash), ReasonCode::DanglingRange, e.to_string()));
            }
        }
        Ok((item, i + 1))
    }

    fn size(&self, i: usize) -> Parsed<SizeSpec> {
        let text = &self.text(i)[1..];
        let bad = |why: &str| fail(self.pos(i), ReasonCode::UnexpectedCharacter, format!("size `{text}` {why}"));
        let number = |s: &str| -> Parsed<u32> {
            match s.parse::<u32>() {
                Ok(n) if (1..=MAX_SIZE).contains(&n) => Ok(n),
                _ => Err(bad("is outside 1..=999")),
            }
        };
        match text.split_once('/') {
            None => Ok(SizeSpec::Uniform(number(text)?)),
            Some((a, b)) => {
                let (a, b) = (number(a)?, number(b)?);
                if a == b {
                    return Err(bad("alternates a size with itself"));
                }
                Ok(SizeSpec::Alternating(a, b))
            }
        }
    }

    fn signature(&self, mut i: usize, hi: usize) -> Parsed<(Signature, usize)> {
        let open = i;
        let bracketed = self.kind(i, hi) == Some(TokenKind::OpenBracket);
        if bracketed {
            i += 1;
        }
        let mut series_index = 1;
        if self.kind(i, hi) == Some(TokenKind::SeriesPrefix) {
            if let Some(d) = self.text(i)[1..].chars().next().and_then(|c| c.to_digit(10)) {
                if d == 0 {
                    return Err(self.unexpected(i, "a series number from 1 to 9"));
                }
                series_index = d;
                i += 1;
            }
        }
        let mut greek_prefix = None;
        match self.kind(i, hi) {
            Some(TokenKind::SeriesPrefix) => {
                greek_prefix = Some(GreekPrefix {
                    letter: greek(self.text(i)).ok_or_else(|| self.unexpected(i, "π or χ"))?,
                    superscript: true,
                });
                i += 1;
            }
            Some(TokenKind::SignatureMark(MarkClass::GreekPi | MarkClass::GreekChi))
                if matches!(
                    self.kind(i + 1, hi),
                    Some(TokenKind::SignatureMark(_) | TokenKind::DigitPrefix)
                ) && self.tokens[i].end == self.tokens[i + 1].start =>
            {
                greek_prefix = Some(GreekPrefix {
                    letter: greek(self.text(i)).expect("greek mark token"),
                    superscript: false,
                });
                i += 1;
            }
            _ => {}
        }
        let mut alphabet_repeat = 1;
        if self.kind(i, hi) == Some(TokenKind::DigitPrefix) {
            alphabet_repeat = match self.text(i).parse::<u32>() {
                Ok(n) if n >= 1 => n,
                _ => return Err(self.unexpected(i, "an alphabet repeat of at least 1")),
            };
            i += 1;
        }
        let class = match self.kind(i, hi) {
            Some(TokenKind::SignatureMark(class)) => class,
            _ => return Err(self.unexpected(i, "a quire mark")),
        };
        let mark = Mark {
            class,
            text: self.text(i).to_string(),
        };
        i += 1;
        if bracketed {
            if self.kind(i, hi) != Some(TokenKind::CloseBracket) {
                return Err(fail(self.pos(open), ReasonCode::UnbalancedBracket, "`[` is never closed"));
            }
            i += 1;
        }
        Ok((
            Signature {
                mark,
                alphabet_repeat,
                series_index,
                greek_prefix,
                bracketed,
            },
            i,
        ))
    }
}

fn greek(text: &str) -> Option<Greek> {
    match text.trim_start_matches('^') {
        "π" => Some(Greek::Pi),
        "χ" => Some(Greek::Chi),
        _ => None,
    }
}

/// A leaf reference such as `Z8`, `2A8`, `χ2` or `A^5`.
fn is_leaf_ref(s: &str) -> bool {
    s.ends_with(|c: char| c.is_ascii_digit())
        && s.chars().any(is_mark_start)
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || is_mark_start(c) || matches!(c, '^' | '[' | ']'))
}
