//! Lexer over a normalized collation body.

use std::fmt;

use thiserror::Error;

use super::normalize::{caret_is_prefix, NormalizedFormula};

pub const GREEK_PI: char = 'π';
pub const GREEK_CHI: char = 'χ';

/// Non-letter characters accepted as quire marks.
pub const OTHER_SYMBOLS: [char; 9] = ['*', '†', '‡', '§', '¶', '‖', '&', '⁂', '☞'];

pub fn is_other_symbol(c: char) -> bool {
    OTHER_SYMBOLS.contains(&c)
}

/// Characters that can open a quire mark.
pub fn is_mark_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == GREEK_PI || c == GREEK_CHI || is_other_symbol(c)
}

fn is_structural(c: char) -> bool {
    matches!(c, '[' | ']' | '(' | ')' | '+' | '-' | '^') || c.is_whitespace()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkClass {
    LatinLetters,
    GreekPi,
    GreekChi,
    OtherSymbol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    SignatureMark(MarkClass),
    DigitPrefix,
    SeriesPrefix,
    Size,
    RangeDash,
    OpenBracket,
    CloseBracket,
    OpenParen,
    CloseParen,
    Plus,
    Word,
    Space,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TokenKind::SignatureMark(_) => "SIGNATURE-MARK",
            TokenKind::DigitPrefix => "DIGIT-PREFIX",
            TokenKind::SeriesPrefix => "SERIES-PREFIX",
            TokenKind::Size => "SIZE",
            TokenKind::RangeDash => "RANGE-DASH",
            TokenKind::OpenBracket => "OPEN-BRACKET",
            TokenKind::CloseBracket => "CLOSE-BRACKET",
            TokenKind::OpenParen => "OPEN-PAREN",
            TokenKind::CloseParen => "CLOSE-PAREN",
            TokenKind::Plus => "PLUS",
            TokenKind::Word => "WORD",
            TokenKind::Space => "SPACE",
        };
        f.write_str(name)
    }
}

/// A lexeme: kind plus byte span into the body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn text<'a>(&self, body: &'a str) -> &'a str {
        &body[self.start..self.end]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("unexpected character at byte {position}")]
pub struct UnexpectedCharacter {
    pub position: usize,
}

pub fn tokenize(formula: &NormalizedFormula) -> Result<Vec<Token>, UnexpectedCharacter> {
    tokenize_str(&formula.body)
}

pub(crate) fn tokenize_str(body: &str) -> Result<Vec<Token>, UnexpectedCharacter> {
    let mut tokens = Vec::new();
    let mut pos = 0;
    while let Some(c) = body[pos..].chars().next() {
        let start = pos;
        let single = |kind| Token {
            kind,
            start,
            end: start + c.len_utf8(),
        };
        match c {
            _ if c.is_control() => return Err(UnexpectedCharacter { position: pos }),
            _ if c.is_whitespace() => {
                let len: usize = body[pos..]
                    .chars()
                    .take_while(|c| c.is_whitespace() && !c.is_control())
                    .map(char::len_utf8)
                    .sum();
                tokens.push(Token {
                    kind: TokenKind::Space,
                    start,
                    end: start + len,
                });
            }
            '[' => tokens.push(single(TokenKind::OpenBracket)),
            ']' => tokens.push(single(TokenKind::CloseBracket)),
            '(' => tokens.push(single(TokenKind::OpenParen)),
            ')' => tokens.push(single(TokenKind::CloseParen)),
            '+' => tokens.push(single(TokenKind::Plus)),
            '-' => tokens.push(single(TokenKind::RangeDash)),
            '^' => tokens.push(lex_caret(body, pos)?),
            _ => lex_chunk(body, pos, &mut tokens),
        }
        pos = tokens.last().map_or(pos, |t| t.end);
    }
    Ok(tokens)
}

fn lex_caret(body: &str, start: usize) -> Result<Token, UnexpectedCharacter> {
    let rest = &body[start..];
    let err = UnexpectedCharacter { position: start };
    let after = &rest[1..];
    match after.chars().next() {
        Some(g @ (GREEK_PI | GREEK_CHI)) => Ok(Token {
            kind: TokenKind::SeriesPrefix,
            start,
            end: start + 1 + g.len_utf8(),
        }),
        Some(c) if c.is_ascii_digit() => {
            if caret_is_prefix(rest) {
                // one superscript digit only; further digits repeat the alphabet
                return Ok(Token {
                    kind: TokenKind::SeriesPrefix,
                    start,
                    end: start + 2,
                });
            }
            let mut end = 1 + after.bytes().take_while(u8::is_ascii_digit).count();
            if rest[end..].starts_with('/') {
                let denominator = rest[end + 1..]
                    .bytes()
                    .take_while(u8::is_ascii_digit)
                    .count();
                if denominator == 0 {
                    return Err(UnexpectedCharacter {
                        position: start + end,
                    });
                }
                end += 1 + denominator;
            }
            Ok(Token {
                kind: TokenKind::Size,
                start,
                end: start + end,
            })
        }
        _ => Err(err),
    }
}

/// Lexes a maximal run of non-structural characters. Runs shaped like a quire
/// mark (`A`, `2A`, `Aa`, `χA`, `**`) split into prefix and mark tokens; any
/// other run (`blank`, `Z8`) is a single word.
fn lex_chunk(body: &str, start: usize, tokens: &mut Vec<Token>) {
    let len: usize = body[start..]
        .chars()
        .take_while(|&c| !is_structural(c) && !c.is_control())
        .map(char::len_utf8)
        .sum();
    let chunk = &body[start..start + len];
    match split_signature_chunk(chunk) {
        Some(parts) => tokens.extend(parts.into_iter().map(|(kind, a, b)| Token {
            kind,
            start: start + a,
            end: start + b,
        })),
        None => tokens.push(Token {
            kind: TokenKind::Word,
            start,
            end: start + len,
        }),
    }
}

fn mark_class(c: char) -> Option<MarkClass> {
    match c {
        GREEK_PI => Some(MarkClass::GreekPi),
        GREEK_CHI => Some(MarkClass::GreekChi),
        _ if c.is_ascii_alphabetic() => Some(MarkClass::LatinLetters),
        _ if is_other_symbol(c) => Some(MarkClass::OtherSymbol),
        _ => None,
    }
}

/// Class of the quire mark spanning all of `s`, if `s` is exactly one mark.
fn whole_mark(s: &str) -> Option<MarkClass> {
    let first = s.chars().next()?;
    let class = mark_class(first)?;
    let ok = match class {
        MarkClass::LatinLetters => s.chars().all(|c| c.eq_ignore_ascii_case(&first)),
        MarkClass::OtherSymbol => s.chars().all(is_other_symbol),
        MarkClass::GreekPi | MarkClass::GreekChi => s.len() == first.len_utf8(),
    };
    ok.then_some(class)
}

type Part = (TokenKind, usize, usize);

fn split_signature_chunk(chunk: &str) -> Option<Vec<Part>> {
    let mut parts = Vec::new();
    let mut pos = 0;
    if let Some(g @ (GREEK_PI | GREEK_CHI)) = chunk.chars().next() {
        let rest = &chunk[g.len_utf8()..];
        if !rest.is_empty() && split_digits_and_mark(rest).is_some() {
            let class = mark_class(g)?;
            parts.push((TokenKind::SignatureMark(class), 0, g.len_utf8()));
            pos = g.len_utf8();
        }
    }
    let (digits, class) = split_digits_and_mark(&chunk[pos..])?;
    if pos > 0 && !matches!(class, MarkClass::LatinLetters | MarkClass::OtherSymbol) {
        return None;
    }
    if digits > 0 {
        parts.push((TokenKind::DigitPrefix, pos, pos + digits));
    }
    parts.push((TokenKind::SignatureMark(class), pos + digits, chunk.len()));
    Some(parts)
}

fn split_digits_and_mark(s: &str) -> Option<(usize, MarkClass)> {
    let digits = s.bytes().take_while(u8::is_ascii_digit).count();
    whole_mark(&s[digits..]).map(|class| (digits, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::normalize::normalize;

    fn lex(raw: &str) -> Vec<(String, String)> {
        let n = normalize(raw).unwrap();
        tokenize(&n)
            .unwrap()
            .iter()
            .map(|t| (t.kind.to_string(), t.text(&n.body).to_string()))
            .collect()
    }

    fn kinds(raw: &str) -> Vec<String> {
        lex(raw).into_iter().map(|(k, _)| k).collect()
    }

    #[test]
    fn range_with_prelims() {
        assert_eq!(
            lex("π^4 A-Z^8"),
            [
                ("SIGNATURE-MARK", "π"),
                ("SIZE", "^4"),
                ("SPACE", " "),
                ("SIGNATURE-MARK", "A"),
                ("RANGE-DASH", "-"),
                ("SIGNATURE-MARK", "Z"),
                ("SIZE", "^8"),
            ]
            .map(|(a, b)| (a.to_string(), b.to_string()))
        );
    }

    #[test]
    fn alternating_size_is_one_token() {
        assert_eq!(kinds("A^4/2"), ["SIGNATURE-MARK", "SIZE"]);
        assert_eq!(lex("A^4/2")[1].1, "^4/2");
    }

    #[test]
    fn prefixes() {
        assert_eq!(
            kinds("^22A^4"),
            ["SERIES-PREFIX", "DIGIT-PREFIX", "SIGNATURE-MARK", "SIZE"]
        );
        assert_eq!(kinds("^χA^2"), ["SERIES-PREFIX", "SIGNATURE-MARK", "SIZE"]);
        assert_eq!(
            kinds("χ2A^2"),
            ["SIGNATURE-MARK", "DIGIT-PREFIX", "SIGNATURE-MARK", "SIZE"]
        );
        assert_eq!(kinds("**^4"), ["SIGNATURE-MARK", "SIZE"]);
    }

    #[test]
    fn notes_are_words() {
        assert_eq!(
            kinds("Z^8 (Z8 blank)"),
            ["SIGNATURE-MARK", "SIZE", "SPACE", "OPEN-PAREN", "WORD", "SPACE", "WORD", "CLOSE-PAREN"]
        );
    }

    #[test]
    fn bad_caret() {
        assert_eq!(
            tokenize_str("A^x"),
            Err(UnexpectedCharacter { position: 1 })
        );
        assert_eq!(
            tokenize_str("A^4/"),
            Err(UnexpectedCharacter { position: 3 })
        );
        assert!(tokenize_str("A\u{7}").is_err());
    }

    #[test]
    fn tokens_cover_body() {
        for raw in ["1# π⁴ A- Z⁸ 2A⁶", "A⁸ (A5 + χA² B-D⁸)", "[A]⁸ B-2A⁸ (2A8 blank) q.v.;"] {
            let n = normalize(raw).unwrap();
            let tokens = tokenize(&n).unwrap();
            let joined: String = tokens.iter().map(|t| t.text(&n.body)).collect();
            assert_eq!(joined, n.body);
        }
    }
}
