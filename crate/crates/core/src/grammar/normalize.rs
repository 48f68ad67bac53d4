//! Canonicalization of raw collation text.
//!
//! Catalogue fields arrive with Unicode superscripts (`A-Z⁸`), HTML markup
//! (`A-Z<sup>8</sup>`) or caret notation (`A-Z^8`), with presentation spaces
//! (`A- Z⁸`, `[A] ⁸`). Everything downstream sees a single caret-form body.

use thiserror::Error;

use super::token::{is_mark_start, GREEK_CHI, GREEK_PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("collation is empty")]
    EmptyInput,
}

/// A collation body in canonical caret encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalizedFormula {
    /// Volume number from a leading `N#` marker.
    pub volume: Option<u32>,
    pub body: String,
    /// A trailing `...` display marker was removed.
    pub truncated: bool,
}

pub fn normalize(raw: &str) -> Result<NormalizedFormula, NormalizeError> {
    let mut rest = raw.trim();
    if rest.is_empty() {
        return Err(NormalizeError::EmptyInput);
    }
    let volume = split_volume(&mut rest);

    let mut truncated = false;
    for marker in ["...", "…"] {
        if let Some(stripped) = rest.strip_suffix(marker) {
            rest = stripped.trim_end();
            truncated = true;
            break;
        }
    }

    let body = close_size_gaps(&tighten_dashes(&collapse_whitespace(&to_caret(rest))));
    if body.is_empty() {
        return Err(NormalizeError::EmptyInput);
    }
    Ok(NormalizedFormula {
        volume,
        body,
        truncated,
    })
}

fn split_volume(rest: &mut &str) -> Option<u32> {
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 || rest.as_bytes().get(digits) != Some(&b'#') {
        return None;
    }
    let after = &rest[digits + 1..];
    if !(after.is_empty() || after.starts_with(char::is_whitespace)) {
        return None;
    }
    let volume = rest[..digits].parse::<u32>().ok().filter(|&v| v > 0)?;
    *rest = after.trim_start();
    Some(volume)
}

fn superscript(c: char) -> Option<char> {
    Some(match c {
        '⁰' => '0',
        '¹' => '1',
        '²' => '2',
        '³' => '3',
        '⁴' => '4',
        '⁵' => '5',
        '⁶' => '6',
        '⁷' => '7',
        '⁸' => '8',
        '⁹' => '9',
        '⁄' | 'ᐟ' => '/',
        _ => return None,
    })
}

fn to_caret(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        if let Some(after_open) = rest.strip_prefix("<sup>") {
            if let Some(end) = after_open.find("</sup>") {
                let content = after_open[..end]
                    .replace(r"$\pi$", "π")
                    .replace(r"$\chi$", "χ");
                let content: String = content.chars().filter(|c| !c.is_whitespace()).collect();
                if !content.is_empty() {
                    out.push('^');
                    out.push_str(&content);
                }
                rest = &after_open[end + "</sup>".len()..];
                continue;
            }
        }
        if superscript(c).is_some() {
            let run: String = rest.chars().map_while(superscript).collect();
            out.push('^');
            out.push_str(&run);
            let consumed: usize = rest
                .chars()
                .take_while(|&c| superscript(c).is_some())
                .map(char::len_utf8)
                .sum();
            rest = &rest[consumed..];
            continue;
        }
        if c == 'ᵡ' {
            out.push('^');
            out.push(GREEK_CHI);
        } else {
            out.push(c);
        }
        rest = &rest[c.len_utf8()..];
    }
    out
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn tighten_dashes(text: &str) -> String {
    text.replace(" -", "-").replace("- ", "-")
}

/// True when the caret group at the start of `s` (which begins with `^`) is a
/// prefix to a quire mark rather than a gathering size.
pub(crate) fn caret_is_prefix(s: &str) -> bool {
    let after = &s[1..];
    match after.chars().next() {
        Some(GREEK_PI | GREEK_CHI) => true,
        Some(c) if c.is_ascii_digit() => {
            let digits = after.bytes().take_while(u8::is_ascii_digit).count();
            let tail = &after[digits..];
            match tail.chars().next() {
                Some('/') => false,
                Some('^') => tail[1..].starts_with([GREEK_PI, GREEK_CHI]),
                Some(c) => is_mark_start(c),
                None => false,
            }
        }
        _ => false,
    }
}

fn close_size_gaps(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for (i, c) in text.char_indices() {
        if c == ' ' && text[i + 1..].starts_with('^') && !caret_is_prefix(&text[i + 1..]) {
            continue;
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body(raw: &str) -> String {
        normalize(raw).unwrap().body
    }

    #[test]
    fn volume_marker_and_superscripts() {
        let n = normalize("1# π⁴ A- Z⁸ 2A⁶").unwrap();
        assert_eq!(n.volume, Some(1));
        assert_eq!(n.body, "π^4 A-Z^8 2A^6");
        assert!(!n.truncated);
    }

    #[test]
    fn canonical_input_is_unchanged() {
        let n = normalize("A^8").unwrap();
        assert_eq!(n.volume, None);
        assert_eq!(n.body, "A^8");
        assert!(!n.truncated);
    }

    #[test]
    fn truncation_and_bracket_gap() {
        let n = normalize("4# [A] ⁸ B- L⁸ M⁴...").unwrap();
        assert_eq!(n.volume, Some(4));
        assert_eq!(n.body, "[A]^8 B-L^8 M^4");
        assert!(n.truncated);
        assert!(normalize("A⁸ B⁴…").unwrap().truncated);
    }

    #[test]
    fn empty_input() {
        assert_eq!(normalize(""), Err(NormalizeError::EmptyInput));
        assert_eq!(normalize(" \t\n"), Err(NormalizeError::EmptyInput));
        assert_eq!(normalize("3#"), Err(NormalizeError::EmptyInput));
        assert_eq!(normalize("..."), Err(NormalizeError::EmptyInput));
    }

    #[test]
    fn series_prefix_keeps_its_space() {
        assert_eq!(body("A-F⁴ ²A-F⁴"), "A-F^4 ^2A-F^4");
        assert_eq!(body("A-F^4 ^2A-F^4"), "A-F^4 ^2A-F^4");
        assert_eq!(body("A⁴ ²2A⁴"), "A^4 ^22A^4");
        assert_eq!(body("A⁴ ²<sup>π</sup>A⁴"), "A^4 ^2^πA^4");
    }

    #[test]
    fn markup_and_alternating() {
        assert_eq!(body("A-F<sup>4/2</sup> G<sup>8</sup>"), "A-F^4/2 G^8");
        assert_eq!(body("A-F⁴⁄² G⁸"), "A-F^4/2 G^8");
        assert_eq!(body("<sup> $\\pi$ </sup>A⁴"), "^πA^4");
        assert_eq!(body("ᵡA²"), "^χA^2");
        assert_eq!(body("A-C¹²"), "A-C^12");
    }

    #[test]
    fn whitespace_collapses() {
        assert_eq!(body("  A⁸   B -  C⁸  (C8   blank) "), "A^8 B-C^8 (C8 blank)");
    }

    #[test]
    fn volume_marker_needs_separator() {
        let n = normalize("12#A^8").unwrap();
        assert_eq!(n.volume, None);
        assert_eq!(n.body, "12#A^8");
        assert_eq!(normalize("0# A^8").unwrap().volume, None);
    }

    #[test]
    fn idempotent_on_examples() {
        for raw in [
            "1# π⁴ A- Z⁸ 2A⁶",
            "3# [A] ⁸ B- Z⁸ (Z8 blank)",
            "A⁸ (A5 + χA² B-D⁸)",
            "A-F⁴ ²A-F⁴",
            "*⁴ A-2F⁸ ²G⁴⁄²",
        ] {
            let once = body(raw);
            assert_eq!(body(&once), once, "{raw}");
        }
    }
}
