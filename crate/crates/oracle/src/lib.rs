//! A deliberately literal substring counter for collation strings.
//!
//! This crate replicates, check for check, the original notebook algorithm
//! that flags quiring practices by searching a collation string for
//! `<sup>n</sup> ` style substrings. It exists only so the AST-based extractor
//! in `quiring` can be tested differentially against it. Its known blind
//! spots are kept on purpose:
//!
//! * a size superscript not followed by a space (for example before `...` or
//!   `)`) is not counted as a size;
//! * such a superscript, when it is 2 to 7, is counted as a repeated quire
//!   mark instead;
//! * superscripts in leaf references (`A⁵`) count as sizes.
//!
//! The input is the catalogue's source encoding: Unicode superscript digits
//! (with `⁄` or `ᐟ` as superscript slash, `ᵡ` as superscript chi) or HTML
//! `<sup>…</sup>` markup, which passes through unchanged.

use regex::Regex;
use std::sync::OnceLock;

/// Column names in output order.
pub const COLUMNS: [&str; 34] = [
    "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16", "17",
    "18", "19", "20", "4/2", "4/6", "4/8", "6/8", "8/4", "8/6", "double", "triple", "quadruple",
    "quintuple", "sextuple", "septuple", "pi", "chi",
];

const ALTERNATING: [&str; 6] = [
    "<sup>4/2</sup> ",
    "<sup>4/6</sup> ",
    "<sup>4/8</sup> ",
    "<sup>6/8</sup> ",
    "<sup>8/4</sup> ",
    "<sup>8/6</sup> ",
];

const INSERTED: [&str; 2] = ["<sup>π</sup>", "<sup>χ</sup>"];

fn superscript_digit(c: char) -> Option<char> {
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

/// Rewrites Unicode superscript runs as `<sup>…</sup>` markup.
///
/// A maximal run of superscript digits (and slashes) becomes one element, so
/// `¹²` is `<sup>12</sup>`, never `<sup>1</sup><sup>2</sup>`.
pub fn to_markup(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len() + 16);
    let mut run = String::new();
    for c in raw.chars() {
        if let Some(d) = superscript_digit(c) {
            run.push(d);
            continue;
        }
        if !run.is_empty() {
            out.push_str("<sup>");
            out.push_str(&run);
            out.push_str("</sup>");
            run.clear();
        }
        if c == 'ᵡ' {
            out.push_str("<sup>χ</sup>");
        } else {
            out.push(c);
        }
    }
    if !run.is_empty() {
        out.push_str("<sup>");
        out.push_str(&run);
        out.push_str("</sup>");
    }
    out
}

fn multiple_patterns() -> &'static [Regex; 6] {
    static PATTERNS: OnceLock<[Regex; 6]> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        std::array::from_fn(|k| {
            Regex::new(&format!(r"<sup>{}</sup>\S", k + 2)).expect("static pattern")
        })
    })
}

/// Flags the 34 quiring columns of `raw` exactly as the notebook did.
pub fn oracle_features(raw: &str) -> [u8; 34] {
    let collation = to_markup(raw) + " ";
    let mut flags = [0u8; 34];
    let mut k = 0;
    for n in 1..=20 {
        let number = format!("<sup>{n}</sup> ");
        flags[k] = collation.contains(&number) as u8;
        k += 1;
    }
    for pattern in ALTERNATING {
        flags[k] = collation.contains(pattern) as u8;
        k += 1;
    }
    for multiple in multiple_patterns() {
        flags[k] = multiple.is_match(&collation) as u8;
        k += 1;
    }
    for pattern in INSERTED {
        flags[k] = collation.contains(pattern) as u8;
        k += 1;
    }
    debug_assert_eq!(k, 34);
    flags
}

/// Names of the columns set to 1.
pub fn set_columns(flags: &[u8; 34]) -> Vec<&'static str> {
    COLUMNS
        .iter()
        .zip(flags)
        .filter(|(_, &f)| f == 1)
        .map(|(name, _)| *name)
        .collect()
}
