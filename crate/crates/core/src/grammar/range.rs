use thiserror::Error;

use super::alphabet::Alphabet;
use super::ast::{GatheringItem, Mark, Signature};
use super::token::MarkClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("quire mark `{0}` is not a letter of the signing alphabet")]
    LetterNotInAlphabet(String),
    #[error("range `{0}` runs backwards")]
    EmptyRange(String),
}

/// Zero-based position of a Latin mark across successive alphabet passes.
///
/// A doubled letter (`Aa`, `AA`) counts as one further pass, so `Aa` and `2A`
/// land on the same ordinal.
fn ordinal(sig: &Signature, alphabet: &Alphabet) -> Result<i64, RangeError> {
    let not_found = || RangeError::LetterNotInAlphabet(sig.to_string());
    if sig.mark.class != MarkClass::LatinLetters {
        return Err(not_found());
    }
    let first = sig.mark.text.chars().next().ok_or_else(not_found)?;
    let index = alphabet.index_of(first).ok_or_else(not_found)? as i64;
    let pass = sig.alphabet_repeat as i64 + sig.mark.text.chars().count() as i64 - 1;
    Ok((pass - 1) * alphabet.len() as i64 + index)
}

/// Number of gatherings an item stands for; 1 for a single signature.
pub fn range_len(item: &GatheringItem, alphabet: &Alphabet) -> Result<usize, RangeError> {
    let Some(end) = &item.end else {
        return Ok(1);
    };
    let len = ordinal(end, alphabet)? - ordinal(&item.start, alphabet)? + 1;
    if len <= 0 {
        return Err(RangeError::EmptyRange(format!("{}-{}", item.start, end)));
    }
    Ok(len as usize)
}

/// Spells out every signature of a range such as `A-F` or `B-2A`.
///
/// Interior signatures take their letter from the alphabet and inherit the
/// series and Greek prefix of the start; the endpoints are returned as
/// written.
pub fn expand_range(item: &GatheringItem, alphabet: &Alphabet) -> Result<Vec<Signature>, RangeError> {
    let len = range_len(item, alphabet)?;
    let Some(end) = &item.end else {
        return Ok(vec![item.start.clone()]);
    };
    let first = ordinal(&item.start, alphabet)?;
    let lowercase = item
        .start
        .mark
        .text
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_lowercase());
    let n = alphabet.len() as i64;
    let mut out = Vec::with_capacity(len);
    out.push(item.start.clone());
    for ord in first + 1..first + len as i64 - 1 {
        let letter = alphabet.letter((ord % n) as usize).expect("index below alphabet length");
        let letter = if lowercase {
            letter.to_ascii_lowercase()
        } else {
            letter
        };
        out.push(Signature {
            mark: Mark {
                class: MarkClass::LatinLetters,
                text: letter.to_string(),
            },
            alphabet_repeat: (ord / n + 1) as u32,
            series_index: item.start.series_index,
            greek_prefix: item.start.greek_prefix,
            bracketed: false,
        });
    }
    if len > 1 {
        out.push(end.clone());
    }
    Ok(out)
}
