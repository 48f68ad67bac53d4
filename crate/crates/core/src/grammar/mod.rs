//! Collation formula grammar: normalization, lexing, parsing and canonical
//! serialization.

mod alphabet;
mod ast;
mod normalize;
mod parser;
mod range;
mod token;

pub use alphabet::{Alphabet, AlphabetError, DEFAULT_LETTERS};
pub use ast::{
    serialize, Annotation, CollationFormula, GatheringItem, Greek, GreekPrefix, Mark, Signature,
    SizeSpec,
};
pub use normalize::{normalize, NormalizeError, NormalizedFormula};
pub use parser::{parse, parse_with, ParseFailure, ParseReport, ReasonCode, MAX_SIZE};
pub use range::{expand_range, range_len, RangeError};
pub use token::{tokenize, MarkClass, Token, TokenKind, UnexpectedCharacter, OTHER_SYMBOLS};
