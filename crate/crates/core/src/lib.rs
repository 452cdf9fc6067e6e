//! Sentence simplification for biomedical text.
//!
//! The pipeline runs four phases over each input sentence:
//!
//! 1. [`preprocess`] — strip spurious phrases (section indicators, figure
//!    references) and expand coordination ellipsis.
//! 2. [`entity`] — replace gene/protein names with reversible `GENE<n>`
//!    placeholders (gazetteer-driven, pluggable recognizer).
//! 3. [`entity`] — compress non-entity noun phrases to their head nouns.
//! 4. [`simplify`] — split the sentence with syntactic rewrite rules
//!    (relative clauses, apposition, subordination, if-then), accepting a
//!    split only when the parts are collectively no harder to parse than the
//!    original, as measured by the GRAM score from [`gram`] over linkages
//!    produced by [`linkparse`].
//!
//! [`eval`] measures a binary sentence classifier before and after
//! simplification and under AND/OR verdict combination.

pub mod fixtures;
pub mod gram;
pub mod linkparse;
pub mod text;

pub use text::{Sentence, Token, TokenKind};
