//! A minimal link-grammar-style parser.
//!
//! Words carry disjuncts (connector lists read from a dictionary); a linkage
//! is a planar, connected set of labeled links that satisfies every
//! connector of every chosen disjunct in nearest-first order, with at most
//! one link per word pair. Words the parser cannot attach are null-linked
//! and tallied as UNUSED; the parser minimizes the null count first, then
//! sorts by (DIS, LEN).

pub mod diagram;
pub mod lexicon;
pub mod linkage;
pub mod parser;

pub use lexicon::{Lexicon, LexiconError, UnknownWordPolicy, UNKNOWN_WORD, WALL_WORD};
pub use linkage::{
    connectors_match, link_label, Connector, CostVector, Direction, Disjunct, Link, Linkage,
    LinkageViolation,
};
pub use parser::{parse, ParseError, ParseOpts};
