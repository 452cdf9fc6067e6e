//! The GRAM grammaticality score and the split acceptance gate.
//!
//! GRAM = 10 * UNUSED + DIS collapses the (null count, disjunct cost) pair
//! into one integer whose ordering equals the lexicographic pair ordering as
//! long as DIS stays below 10. Inputs that break that encoding assumption
//! are reported as errors, never silently clamped.

use crate::linkparse::{parse, CostVector, Lexicon, Linkage, ParseError, ParseOpts};
use crate::text::Sentence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramScore {
    /// 10 * unused + dis.
    pub value: u32,
    pub unused: u32,
    pub dis: u32,
    pub best_linkage: Option<Linkage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDecision {
    pub accepted: bool,
    pub original_gram: u32,
    pub part_grams: Vec<u32>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GramError {
    #[error("empty input")]
    EmptyInput,
    #[error(
        "disjunct cost {dis} breaks the one-digit encoding assumption \
         (UNUSED={unused} DIS={dis}); compare (UNUSED, DIS) lexicographically instead"
    )]
    EncodingAssumptionViolated { unused: u32, dis: u32 },
}

impl From<ParseError> for GramError {
    fn from(e: ParseError) -> GramError {
        match e {
            ParseError::EmptyInput => GramError::EmptyInput,
        }
    }
}

/// GRAM of one cost vector. DIS of 10 or more cannot be folded into a
/// single digit and is an error carrying the raw pair.
pub fn gram_value(cost: &CostVector) -> Result<u32, GramError> {
    if cost.dis >= 10 {
        return Err(GramError::EncodingAssumptionViolated {
            unused: cost.unused,
            dis: cost.dis,
        });
    }
    Ok(10 * cost.unused + cost.dis)
}

/// Parse a token sequence and score its best linkage, the (UNUSED, DIS)
/// lexicographic minimum, which is the parser's first result.
pub fn score_tokens(words: &[&str], lexicon: &Lexicon) -> Result<GramScore, GramError> {
    let linkages = parse(words, lexicon, &ParseOpts::default())?;
    let best = linkages
        .into_iter()
        .next()
        .expect("default options always yield at least the all-null linkage");
    let value = gram_value(&best.cost)?;
    Ok(GramScore {
        value,
        unused: best.cost.unused,
        dis: best.cost.dis,
        best_linkage: Some(best),
    })
}

pub fn score_sentence(sentence: &Sentence, lexicon: &Lexicon) -> Result<GramScore, GramError> {
    let words = sentence.surfaces();
    score_tokens(&words, lexicon)
}

/// Accept a proposed split iff the parts together are at least as
/// grammatical as the original: sum of part GRAMs <= original GRAM. Ties
/// accept.
pub fn gate_split(original: &GramScore, parts: &[GramScore]) -> Result<GateDecision, GramError> {
    if parts.is_empty() {
        return Err(GramError::EmptyInput);
    }
    let part_grams: Vec<u32> = parts.iter().map(|p| p.value).collect();
    let sum: u32 = part_grams.iter().sum();
    Ok(GateDecision { accepted: sum <= original.value, original_gram: original.value, part_grams })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(unused: u32, dis: u32) -> CostVector {
        CostVector { unused, dis, and: 0, len: 0 }
    }

    fn score(value: u32) -> GramScore {
        GramScore { value, unused: value / 10, dis: value % 10, best_linkage: None }
    }

    #[test]
    fn gram_folds_the_pair_into_one_digit_each() {
        assert_eq!(gram_value(&cv(1, 0)), Ok(10));
        assert_eq!(gram_value(&cv(1, 2)), Ok(12));
        assert_eq!(gram_value(&cv(0, 0)), Ok(0));
        assert_eq!(gram_value(&cv(2, 0)), Ok(20));
    }

    #[test]
    fn dis_of_ten_or_more_is_an_error_with_the_raw_pair() {
        assert_eq!(
            gram_value(&cv(3, 10)),
            Err(GramError::EncodingAssumptionViolated { unused: 3, dis: 10 })
        );
        assert_eq!(gram_value(&cv(0, 9)), Ok(9));
    }

    #[test]
    fn gram_ordering_equals_lexicographic_ordering_in_range() {
        // Exhaustive over the supported range.
        for u1 in 0..=20u32 {
            for d1 in 0..=9u32 {
                for u2 in 0..=20u32 {
                    for d2 in 0..=9u32 {
                        let g1 = gram_value(&cv(u1, d1)).unwrap();
                        let g2 = gram_value(&cv(u2, d2)).unwrap();
                        assert_eq!(g1.cmp(&g2), (u1, d1).cmp(&(u2, d2)), "({u1},{d1}) vs ({u2},{d2})");
                    }
                }
            }
        }
    }

    #[test]
    fn gate_rejects_worse_and_accepts_ties() {
        let rejected = gate_split(&score(20), &[score(0), score(22)]).unwrap();
        assert!(!rejected.accepted);
        assert_eq!(rejected.original_gram, 20);
        assert_eq!(rejected.part_grams, vec![0, 22]);

        let accepted = gate_split(&score(20), &[score(10), score(10)]).unwrap();
        assert!(accepted.accepted);

        let better = gate_split(&score(20), &[score(0), score(0)]).unwrap();
        assert!(better.accepted);
    }

    #[test]
    fn identity_split_always_accepted() {
        for v in [0, 7, 10, 20, 99] {
            let d = gate_split(&score(v), &[score(v)]).unwrap();
            assert!(d.accepted);
        }
    }

    #[test]
    fn empty_parts_error() {
        assert_eq!(gate_split(&score(0), &[]), Err(GramError::EmptyInput));
    }

    #[test]
    fn scoring_uses_best_linkage() {
        let lexicon = "
LEFT-WALL: Wd+;
this: Wd- & Ss+;
is: Ss- & (Paf+ or [[MVa+]]);
amazing: Paf-;
dangerously: MVa-;
"
        .parse()
        .unwrap();
        let ok = score_tokens(&["this", "is", "amazing"], &lexicon).unwrap();
        assert_eq!((ok.unused, ok.dis, ok.value), (0, 0, 0));
        let adv = score_tokens(&["this", "is", "dangerously"], &lexicon).unwrap();
        assert_eq!((adv.unused, adv.dis, adv.value), (0, 2, 2));
        let junk = score_tokens(&["qqq", "zzz"], &lexicon).unwrap();
        assert_eq!((junk.unused, junk.value), (2, 20));
        assert!(junk.best_linkage.unwrap().links.is_empty());
    }
}
