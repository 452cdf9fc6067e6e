//! Compiled-in default resources: the calibrated dictionary, the gene
//! gazetteer, and the rule and preprocessing configuration texts. The
//! CLI falls back to these whenever a path flag is omitted.

use std::sync::OnceLock;

use crate::linkparse::Lexicon;

pub const LEXICON_TEXT: &str = include_str!("../assets/fixture.dict");
pub const GAZETTEER_TEXT: &str = include_str!("../assets/fixture.gazetteer");
pub const RULES_TEXT: &str = include_str!("../assets/fixture.rules");
pub const PREPROCESS_TEXT: &str = include_str!("../assets/fixture.preprocess");

/// The shipped lexicon, parsed once and shared.
pub fn lexicon() -> &'static Lexicon {
    static LEXICON: OnceLock<Lexicon> = OnceLock::new();
    LEXICON.get_or_init(|| LEXICON_TEXT.parse().expect("shipped dictionary parses"))
}

/// Entries of the shipped gazetteer, in file order.
pub fn gazetteer() -> Vec<String> {
    parse_gazetteer(GAZETTEER_TEXT)
}

/// Parses gazetteer text: one entry per line, trimmed; blank lines and
/// `#` comment lines are skipped.
pub fn parse_gazetteer(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_owned)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::{gate_split, score_tokens};
    use crate::linkparse::{parse, CostVector, ParseOpts};
    use crate::text::tokenize;

    fn words(sentence: &str) -> Vec<String> {
        tokenize(sentence).unwrap().into_iter().map(|t| t.surface).collect()
    }

    fn gram_of(sentence: &str) -> u32 {
        let words = words(sentence);
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        score_tokens(&refs, lexicon()).unwrap().value
    }

    #[test]
    fn article_before_adjective_is_skipped() {
        let words = ["This", "is", "an", "amazing", "."];
        let linkages = parse(&words, lexicon(), &ParseOpts::default()).unwrap();
        let best = &linkages[0];
        assert_eq!(
            best.cost,
            CostVector { unused: 1, dis: 0, and: 0, len: 5 },
            "got {:?}",
            best.links
        );
        assert!(best.skipped.contains(&3), "skipped: {:?}", best.skipped);
    }

    #[test]
    fn costed_adverb_linkage_pays_two_points() {
        let words = ["This", "is", "an", "dangerously", "."];
        let linkages = parse(&words, lexicon(), &ParseOpts::default()).unwrap();
        assert_eq!(
            linkages[0].cost,
            CostVector { unused: 1, dis: 2, and: 0, len: 5 },
            "got {:?}",
            linkages[0].links
        );
    }

    #[test]
    fn copular_sentence_without_article_is_fully_linked() {
        assert_eq!(gram_of("This is amazing."), 0);
    }

    #[test]
    fn pressure_sentence_and_both_splits_score_exactly() {
        let original = gram_of(
            "These effects were associated with significantly lower blood pressure, \
             though within the normal range, in captopril-treated versus control animals.",
        );
        assert_eq!(original, 20);

        let a1 = gram_of("These effects were associated with significantly lower blood pressure.");
        let a2 = gram_of("Within the normal range, in captopril-treated versus control animals.");
        assert_eq!((a1, a2), (0, 22));
        assert!(a1 + a2 > original, "first suggestion must fail the gate");

        let b1 = gram_of(
            "These effects were associated with significantly lower blood pressure \
             in captopril-treated versus control animals.",
        );
        let b2 = gram_of("Significantly lower blood pressure is though within the normal range.");
        assert_eq!((b1, b2), (10, 10));
        assert!(b1 + b2 <= original, "second suggestion must pass the gate");
    }

    #[test]
    fn gate_decisions_match_on_scored_splits() {
        let lex = lexicon();
        let score = |s: &str| {
            let w = words(s);
            let refs: Vec<&str> = w.iter().map(String::as_str).collect();
            score_tokens(&refs, lex).unwrap()
        };
        let original = score(
            "These effects were associated with significantly lower blood pressure, \
             though within the normal range, in captopril-treated versus control animals.",
        );
        let reject = gate_split(
            &original,
            &[
                score("These effects were associated with significantly lower blood pressure."),
                score("Within the normal range, in captopril-treated versus control animals."),
            ],
        )
        .unwrap();
        assert!(!reject.accepted);
        assert_eq!(reject.part_grams, vec![0, 22]);

        let accept = gate_split(
            &original,
            &[
                score(
                    "These effects were associated with significantly lower blood pressure \
                     in captopril-treated versus control animals.",
                ),
                score("Significantly lower blood pressure is though within the normal range."),
            ],
        )
        .unwrap();
        assert!(accept.accepted);
        assert_eq!(accept.part_grams, vec![10, 10]);
    }

    #[test]
    fn sequences_sentence_links_pronoun_and_matrix_verb() {
        let sentence =
            "The sequences that confer on GENE0 its specific binding to GENE1 have not been identified.";
        let w = words(sentence);
        let refs: Vec<&str> = w.iter().map(String::as_str).collect();
        let linkages = parse(&refs, lexicon(), &ParseOpts::default()).unwrap();
        let best = &linkages[0];
        assert_eq!((best.cost.unused, best.cost.dis), (0, 0), "links {:?}", best.links);
        let has = |l: usize, r: usize, label: &str| {
            best.links.iter().any(|k| k.left_pos == l && k.right_pos == r && k.label == label)
        };
        // "sequences" is word 2; "that" word 3; "have" word 12.
        assert!(has(2, 3, "MX"), "links {:?}", best.links);
        assert!(has(2, 12, "Sp"), "links {:?}", best.links);
    }

    #[test]
    fn appositive_fixture_carries_anchor_link() {
        let w = words("GENE0, a viral cytokine, binds GENE1.");
        let refs: Vec<&str> = w.iter().map(String::as_str).collect();
        let linkages = parse(&refs, lexicon(), &ParseOpts::default()).unwrap();
        let best = &linkages[0];
        assert_eq!((best.cost.unused, best.cost.dis), (0, 0), "links {:?}", best.links);
        assert!(
            best.links.iter().any(|k| k.left_pos == 1 && k.right_pos == 5 && k.label == "R"),
            "links {:?}",
            best.links
        );
    }

    #[test]
    fn object_relative_fixture_carries_antecedent_link() {
        let w = words("GENE0 binds GENE1, which activates GENE2.");
        let refs: Vec<&str> = w.iter().map(String::as_str).collect();
        let linkages = parse(&refs, lexicon(), &ParseOpts::default()).unwrap();
        let best = &linkages[0];
        assert_eq!((best.cost.unused, best.cost.dis), (0, 0), "links {:?}", best.links);
        assert!(
            best.links.iter().any(|k| k.left_pos == 3 && k.right_pos == 5 && k.label == "MX"),
            "links {:?}",
            best.links
        );
    }

    #[test]
    fn gazetteer_includes_multiword_entries() {
        let entries = gazetteer();
        assert!(entries.iter().any(|e| e == "CBP"));
        assert!(entries.iter().any(|e| e == "FGF - 7"));
        assert!(!entries.iter().any(|e| e.starts_with('#')));
    }
}
