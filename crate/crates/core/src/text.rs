//! Tokens, sentences, and the whitespace conventions shared by every phase.
//!
//! The corpus arrives mostly pre-tokenized ("IL - 6 binds gp130 ."), so the
//! tokenizer is whitespace splitting plus peeling of bracket/comma/terminal
//! punctuation; it never rewrites characters. `detokenize` and
//! `normalize_ws` agree on one canonical spacing so round-trips are exact
//! after normalization regardless of the input's punctuation spacing.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Punctuation,
    /// A synthetic entity stand-in such as `GENE0`.
    Placeholder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Byte range in the owning sentence's `text`.
    pub span: (usize, usize),
    pub kind: TokenKind,
}

impl Token {
    pub fn new(surface: impl Into<String>, span: (usize, usize)) -> Token {
        let surface = surface.into();
        let kind = classify(&surface);
        Token { surface, span, kind }
    }

    pub fn is_punct(&self) -> bool {
        self.kind == TokenKind::Punctuation
    }

    pub fn is_placeholder(&self) -> bool {
        self.kind == TokenKind::Placeholder
    }
}

/// Placeholder surfaces are exactly GENE + digits.
pub fn is_placeholder_surface(s: &str) -> bool {
    s.strip_prefix("GENE")
        .map(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
        .unwrap_or(false)
}

fn classify(surface: &str) -> TokenKind {
    if is_placeholder_surface(surface) {
        TokenKind::Placeholder
    } else if !surface.is_empty() && surface.chars().all(|c| c.is_ascii_punctuation()) {
        TokenKind::Punctuation
    } else {
        TokenKind::Word
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub text: String,
    pub tokens: Vec<Token>,
    /// (document id, sentence index within the document)
    pub provenance: (String, usize),
}

impl Sentence {
    /// Tokenize `text` into a sentence. Spans index into `text` as given.
    pub fn new(
        id: impl Into<String>,
        text: impl Into<String>,
        provenance: (String, usize),
    ) -> Result<Sentence, TextError> {
        let text = text.into();
        let tokens = tokenize(&text)?;
        Ok(Sentence { id: id.into(), text, tokens, provenance })
    }

    /// Rebuild a sentence from transformed tokens: text is re-rendered with
    /// canonical spacing and spans are recomputed against it.
    pub fn from_tokens(
        id: impl Into<String>,
        surfaces: &[String],
        provenance: (String, usize),
    ) -> Result<Sentence, TextError> {
        if surfaces.is_empty() {
            return Err(TextError::EmptyInput);
        }
        let mut text = String::new();
        let mut tokens = Vec::with_capacity(surfaces.len());
        for surface in surfaces {
            if !text.is_empty() && !no_space_before(surface) && !text.ends_with(is_open_bracket) {
                text.push(' ');
            }
            let start = text.len();
            text.push_str(surface);
            tokens.push(Token::new(surface.clone(), (start, text.len())));
        }
        Ok(Sentence { id: id.into(), text, tokens, provenance })
    }

    pub fn surfaces(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    pub fn surfaces_owned(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.surface.clone()).collect()
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("empty or whitespace-only input")]
    EmptyInput,
}

const CLOSE_PUNCT: &[char] = &['.', ',', ';', ':', '?', '!', ')', ']', '}'];
const OPEN_PUNCT: &[char] = &['(', '[', '{'];

fn is_open_bracket(c: char) -> bool {
    OPEN_PUNCT.contains(&c)
}

fn no_space_before(surface: &str) -> bool {
    let mut chars = surface.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => CLOSE_PUNCT.contains(&c),
        _ => false,
    }
}

/// Whitespace split plus punctuation peeling. Leading `([{"` and trailing
/// `,;:?!)]}"` are always their own tokens; a trailing `.` is split only on
/// the final chunk so abbreviations ("Fig.", "et al.") survive mid-sentence.
pub fn tokenize(text: &str) -> Result<Vec<Token>, TextError> {
    if text.trim().is_empty() {
        return Err(TextError::EmptyInput);
    }
    let mut tokens = Vec::new();
    let chunks: Vec<(usize, &str)> = split_ws(text);
    let last = chunks.len() - 1;
    for (i, (offset, chunk)) in chunks.iter().enumerate() {
        push_chunk(&mut tokens, *offset, chunk, i == last);
    }
    Ok(tokens)
}

fn split_ws(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn push_chunk(tokens: &mut Vec<Token>, offset: usize, chunk: &str, is_final: bool) {
    // Peel leading openers.
    let mut head = 0;
    let bytes = chunk.as_bytes();
    while head < bytes.len() && OPEN_PUNCT.contains(&(bytes[head] as char)) {
        tokens.push(Token::new(&chunk[head..head + 1], (offset + head, offset + head + 1)));
        head += 1;
    }
    // Peel trailing closers (plus '.' on the final chunk).
    let mut tail = bytes.len();
    while tail > head {
        let c = bytes[tail - 1] as char;
        let peel = matches!(c, ',' | ';' | ':' | '?' | '!' | ')' | ']' | '}' | '"')
            || (c == '.' && (is_final || tail < bytes.len()));
        if !peel {
            break;
        }
        tail -= 1;
    }
    if head < tail {
        tokens.push(Token::new(&chunk[head..tail], (offset + head, offset + tail)));
    }
    for i in tail..bytes.len() {
        tokens.push(Token::new(&chunk[i..i + 1], (offset + i, offset + i + 1)));
    }
}

/// Single-space join with no space before closing punctuation and none after
/// an opening bracket.
pub fn detokenize(tokens: &[Token]) -> Result<String, TextError> {
    if tokens.is_empty() {
        return Err(TextError::EmptyInput);
    }
    Ok(join_surfaces(tokens.iter().map(|t| t.surface.as_str())))
}

pub fn join_surfaces<'a>(surfaces: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = String::new();
    for surface in surfaces {
        if !out.is_empty() && !no_space_before(surface) && !out.ends_with(is_open_bracket) {
            out.push(' ');
        }
        out.push_str(surface);
    }
    out
}

/// Canonical spacing: collapse whitespace runs, trim, drop spaces before
/// `.,;:?!)]}` and after `([{`. Both detokenized output and raw corpus text
/// normalize to the same string, which is what the round-trip tests compare.
pub fn normalize_ws(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.chars() {
        if c.is_whitespace() {
            pending_space = !out.is_empty();
            continue;
        }
        if pending_space && !CLOSE_PUNCT.contains(&c) && !out.ends_with(is_open_bracket) {
            out.push(' ');
        }
        pending_space = false;
        out.push(c);
    }
    out
}

/// Abbreviations that block a sentence boundary after their period.
pub const DEFAULT_ABBREVIATIONS: &[&str] =
    &["Fig.", "al.", "e.g.", "i.e.", "vs.", "cf.", "Dr.", "No.", "approx."];

/// Split abstract text into sentences at `.!?` + whitespace + uppercase,
/// unless the terminator ends a stop-listed abbreviation.
pub fn segment(text: &str, abbreviations: &[&str]) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') {
            let mut j = i + 1;
            let mut saw_ws = false;
            while j < chars.len() && chars[j].is_whitespace() {
                saw_ws = true;
                j += 1;
            }
            let upper_next = j < chars.len() && chars[j].is_uppercase();
            if saw_ws && upper_next && !ends_with_abbreviation(&chars[start..=i], abbreviations) {
                let s: String = chars[start..=i].iter().collect();
                let s = s.trim().to_string();
                if !s.is_empty() {
                    sentences.push(s);
                }
                start = j;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    let tail: String = chars[start..].iter().collect();
    let tail = tail.trim().to_string();
    if !tail.is_empty() {
        sentences.push(tail);
    }
    sentences
}

fn ends_with_abbreviation(prefix: &[char], abbreviations: &[&str]) -> bool {
    let word_start = prefix
        .iter()
        .rposition(|c| c.is_whitespace())
        .map(|p| p + 1)
        .unwrap_or(0);
    let last_word: String = prefix[word_start..].iter().collect();
    abbreviations.iter().any(|a| *a == last_word)
}

/// Uppercase the first alphabetic character of the first word token.
pub fn capitalize_first(surfaces: &mut [String]) {
    for s in surfaces.iter_mut() {
        if classify(s) == TokenKind::Word {
            let mut chars = s.chars();
            if let Some(first) = chars.next() {
                if first.is_lowercase() {
                    *s = first.to_uppercase().collect::<String>() + chars.as_str();
                }
            }
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(text: &str) -> Vec<String> {
        tokenize(text).unwrap().into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn splits_final_period() {
        assert_eq!(surfaces("This is an amazing."), ["This", "is", "an", "amazing", "."]);
    }

    #[test]
    fn comma_and_period_are_tokens() {
        // The postcondition (separate punctuation tokens) fixes the count at 16.
        let toks =
            surfaces("Unlike human IL - 6, the viral cytokine largely uses acids to contact gp130.");
        assert_eq!(toks.len(), 16);
        assert_eq!(toks[5], ",");
        assert_eq!(toks[15], ".");
        assert_eq!(&toks[2..5], ["IL", "-", "6"]);
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(tokenize("   ").unwrap_err(), TextError::EmptyInput);
        assert_eq!(tokenize("").unwrap_err(), TextError::EmptyInput);
        assert_eq!(detokenize(&[]).unwrap_err(), TextError::EmptyInput);
    }

    #[test]
    fn abbreviation_period_not_split_mid_sentence() {
        assert_eq!(surfaces("GENE0 binds GENE1 ( Fig. 2 ) ."), [
            "GENE0", "binds", "GENE1", "(", "Fig.", "2", ")", "."
        ]);
    }

    #[test]
    fn tight_parens_and_commas_peel() {
        assert_eq!(surfaces("acids (which uses residues), the rest."), [
            "acids", "(", "which", "uses", "residues", ")", ",", "the", "rest", "."
        ]);
    }

    #[test]
    fn spans_cover_non_whitespace_and_increase() {
        let text = "GENE0 binds GENE1 ( Fig. 2 ) .";
        let toks = tokenize(text).unwrap();
        let mut last_end = 0;
        for t in &toks {
            assert!(t.span.0 < t.span.1);
            assert!(t.span.0 >= last_end);
            assert_eq!(&text[t.span.0..t.span.1], t.surface);
            last_end = t.span.1;
        }
        let covered: usize = toks.iter().map(|t| t.span.1 - t.span.0).sum();
        let non_ws = text.chars().filter(|c| !c.is_whitespace()).count();
        assert_eq!(covered, non_ws);
    }

    #[test]
    fn detokenize_attaches_punctuation() {
        let toks = [Token::new("patients", (0, 8)), Token::new(".", (9, 10))];
        assert_eq!(detokenize(&toks).unwrap(), "patients.");
        let single = [Token::new("GENE0", (0, 5))];
        assert_eq!(detokenize(&single).unwrap(), "GENE0");
    }

    #[test]
    fn round_trip_normalizes() {
        for line in [
            "This is an amazing.",
            "Unlike human IL - 6, the viral cytokine largely uses acids to contact gp130.",
            "GENE0 binds GENE1 ( Fig. 2 ) .",
            "The sequences that confer on FGF - 7 its specific binding to KGFR have not been identified.",
        ] {
            let toks = tokenize(line).unwrap();
            let rebuilt = detokenize(&toks).unwrap();
            assert_eq!(normalize_ws(&rebuilt), normalize_ws(line), "line: {line}");
        }
    }

    #[test]
    fn normalize_ws_canonicalizes_spacing() {
        assert_eq!(normalize_ws("a  ( b )  ."), "a (b).");
        assert_eq!(normalize_ws("  IL - 6 ,  gp130  "), "IL - 6, gp130");
    }

    #[test]
    fn segments_on_terminator_and_uppercase() {
        let abstract_text =
            "GENE0 binds GENE1. The complex forms ( Fig. 2 ) in vitro. No pair was seen.";
        let got = segment(abstract_text, DEFAULT_ABBREVIATIONS);
        assert_eq!(got, vec![
            "GENE0 binds GENE1.",
            "The complex forms ( Fig. 2 ) in vitro.",
            "No pair was seen.",
        ]);
    }

    #[test]
    fn segmentation_respects_stop_list() {
        let got = segment("Results of et al. Smith were replicated.", DEFAULT_ABBREVIATIONS);
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn placeholder_kind_detected() {
        assert!(Token::new("GENE0", (0, 5)).is_placeholder());
        assert!(Token::new("GENE12", (0, 6)).is_placeholder());
        assert!(!Token::new("GENE", (0, 4)).is_placeholder());
        assert!(!Token::new("GENEx", (0, 5)).is_placeholder());
        assert!(Token::new(",", (0, 1)).is_punct());
    }

    #[test]
    fn capitalize_first_skips_leading_punctuation() {
        let mut s = vec!["(".to_string(), "which".to_string()];
        capitalize_first(&mut s);
        assert_eq!(s, ["(", "Which"]);
    }
}
