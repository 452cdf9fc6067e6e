//! Dictionary loading: `word word2: EXPR;` entries whose expressions expand
//! into disjunct sets.
//!
//! Expression syntax, tightest first: connectors (`Ss+`, `MVa-`), grouping
//! `( )`, optionality `{ }`, cost brackets `[ ]` (each layer adds 1 to every
//! disjunct inside), conjunction `&`, disjunction `or`. `&` binds tighter
//! than `or`. Connector order is meaningful: within a disjunct, connectors on
//! each side attach nearest word first, in written order. `%` starts a
//! comment running to end of line.
//!
//! Two entry names are special: `LEFT-WALL` supplies the virtual wall's
//! disjuncts, and `<UNKNOWN>` supplies disjuncts for out-of-vocabulary words
//! (its presence switches the unknown-word policy to `GenericNoun`).

use std::collections::HashMap;
use std::io::Read;

use super::linkage::{Connector, Direction, Disjunct};

pub const WALL_WORD: &str = "LEFT-WALL";
pub const UNKNOWN_WORD: &str = "<UNKNOWN>";

const MAX_DISJUNCT_COST: u32 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownWordPolicy {
    /// Unknown words get no disjuncts and can only be null-linked.
    NoDisjuncts,
    /// Unknown words borrow the `<UNKNOWN>` entry's disjuncts.
    GenericNoun,
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("entry '{word}' expands to a disjunct of cost {cost}, above the maximum of {max}", max = MAX_DISJUNCT_COST)]
    CostOverflow { word: String, cost: u32 },
    #[error("failed to read lexicon source")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, Vec<Disjunct>>,
    wall: Vec<Disjunct>,
    unknown: Vec<Disjunct>,
    policy: UnknownWordPolicy,
}

impl Default for UnknownWordPolicy {
    fn default() -> Self {
        UnknownWordPolicy::NoDisjuncts
    }
}

impl Lexicon {
    pub fn load(mut reader: impl Read) -> Result<Lexicon, LexiconError> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        text.parse()
    }

    pub fn wall_disjuncts(&self) -> &[Disjunct] {
        &self.wall
    }

    pub fn unknown_word_policy(&self) -> UnknownWordPolicy {
        self.policy
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() && self.wall.is_empty()
    }

    /// Disjuncts for a sentence word. Lookup is exact, except that the first
    /// word of a sentence may match its lowercased dictionary form. Words
    /// with no entry fall back to `<UNKNOWN>` under the GenericNoun policy.
    pub fn lookup(&self, word: &str, sentence_initial: bool) -> &[Disjunct] {
        if let Some(ds) = self.entries.get(word) {
            return ds;
        }
        if sentence_initial {
            let lowered = lowercase_first(word);
            if lowered != word {
                if let Some(ds) = self.entries.get(&lowered) {
                    return ds;
                }
            }
            let all_lower = word.to_lowercase();
            if all_lower != word && all_lower != lowered {
                if let Some(ds) = self.entries.get(&all_lower) {
                    return ds;
                }
            }
        }
        match self.policy {
            UnknownWordPolicy::GenericNoun => &self.unknown,
            UnknownWordPolicy::NoDisjuncts => &[],
        }
    }
}

fn lowercase_first(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

impl std::str::FromStr for Lexicon {
    type Err = LexiconError;

    fn from_str(source: &str) -> Result<Lexicon, LexiconError> {
        let tokens = scan(source)?;
        let mut parser = Parser { tokens: &tokens, pos: 0 };
        let mut lexicon = Lexicon::default();
        while !parser.at_end() {
            let (words, expr) = parser.entry()?;
            let protos = expand(&expr);
            for word in words {
                let mut disjuncts: Vec<Disjunct> = protos
                    .iter()
                    .map(|p| Disjunct { left: p.left.clone(), right: p.right.clone(), cost: p.cost })
                    .collect();
                if let Some(bad) = disjuncts.iter().find(|d| d.cost > MAX_DISJUNCT_COST) {
                    return Err(LexiconError::CostOverflow { word, cost: bad.cost });
                }
                if word == WALL_WORD {
                    merge(&mut lexicon.wall, &mut disjuncts);
                } else if word == UNKNOWN_WORD {
                    lexicon.policy = UnknownWordPolicy::GenericNoun;
                    merge(&mut lexicon.unknown, &mut disjuncts);
                } else {
                    merge(lexicon.entries.entry(word).or_default(), &mut disjuncts);
                }
            }
        }
        Ok(lexicon)
    }
}

/// Append, deduplicating on connector shape and keeping the cheapest cost.
fn merge(into: &mut Vec<Disjunct>, add: &mut Vec<Disjunct>) {
    for d in add.drain(..) {
        match into.iter_mut().find(|e| e.left == d.left && e.right == d.right) {
            Some(existing) => existing.cost = existing.cost.min(d.cost),
            None => into.push(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Colon,
    Semi,
    Amp,
    Or,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
}

fn scan(source: &str) -> Result<Vec<Spanned>, LexiconError> {
    let mut out = Vec::new();
    for (lineno, raw) in source.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('%').next().unwrap_or("");
        let mut word = String::new();
        let flush = |word: &mut String, out: &mut Vec<Spanned>| {
            if !word.is_empty() {
                let tok = if word == "or" { Tok::Or } else { Tok::Word(std::mem::take(word)) };
                word.clear();
                out.push(Spanned { tok, line });
            }
        };
        for c in content.chars() {
            let tok = match c {
                ':' => Some(Tok::Colon),
                ';' => Some(Tok::Semi),
                '&' => Some(Tok::Amp),
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                _ => None,
            };
            match tok {
                Some(t) => {
                    flush(&mut word, &mut out);
                    out.push(Spanned { tok: t, line });
                }
                None if c.is_whitespace() => flush(&mut word, &mut out),
                None => word.push(c),
            }
        }
        flush(&mut word, &mut out);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Conn(Connector),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Opt(Box<Expr>),
    Cost(Box<Expr>),
    Empty,
}

struct Parser<'a> {
    tokens: &'a [Spanned],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|s| &s.tok)
    }

    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|s| s.line)
            .unwrap_or(0)
    }

    fn bump(&mut self) -> Option<&'a Spanned> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), LexiconError> {
        let line = self.line();
        match self.bump() {
            Some(s) if &s.tok == want => Ok(()),
            got => Err(LexiconError::Parse {
                line,
                message: format!("expected {what}, found {}", describe(got.map(|s| &s.tok))),
            }),
        }
    }

    /// `word word2 ... : EXPR ;`
    fn entry(&mut self) -> Result<(Vec<String>, Expr), LexiconError> {
        let mut words = Vec::new();
        loop {
            let line = self.line();
            match self.bump().map(|s| &s.tok) {
                Some(Tok::Word(w)) => words.push(w.clone()),
                Some(Tok::Colon) if !words.is_empty() => break,
                got => {
                    return Err(LexiconError::Parse {
                        line,
                        message: format!(
                            "expected entry words then ':', found {}",
                            describe(got)
                        ),
                    })
                }
            }
        }
        let expr = self.or_expr()?;
        self.expect(&Tok::Semi, "';' after entry expression")?;
        Ok((words, expr))
    }

    fn or_expr(&mut self) -> Result<Expr, LexiconError> {
        let mut parts = vec![self.and_expr()?];
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            parts.push(self.and_expr()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Or(parts) })
    }

    fn and_expr(&mut self) -> Result<Expr, LexiconError> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::And(parts) })
    }

    fn unary(&mut self) -> Result<Expr, LexiconError> {
        let line = self.line();
        match self.bump().map(|s| &s.tok) {
            Some(Tok::Word(w)) => connector(w, line),
            Some(Tok::LBrace) => {
                let inner = self.or_expr()?;
                self.expect(&Tok::RBrace, "'}'")?;
                Ok(Expr::Opt(Box::new(inner)))
            }
            Some(Tok::LBracket) => {
                let inner = self.or_expr()?;
                self.expect(&Tok::RBracket, "']'")?;
                Ok(Expr::Cost(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                if self.peek() == Some(&Tok::RParen) {
                    self.bump();
                    return Ok(Expr::Empty);
                }
                let inner = self.or_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            got => Err(LexiconError::Parse {
                line,
                message: format!("expected a connector or group, found {}", describe(got)),
            }),
        }
    }
}

fn describe(tok: Option<&Tok>) -> String {
    match tok {
        None => "end of input".into(),
        Some(Tok::Word(w)) => format!("'{w}'"),
        Some(Tok::Colon) => "':'".into(),
        Some(Tok::Semi) => "';'".into(),
        Some(Tok::Amp) => "'&'".into(),
        Some(Tok::Or) => "'or'".into(),
        Some(Tok::LBrace) => "'{'".into(),
        Some(Tok::RBrace) => "'}'".into(),
        Some(Tok::LBracket) => "'['".into(),
        Some(Tok::RBracket) => "']'".into(),
        Some(Tok::LParen) => "'('".into(),
        Some(Tok::RParen) => "')'".into(),
    }
}

fn connector(word: &str, line: usize) -> Result<Expr, LexiconError> {
    let (body, direction) = match word.chars().last() {
        Some('+') => (&word[..word.len() - 1], Direction::Right),
        Some('-') => (&word[..word.len() - 1], Direction::Left),
        _ => {
            return Err(LexiconError::Parse {
                line,
                message: format!("connector '{word}' must end in '+' or '-'"),
            })
        }
    };
    let upper_len = body.chars().take_while(|c| c.is_ascii_uppercase()).count();
    let valid = upper_len > 0
        && body[upper_len..].chars().all(|c| c.is_ascii_lowercase() || c == '*');
    if !valid {
        return Err(LexiconError::Parse {
            line,
            message: format!(
                "connector label '{body}' must be uppercase letters plus an optional lowercase/'*' subscript"
            ),
        });
    }
    Ok(Expr::Conn(Connector::new(body, direction)))
}

#[derive(Debug, Clone)]
struct Proto {
    left: Vec<Connector>,
    right: Vec<Connector>,
    cost: u32,
}

/// Expand an expression into its disjuncts. `&` concatenates each side in
/// written order (nearest-first), `or` unions, `{}` adds the empty
/// alternative, `[]` adds 1 cost to everything inside.
fn expand(expr: &Expr) -> Vec<Proto> {
    match expr {
        Expr::Empty => vec![Proto { left: vec![], right: vec![], cost: 0 }],
        Expr::Conn(c) => {
            let mut p = Proto { left: vec![], right: vec![], cost: 0 };
            match c.direction {
                Direction::Left => p.left.push(c.clone()),
                Direction::Right => p.right.push(c.clone()),
            }
            vec![p]
        }
        Expr::And(parts) => {
            let mut acc = vec![Proto { left: vec![], right: vec![], cost: 0 }];
            for part in parts {
                let options = expand(part);
                let mut next = Vec::with_capacity(acc.len() * options.len());
                for a in &acc {
                    for b in &options {
                        let mut c = a.clone();
                        c.left.extend(b.left.iter().cloned());
                        c.right.extend(b.right.iter().cloned());
                        c.cost += b.cost;
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
        Expr::Or(parts) => parts.iter().flat_map(expand).collect(),
        Expr::Opt(inner) => {
            let mut out = expand(inner);
            out.push(Proto { left: vec![], right: vec![], cost: 0 });
            out
        }
        Expr::Cost(inner) => {
            let mut out = expand(inner);
            for p in &mut out {
                p.cost += 1;
            }
            out
        }
    }
}
