//! Linkage data model: connectors, disjuncts, links, cost vectors, and a
//! structural validator that re-checks every invariant from scratch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// One connector of a disjunct: an uppercase label with an optional
/// lowercase/`*` subscript tail, pointing left or right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Connector {
    pub label: String,
    pub direction: Direction,
}

impl Connector {
    pub fn new(label: impl Into<String>, direction: Direction) -> Connector {
        Connector { label: label.into(), direction }
    }
}

impl fmt::Display for Connector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.direction {
            Direction::Left => '-',
            Direction::Right => '+',
        };
        write!(f, "{}{}", self.label, sign)
    }
}

fn split_label(label: &str) -> (&str, &str) {
    let cut = label.find(|c: char| !c.is_ascii_uppercase()).unwrap_or(label.len());
    label.split_at(cut)
}

/// True iff the uppercase parts are equal and every subscript position is
/// compatible: equal characters, or either side missing or `*`.
pub fn labels_match(a: &str, b: &str) -> bool {
    let (ua, sa) = split_label(a);
    let (ub, sb) = split_label(b);
    if ua != ub {
        return false;
    }
    sa.chars().zip(sb.chars()).all(|(x, y)| x == y || x == '*' || y == '*')
}

/// Match test for a right-pointing connector on the left word against a
/// left-pointing connector on the right word.
pub fn connectors_match(right_going: &Connector, left_going: &Connector) -> bool {
    right_going.direction == Direction::Right
        && left_going.direction == Direction::Left
        && labels_match(&right_going.label, &left_going.label)
}

/// The label a formed link carries: the common prefix of the two connector
/// labels (always at least the shared uppercase part).
pub fn link_label(a: &str, b: &str) -> String {
    a.chars()
        .zip(b.chars())
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| x)
        .collect()
}

/// One way a word can link up: connectors it must satisfy on each side, in
/// nearest-first order, plus an integer cost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Disjunct {
    /// Left-pointing connectors, nearest word first.
    pub left: Vec<Connector>,
    /// Right-pointing connectors, nearest word first.
    pub right: Vec<Connector>,
    pub cost: u32,
}

impl Disjunct {
    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

impl fmt::Display for Disjunct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.left.iter().chain(self.right.iter()).map(|c| c.to_string()).collect();
        write!(f, "({}; cost {})", parts.join(" "), self.cost)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub left_pos: usize,
    pub right_pos: usize,
    pub label: String,
}

/// The four-field cost vector attached to every linkage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CostVector {
    /// Null-linked sentence words (the wall never counts).
    pub unused: u32,
    /// Sum of chosen disjunct costs, the wall's included.
    pub dis: u32,
    /// Conjunction cost. Always 0 here; kept for output fidelity.
    pub and: u32,
    /// Sum of link lengths (right position minus left position).
    pub len: u32,
}

impl fmt::Display for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(UNUSED={} DIS={} AND={} LEN={})", self.unused, self.dis, self.and, self.len)
    }
}

/// A complete parse of one sentence. Positions are wall-inclusive: 0 is the
/// virtual LEFT-WALL, sentence word i sits at position i (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linkage {
    /// Sentence word count, wall excluded.
    pub n_words: usize,
    /// Sorted by (left_pos, right_pos).
    pub links: Vec<Link>,
    /// Positions that carry at least one link.
    pub used: BTreeSet<usize>,
    /// Positions with no link; partitions 0..=n_words with `used`.
    pub skipped: BTreeSet<usize>,
    pub chosen: BTreeMap<usize, Disjunct>,
    pub cost: CostVector,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkageViolation {
    #[error("used/skipped do not partition positions 0..={expected}")]
    BadPartition { expected: usize },
    #[error("link endpoints out of order or out of range: {0}-{1}")]
    BadEndpoints(usize, usize),
    #[error("more than one link between positions {0} and {1}")]
    DuplicatePair(usize, usize),
    #[error("links {0}-{1} and {2}-{3} cross")]
    Crossing(usize, usize, usize, usize),
    #[error("linked position {0} missing from used set or vice versa")]
    UsedMismatch(usize),
    #[error("linkage has links but the wall is not linked")]
    WallUnlinked,
    #[error("linkage graph is not connected")]
    Disconnected,
    #[error("chosen disjuncts do not cover exactly the used positions")]
    ChosenMismatch,
    #[error("word {word}: connector count on one side differs from its link count")]
    ConnectorCount { word: usize },
    #[error("link {left}-{right} does not satisfy the chosen connectors in nearest-first order")]
    OrderViolation { left: usize, right: usize },
    #[error("link {left}-{right} carries label {found}, expected {expected}")]
    BadLabel { left: usize, right: usize, expected: String, found: String },
    #[error("stored cost vector {stored} differs from recomputed {actual}")]
    BadCost { stored: CostVector, actual: CostVector },
}

impl Linkage {
    /// Re-derive every structural invariant. Used by tests and by the
    /// brute-force comparison oracle; deliberately independent of how the
    /// parser built the linkage.
    pub fn validate(&self) -> Result<(), LinkageViolation> {
        let n = self.n_words;
        let all: BTreeSet<usize> = (0..=n).collect();
        let union: BTreeSet<usize> = self.used.union(&self.skipped).copied().collect();
        if union != all || !self.used.is_disjoint(&self.skipped) {
            return Err(LinkageViolation::BadPartition { expected: n });
        }

        let mut pairs = BTreeSet::new();
        for link in &self.links {
            if link.left_pos >= link.right_pos || link.right_pos > n {
                return Err(LinkageViolation::BadEndpoints(link.left_pos, link.right_pos));
            }
            if !pairs.insert((link.left_pos, link.right_pos)) {
                return Err(LinkageViolation::DuplicatePair(link.left_pos, link.right_pos));
            }
        }

        for (i, a) in self.links.iter().enumerate() {
            for b in &self.links[i + 1..] {
                let (p, q) = if a.left_pos <= b.left_pos { (a, b) } else { (b, a) };
                if p.left_pos < q.left_pos && q.left_pos < p.right_pos && p.right_pos < q.right_pos
                {
                    return Err(LinkageViolation::Crossing(
                        p.left_pos, p.right_pos, q.left_pos, q.right_pos,
                    ));
                }
            }
        }

        let mut linked = BTreeSet::new();
        for link in &self.links {
            linked.insert(link.left_pos);
            linked.insert(link.right_pos);
        }
        if linked != self.used {
            let witness = linked.symmetric_difference(&self.used).next().copied().unwrap_or(0);
            return Err(LinkageViolation::UsedMismatch(witness));
        }
        if !self.links.is_empty() && !self.used.contains(&0) {
            return Err(LinkageViolation::WallUnlinked);
        }

        if !self.used.is_empty() {
            let root = *self.used.iter().next().unwrap();
            let mut seen = BTreeSet::from([root]);
            let mut frontier = vec![root];
            while let Some(x) = frontier.pop() {
                for link in &self.links {
                    for (a, b) in [(link.left_pos, link.right_pos), (link.right_pos, link.left_pos)]
                    {
                        if a == x && seen.insert(b) {
                            frontier.push(b);
                        }
                    }
                }
            }
            if seen != self.used {
                return Err(LinkageViolation::Disconnected);
            }
        }

        let chosen_keys: BTreeSet<usize> = self.chosen.keys().copied().collect();
        if chosen_keys != self.used {
            return Err(LinkageViolation::ChosenMismatch);
        }

        // Each word's links, nearest-first per side, must consume its chosen
        // connectors in order, one link per connector, with matching labels.
        for (&word, disjunct) in &self.chosen {
            let mut right_partners: Vec<&Link> =
                self.links.iter().filter(|l| l.left_pos == word).collect();
            right_partners.sort_by_key(|l| l.right_pos);
            let mut left_partners: Vec<&Link> =
                self.links.iter().filter(|l| l.right_pos == word).collect();
            left_partners.sort_by_key(|l| std::cmp::Reverse(l.left_pos));
            if right_partners.len() != disjunct.right.len()
                || left_partners.len() != disjunct.left.len()
            {
                return Err(LinkageViolation::ConnectorCount { word });
            }
        }
        for link in &self.links {
            let lw = &self.chosen[&link.left_pos];
            let rw = &self.chosen[&link.right_pos];
            let rank_r = self
                .links
                .iter()
                .filter(|l| l.left_pos == link.left_pos && l.right_pos < link.right_pos)
                .count();
            let rank_l = self
                .links
                .iter()
                .filter(|l| l.right_pos == link.right_pos && l.left_pos > link.left_pos)
                .count();
            let out = &lw.right[rank_r];
            let back = &rw.left[rank_l];
            if !connectors_match(out, back) {
                return Err(LinkageViolation::OrderViolation {
                    left: link.left_pos,
                    right: link.right_pos,
                });
            }
            let expected = link_label(&out.label, &back.label);
            if link.label != expected {
                return Err(LinkageViolation::BadLabel {
                    left: link.left_pos,
                    right: link.right_pos,
                    expected,
                    found: link.label.clone(),
                });
            }
        }

        let actual = CostVector {
            unused: self.skipped.iter().filter(|&&p| p > 0).count() as u32,
            dis: self.chosen.values().map(|d| d.cost).sum(),
            and: 0,
            len: self.links.iter().map(|l| (l.right_pos - l.left_pos) as u32).sum(),
        };
        if actual != self.cost {
            return Err(LinkageViolation::BadCost { stored: self.cost, actual });
        }
        Ok(())
    }

    /// Deterministic ordering used by the parser's output: cheapest first.
    pub fn sort_key(&self) -> (u32, u32, Vec<Link>, Vec<usize>) {
        (self.cost.dis, self.cost.len, self.links.clone(), self.skipped.iter().copied().collect())
    }
}
