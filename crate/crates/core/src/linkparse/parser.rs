//! Region-splitting parser: counts and extracts linkages over word intervals
//! with memoization, iterating the null-word budget upward until something
//! links.
//!
//! Conventions that the recursion relies on:
//! - Position 0 is the virtual LEFT-WALL; sentence words sit at 1..=n. A
//!   virtual right boundary at n+1 carries no connectors.
//! - Connector lists are stored nearest-first but consumed farthest-first
//!   (from the back): in a region (l, r), l's farthest remaining right
//!   connector must link to some interior word w, which splits the region.
//!   Links between the two boundary words of a region are only ever formed
//!   at the moment the region is created, never inside it, which is what
//!   makes every linkage reachable exactly once.
//! - The wall must link in every linkage that has links at all; the single
//!   wall-less linkage is the degenerate all-null one, which exists at null
//!   count = word count so parsing is total.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::lexicon::Lexicon;
use super::linkage::{
    connectors_match, link_label, Connector, CostVector, Disjunct, Link, Linkage,
};

#[derive(Debug, Clone)]
pub struct ParseOpts {
    /// Largest null-word count to try; defaults to the word count, which
    /// guarantees at least the all-null linkage.
    pub max_null: Option<usize>,
    /// Cap on returned linkages (cheapest kept).
    pub max_linkages: usize,
}

impl Default for ParseOpts {
    fn default() -> ParseOpts {
        ParseOpts { max_null: None, max_linkages: 64 }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("cannot parse an empty word sequence")]
    EmptyInput,
}

/// Minimum extraction budget, whatever max_linkages says.
const EXTRACT_FLOOR: usize = 4096;

/// Find linkages at the minimal achievable null count, cheapest (DIS, LEN)
/// first, at most `opts.max_linkages` of them.
pub fn parse(
    words: &[&str],
    lexicon: &Lexicon,
    opts: &ParseOpts,
) -> Result<Vec<Linkage>, ParseError> {
    if words.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let n = words.len();
    let max_null = opts.max_null.unwrap_or(n).min(n);

    // Extraction enumerates in structural order, so give it headroom beyond
    // max_linkages; the final cut then keeps the cheapest by (DIS, LEN).
    let budget = opts.max_linkages.max(EXTRACT_FLOOR);
    let mut search = Search::new(words, lexicon);
    for null_count in 0..=max_null {
        let partials = search.top_level(null_count, budget);
        if !partials.is_empty() {
            let mut linkages: Vec<Linkage> =
                partials.into_iter().map(|p| search.realize(p)).collect();
            linkages.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
            linkages.truncate(opts.max_linkages);
            return Ok(linkages);
        }
    }
    if n <= max_null {
        return Ok(vec![all_null(n)]);
    }
    Ok(Vec::new())
}

fn all_null(n: usize) -> Linkage {
    Linkage {
        n_words: n,
        links: Vec::new(),
        used: BTreeSet::new(),
        skipped: (0..=n).collect(),
        chosen: BTreeMap::new(),
        cost: CostVector { unused: n as u32, dis: 0, and: 0, len: 0 },
    }
}

/// Remaining-connector state for one side of a region: a prefix of a
/// specific disjunct's connector list, identified by the disjunct's index in
/// the flat arena plus the prefix length. `None` means nothing left to link.
type SideState = Option<(u32, u8)>;

#[derive(Debug, Clone, Default)]
struct Partial {
    links: Vec<(usize, usize, u32, u32)>, // left pos, right pos, label halves interned below
    chosen: Vec<(usize, u32)>,            // word position -> arena disjunct index
}

struct Search<'a> {
    n: usize,
    /// Arena of candidate disjuncts; `offsets[p]..offsets[p+1]` are word p's.
    arena: Vec<&'a Disjunct>,
    offsets: Vec<usize>,
    labels: Vec<String>,
    memo: HashMap<(u16, u16, u64, u64, u16), u64>,
}

impl<'a> Search<'a> {
    fn new(words: &[&str], lexicon: &'a Lexicon) -> Search<'a> {
        let n = words.len();
        assert!(n + 2 < u16::MAX as usize, "sentence too long to parse");
        let mut arena = Vec::new();
        let mut offsets = vec![0usize];
        // Position 0: wall disjuncts that can actually link rightward.
        for d in lexicon.wall_disjuncts() {
            if d.left.is_empty() && !d.right.is_empty() {
                arena.push(d);
            }
        }
        offsets.push(arena.len());
        for (i, word) in words.iter().enumerate() {
            for d in lexicon.lookup(word, i == 0) {
                if !d.is_empty() {
                    arena.push(d);
                }
            }
            offsets.push(arena.len());
        }
        for d in &arena {
            assert!(d.left.len() < 64 && d.right.len() < 64, "disjunct too wide");
        }
        let labels = Vec::new();
        Search { n, arena, offsets, labels, memo: HashMap::new() }
    }

    fn candidates(&self, pos: usize) -> std::ops::Range<usize> {
        self.offsets[pos]..self.offsets[pos + 1]
    }

    /// The farthest remaining connector of a right-side state (l's view).
    fn right_head(&self, state: SideState) -> Option<&Connector> {
        state.map(|(d, len)| &self.arena[d as usize].right[len as usize - 1])
    }

    /// The farthest remaining connector of a left-side state (r's view).
    fn left_head(&self, state: SideState) -> Option<&Connector> {
        state.map(|(d, len)| &self.arena[d as usize].left[len as usize - 1])
    }

    fn shrink(state: SideState) -> SideState {
        match state {
            Some((d, len)) if len > 1 => Some((d, len - 1)),
            _ => None,
        }
    }

    fn full_right(&self, d: u32) -> SideState {
        let len = self.arena[d as usize].right.len() as u8;
        (len > 0).then_some((d, len))
    }

    fn full_left(&self, d: u32) -> SideState {
        let len = self.arena[d as usize].left.len() as u8;
        (len > 0).then_some((d, len))
    }

    fn key(l: usize, r: usize, ls: SideState, rs: SideState, k: usize) -> (u16, u16, u64, u64, u16) {
        let enc = |s: SideState| s.map(|(d, len)| (d as u64) << 8 | len as u64).unwrap_or(u64::MAX);
        (l as u16, r as u16, enc(ls), enc(rs), k as u16)
    }

    /// Number of ways to complete the region strictly between `l` and `r`
    /// with `k` null words inside, where `ls` is l's unmet right-connector
    /// state (to be satisfied inside the region) and `rs` is r's unmet
    /// left-connector state.
    fn count(&mut self, l: usize, r: usize, ls: SideState, rs: SideState, k: usize) -> u64 {
        let interior = r - l - 1;
        if interior == 0 {
            return (ls.is_none() && rs.is_none() && k == 0) as u64;
        }
        if ls.is_none() && rs.is_none() {
            // Nothing can reach inside: every interior word must be null,
            // since a linked island would be disconnected.
            return (k == interior) as u64;
        }
        if k > interior {
            return 0;
        }
        let key = Self::key(l, r, ls, rs, k);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total: u64 = 0;
        if ls.is_some() {
            // l's farthest connector must link to some interior word w.
            let lc = self.right_head(ls).unwrap().clone();
            for w in l + 1..r {
                for di in self.candidates(w) {
                    let d = self.arena[di];
                    let Some(wl) = d.left.last() else { continue };
                    if !connectors_match(&lc, wl) {
                        continue;
                    }
                    let d_left_rest = {
                        let len = d.left.len() as u8 - 1;
                        (len > 0).then_some((di as u32, len))
                    };
                    let max_kl = (w - l - 1).min(k);
                    for kl in 0..=max_kl {
                        let kr = k - kl;
                        if kr > r - w - 1 {
                            continue;
                        }
                        let a = self.count(l, w, Self::shrink(ls), d_left_rest, kl);
                        if a == 0 {
                            continue;
                        }
                        // w takes only the left link; anything left in rs
                        // attaches strictly inside (w, r).
                        let b1 = self.count(w, r, self.full_right(di as u32), rs, kr);
                        total = total.saturating_add(a.saturating_mul(b1));
                        // w also links directly to r, consuming both
                        // farthest connectors.
                        if let (Some(wr), Some(rc)) = (d.right.last(), self.left_head(rs)) {
                            if connectors_match(wr, rc) {
                                let d_right_rest = {
                                    let len = d.right.len() as u8 - 1;
                                    (len > 0).then_some((di as u32, len))
                                };
                                let b2 = self.count(w, r, d_right_rest, Self::shrink(rs), kr);
                                total = total.saturating_add(a.saturating_mul(b2));
                            }
                        }
                    }
                }
            }
        } else {
            // Only r has unmet connectors; its farthest one picks the split
            // word, which must link to r.
            let rc = self.left_head(rs).unwrap().clone();
            for w in l + 1..r {
                for di in self.candidates(w) {
                    let d = self.arena[di];
                    let Some(wr) = d.right.last() else { continue };
                    if !connectors_match(wr, &rc) {
                        continue;
                    }
                    let d_right_rest = {
                        let len = d.right.len() as u8 - 1;
                        (len > 0).then_some((di as u32, len))
                    };
                    let max_kl = (w - l - 1).min(k);
                    for kl in 0..=max_kl {
                        let kr = k - kl;
                        if kr > r - w - 1 {
                            continue;
                        }
                        let b = self.count(w, r, d_right_rest, Self::shrink(rs), kr);
                        if b == 0 {
                            continue;
                        }
                        let a = self.count(l, w, None, self.full_left(di as u32), kl);
                        total = total.saturating_add(a.saturating_mul(b));
                    }
                }
            }
        }
        self.memo.insert(key, total);
        total
    }

    /// Enumerate the linkages `count` counts, up to `budget` of them, in a
    /// deterministic order.
    fn extract(
        &mut self,
        l: usize,
        r: usize,
        ls: SideState,
        rs: SideState,
        k: usize,
        budget: usize,
    ) -> Vec<Partial> {
        if budget == 0 || self.count(l, r, ls, rs, k) == 0 {
            return Vec::new();
        }
        let interior = r - l - 1;
        if interior == 0 || (ls.is_none() && rs.is_none()) {
            // count() > 0 already vouches for the base conditions.
            return vec![Partial::default()];
        }
        let mut out: Vec<Partial> = Vec::new();
        if ls.is_some() {
            let lc = self.right_head(ls).unwrap().clone();
            for w in l + 1..r {
                for di in self.candidates(w) {
                    if out.len() >= budget {
                        return out;
                    }
                    let d = self.arena[di];
                    let Some(wl) = d.left.last() else { continue };
                    if !connectors_match(&lc, wl) {
                        continue;
                    }
                    let left_link = self.intern_link(l, w, &lc, wl);
                    let d_left_rest = {
                        let len = d.left.len() as u8 - 1;
                        (len > 0).then_some((di as u32, len))
                    };
                    // Second branch exists when w can also link directly to r.
                    let both = match (d.right.last(), self.left_head(rs)) {
                        (Some(wr), Some(rc)) if connectors_match(wr, rc) => {
                            Some((wr.clone(), rc.clone()))
                        }
                        _ => None,
                    };
                    let max_kl = (w - l - 1).min(k);
                    for kl in 0..=max_kl {
                        let kr = k - kl;
                        if kr > r - w - 1 {
                            continue;
                        }
                        if self.count(l, w, Self::shrink(ls), d_left_rest, kl) == 0 {
                            continue;
                        }
                        let lefts =
                            self.extract(l, w, Self::shrink(ls), d_left_rest, kl, budget);
                        let mut branches: Vec<(SideState, SideState, Option<(usize, usize, u32, u32)>)> =
                            vec![(self.full_right(di as u32), rs, None)];
                        if let Some((wr, rc)) = &both {
                            let d_right_rest = {
                                let len = d.right.len() as u8 - 1;
                                (len > 0).then_some((di as u32, len))
                            };
                            let wr_link = self.intern_link(w, r, wr, rc);
                            branches.push((d_right_rest, Self::shrink(rs), Some(wr_link)));
                        }
                        for (wstate, rstate, extra_link) in branches {
                            let rights = self.extract(w, r, wstate, rstate, kr, budget);
                            for lp in &lefts {
                                for rp in &rights {
                                    if out.len() >= budget {
                                        return out;
                                    }
                                    let mut p = lp.clone();
                                    p.links.push(left_link);
                                    if let Some(el) = extra_link {
                                        p.links.push(el);
                                    }
                                    p.links.extend(rp.links.iter().copied());
                                    p.chosen.push((w, di as u32));
                                    p.chosen.extend(rp.chosen.iter().copied());
                                    out.push(p);
                                }
                            }
                        }
                    }
                }
            }
        } else {
            let rc = self.left_head(rs).unwrap().clone();
            for w in l + 1..r {
                for di in self.candidates(w) {
                    if out.len() >= budget {
                        return out;
                    }
                    let d = self.arena[di];
                    let Some(wr) = d.right.last() else { continue };
                    if !connectors_match(wr, &rc) {
                        continue;
                    }
                    let right_link = self.intern_link(w, r, wr, &rc);
                    let d_right_rest = {
                        let len = d.right.len() as u8 - 1;
                        (len > 0).then_some((di as u32, len))
                    };
                    let max_kl = (w - l - 1).min(k);
                    for kl in 0..=max_kl {
                        let kr = k - kl;
                        if kr > r - w - 1 {
                            continue;
                        }
                        if self.count(w, r, d_right_rest, Self::shrink(rs), kr) == 0 {
                            continue;
                        }
                        let rights =
                            self.extract(w, r, d_right_rest, Self::shrink(rs), kr, budget);
                        let lefts =
                            self.extract(l, w, None, self.full_left(di as u32), kl, budget);
                        for lp in &lefts {
                            for rp in &rights {
                                if out.len() >= budget {
                                    return out;
                                }
                                let mut p = lp.clone();
                                p.links.push(right_link);
                                p.links.extend(rp.links.iter().copied());
                                p.chosen.push((w, di as u32));
                                p.chosen.extend(rp.chosen.iter().copied());
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn intern_label(&mut self, label: String) -> u32 {
        if let Some(i) = self.labels.iter().position(|x| *x == label) {
            return i as u32;
        }
        self.labels.push(label);
        self.labels.len() as u32 - 1
    }

    fn intern_link(
        &mut self,
        l: usize,
        r: usize,
        out: &Connector,
        back: &Connector,
    ) -> (usize, usize, u32, u32) {
        let a = self.intern_label(out.label.clone());
        let b = self.intern_label(back.label.clone());
        (l, r, a, b)
    }

    /// One round of the top level: every wall disjunct opens the full span
    /// (0, n+1) with the virtual right boundary carrying no connectors.
    fn top_level(&mut self, null_count: usize, budget: usize) -> Vec<(u32, Partial)> {
        let mut out = Vec::new();
        for di in self.candidates(0) {
            if self.count(0, self.n + 1, self.full_right(di as u32), None, null_count) == 0 {
                continue;
            }
            let parts =
                self.extract(0, self.n + 1, self.full_right(di as u32), None, null_count, budget);
            out.extend(parts.into_iter().map(|p| (di as u32, p)));
        }
        out
    }

    fn realize(&self, (wall_di, partial): (u32, Partial)) -> Linkage {
        let mut links: Vec<Link> = partial
            .links
            .iter()
            .map(|&(l, r, a, b)| Link {
                left_pos: l,
                right_pos: r,
                label: link_label(&self.labels[a as usize], &self.labels[b as usize]),
            })
            .collect();
        links.sort_by_key(|l| (l.left_pos, l.right_pos));
        let mut chosen = BTreeMap::new();
        chosen.insert(0, self.arena[wall_di as usize].clone());
        for &(w, di) in &partial.chosen {
            chosen.insert(w, self.arena[di as usize].clone());
        }
        let used: BTreeSet<usize> =
            links.iter().flat_map(|l| [l.left_pos, l.right_pos]).collect();
        let skipped: BTreeSet<usize> = (0..=self.n).filter(|p| !used.contains(p)).collect();
        let cost = CostVector {
            unused: skipped.iter().filter(|&&p| p > 0).count() as u32,
            dis: chosen.values().map(|d| d.cost).sum(),
            and: 0,
            len: links.iter().map(|l| (l.right_pos - l.left_pos) as u32).sum(),
        };
        Linkage { n_words: self.n, links, used, skipped, chosen, cost }
    }
}

