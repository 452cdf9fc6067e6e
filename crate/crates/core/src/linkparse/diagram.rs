//! ASCII linkage diagrams: arcs drawn with `+----Label----+` rails above the
//! word row, null words shown in brackets, the wall shown as LEFT-WALL.

use super::linkage::Linkage;

/// Render the arc diagram for one linkage. `words` excludes the wall.
pub fn render_linkage(words: &[&str], linkage: &Linkage) -> String {
    let display: Vec<String> = (0..=linkage.n_words)
        .map(|p| {
            let w = if p == 0 { "LEFT-WALL" } else { words[p - 1] };
            if linkage.skipped.contains(&p) && p > 0 {
                format!("[{w}]")
            } else {
                w.to_string()
            }
        })
        .collect();

    // Anchor columns: word starts, widened until every arc fits its label.
    let mut anchors: Vec<usize> = Vec::with_capacity(display.len());
    let mut col = 0;
    for w in &display {
        anchors.push(col);
        col += w.chars().count() + 1;
    }
    loop {
        let mut grew = false;
        for link in &linkage.links {
            let need = link.label.chars().count() + 3;
            let have = anchors[link.right_pos] - anchors[link.left_pos];
            if have < need {
                let deficit = need - have;
                for a in anchors.iter_mut().skip(link.right_pos) {
                    *a += deficit;
                }
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    // Arc heights: 1 + tallest arc strictly inside.
    let mut order: Vec<usize> = (0..linkage.links.len()).collect();
    order.sort_by_key(|&i| linkage.links[i].right_pos - linkage.links[i].left_pos);
    let mut heights = vec![1usize; linkage.links.len()];
    for &i in &order {
        let (li, ri) = (linkage.links[i].left_pos, linkage.links[i].right_pos);
        for &j in &order {
            if j == i {
                continue;
            }
            let (lj, rj) = (linkage.links[j].left_pos, linkage.links[j].right_pos);
            let inside = li <= lj && rj <= ri && (rj - lj) < (ri - li);
            if inside {
                heights[i] = heights[i].max(heights[j] + 1);
            }
        }
    }
    let max_h = heights.iter().copied().max().unwrap_or(0);

    let width = anchors.last().copied().unwrap_or(0)
        + display.last().map(|w| w.chars().count()).unwrap_or(0);
    let mut grid = vec![vec![' '; width]; max_h];

    for (i, link) in linkage.links.iter().enumerate() {
        let row = max_h - heights[i];
        let (a, b) = (anchors[link.left_pos], anchors[link.right_pos]);
        for cell in grid[row][a..=b].iter_mut() {
            *cell = '-';
        }
        grid[row][a] = '+';
        grid[row][b] = '+';
        let label: Vec<char> = link.label.chars().collect();
        let inner = b - a - 1;
        let start = a + 1 + (inner - label.len()) / 2;
        for (k, c) in label.iter().enumerate() {
            grid[row][start + k] = *c;
        }
        // Pillars from below the arc down to the word row.
        for pr in grid.iter_mut().skip(row + 1) {
            for colx in [a, b] {
                if pr[colx] == ' ' {
                    pr[colx] = '|';
                }
            }
        }
    }

    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let mut word_row = vec![' '; width];
    for (p, w) in display.iter().enumerate() {
        for (k, c) in w.chars().enumerate() {
            word_row[anchors[p] + k] = c;
        }
    }
    let line: String = word_row.into_iter().collect();
    out.push_str(line.trim_end());
    out.push('\n');
    out
}

/// Render the full report for a parse: count header, then each linkage's
/// cost vector line and diagram.
pub fn render_report(words: &[&str], linkages: &[Linkage]) -> String {
    let mut out = String::new();
    if linkages.is_empty() {
        out.push_str("No linkages found.\n");
        return out;
    }
    let null_count = linkages[0].cost.unused;
    if null_count > 0 {
        out.push_str("No complete linkages found.\n");
    }
    let m = linkages.len();
    let noun = if m == 1 { "linkage" } else { "linkages" };
    out.push_str(&format!("Found {m} {noun} at null count {null_count}\n"));
    for (i, linkage) in linkages.iter().enumerate() {
        if m == 1 {
            out.push_str(&format!("Unique linkage, cost vector = {}\n\n", linkage.cost));
        } else {
            out.push_str(&format!("Linkage {}, cost vector = {}\n\n", i + 1, linkage.cost));
        }
        out.push_str(&render_linkage(words, linkage));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkparse::lexicon::Lexicon;
    use crate::linkparse::parser::{parse, ParseOpts};

    const DICT: &str = "
LEFT-WALL: Wd+;
the: D+;
cat: {D-} & Wd- & Ss+;
slept: Ss- & {Xc+};
.: Xc-;
";

    #[test]
    fn renders_words_arcs_and_cost_line() {
        let lexicon: Lexicon = DICT.parse().unwrap();
        let words = vec!["the", "cat", "slept", "unparseable", "."];
        let linkages = parse(&words, &lexicon, &ParseOpts::default()).unwrap();
        assert_eq!(linkages[0].cost.unused, 1);
        let report = render_report(&words, &linkages);
        assert!(report.contains("No complete linkages found."));
        assert!(report.contains("at null count 1"));
        assert!(report.contains("cost vector = (UNUSED=1 DIS=0 AND=0 LEN="));
        assert!(report.contains("[unparseable]"));
        assert!(report.contains("LEFT-WALL"));
        let diagram = render_linkage(&words, &linkages[0]);
        assert!(diagram.contains("Wd"));
        assert!(diagram.contains("Ss"));
        let word_row = diagram.lines().last().unwrap();
        let toks: Vec<&str> = word_row.split_whitespace().collect();
        assert_eq!(toks, ["LEFT-WALL", "the", "cat", "slept", "[unparseable]", "."]);
    }

    #[test]
    fn wide_labels_stretch_spans() {
        let dict = "
LEFT-WALL: Wabcdefgh+;
a: Wabcdefgh-;
";
        let lexicon: Lexicon = dict.parse().unwrap();
        let words = vec!["a"];
        let linkages = parse(&words, &lexicon, &ParseOpts::default()).unwrap();
        let diagram = render_linkage(&words, &linkages[0]);
        assert!(diagram.contains("Wabcdefgh"));
    }
}
