//! Text formats: string sets, edge lists (TSV), and DOT.

use std::fmt::{self, Write as _};

use crate::runs::RunRecord;
use crate::trie::{CommonSuffixTrie, EdgeRow, Label, NodeId};

pub const EDGE_HEADER: &str = "child\tparent\tlabel";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// One string per line; bytes are symbols; blank lines are skipped.
pub fn parse_string_set(text: &str) -> Result<Vec<Vec<Label>>, ParseError> {
    let strings: Vec<Vec<Label>> =
        text.lines().filter(|l| !l.trim().is_empty()).map(|l| l.bytes().map(Label::from).collect()).collect();
    if strings.is_empty() {
        return Err(err(0, "no strings in input"));
    }
    Ok(strings)
}

fn parse_label(field: &str, line: usize) -> Result<Label, ParseError> {
    if let Ok(v) = field.parse::<Label>() {
        return Ok(v);
    }
    let mut chars = field.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(Label::from(c)),
        _ => Err(err(line, format!("label {field:?} is neither an integer nor a single character"))),
    }
}

/// Parses `child<TAB>parent<TAB>label` rows after a fixed header. A parent
/// of `-1` marks the root row.
pub fn parse_edge_list(text: &str) -> Result<Vec<EdgeRow>, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        None => return Err(err(0, "empty edge list")),
        Some((i, h)) if h.trim_end_matches('\r') != EDGE_HEADER => {
            return Err(err(i + 1, format!("expected header {EDGE_HEADER:?}")))
        }
        Some(_) => {}
    }
    let mut rows = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let fields: Vec<&str> = raw.trim_end_matches('\r').split('\t').collect();
        if fields.len() != 3 {
            return Err(err(line, format!("expected 3 tab-separated fields, found {}", fields.len())));
        }
        let child = fields[0].parse::<u64>().map_err(|_| err(line, format!("bad child id {:?}", fields[0])))?;
        let parent = match fields[1] {
            "-1" => None,
            p => Some(p.parse::<u64>().map_err(|_| err(line, format!("bad parent id {p:?}")))?),
        };
        let label =
            if parent.is_none() { parse_label(fields[2], line).unwrap_or(0) } else { parse_label(fields[2], line)? };
        rows.push(EdgeRow { child, parent, label });
    }
    if rows.is_empty() {
        return Err(err(0, "edge list has a header but no rows"));
    }
    Ok(rows)
}

/// Serializes the trie with its dense ids, one row per node in id order.
pub fn write_edge_list(trie: &CommonSuffixTrie) -> String {
    let mut out = String::with_capacity(trie.node_count() * 16);
    out.push_str(EDGE_HEADER);
    out.push('\n');
    for row in trie.edge_rows() {
        match row.parent {
            None => writeln!(out, "{}\t-1\t0", row.child),
            Some(p) => writeln!(out, "{}\t{}\t{}", row.child, p, row.label),
        }
        .unwrap();
    }
    out
}

fn label_text(l: Label, sentinel: Label) -> String {
    if l == sentinel {
        return "$".into();
    }
    match char::from_u32(l) {
        Some(c) if c.is_ascii_graphic() && c != '"' && c != '\\' => c.to_string(),
        _ => l.to_string(),
    }
}

/// DOT graph of the trie. With a run, its path edges are drawn bold red and
/// the period is shown on the graph label.
pub fn write_dot(trie: &CommonSuffixTrie, highlight: Option<&RunRecord>) -> String {
    let mut on_run = vec![false; trie.node_count() + 1];
    if let Some(r) = highlight {
        let mut v = r.deep;
        while v != r.shallow && !v.is_bottom() {
            on_run[v.index()] = true;
            v = trie.parent(v);
        }
    }
    let mut out = String::from("digraph trie {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n");
    if let Some(r) = highlight {
        writeln!(
            out,
            "  label=\"run deep={} shallow={} period={} length={}\";",
            r.deep.0, r.shallow.0, r.period, r.length
        )
        .unwrap();
    }
    out.push_str("  n0 [label=\"⊥\\nsd=0\", shape=point];\n");
    for v in trie.nodes() {
        writeln!(out, "  n{} [label=\"{}\\nsd={}\"];", v.0, v.0, trie.sdepth(v)).unwrap();
    }
    for v in trie.nodes() {
        let p: NodeId = trie.parent(v);
        let label = label_text(trie.in_label(v), trie.sentinel());
        if on_run[v.index()] {
            writeln!(out, "  n{} -> n{} [label=\"{}\", color=red, penwidth=2.5];", p.0, v.0, label).unwrap();
        } else if v == NodeId::ROOT {
            writeln!(out, "  n{} -> n{} [label=\"{}\", style=dashed];", p.0, v.0, label).unwrap();
        } else {
            writeln!(out, "  n{} -> n{} [label=\"{}\"];", p.0, v.0, label).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trie::Direction;

    #[test]
    fn string_set_skips_blank_lines() {
        let s = parse_string_set("ab\n\n  \nc\n").unwrap();
        assert_eq!(s, vec![vec![97, 98], vec![99]]);
        assert_eq!(parse_string_set("\n\n").unwrap_err().line, 0);
        assert!(parse_string_set("").is_err());
    }

    #[test]
    fn edge_list_labels() {
        let rows = parse_edge_list("child\tparent\tlabel\n1\t-1\t-\n2\t1\ta\n3\t1\t7\n").unwrap();
        assert_eq!(rows[0].parent, None);
        assert_eq!(rows[1].label, 97);
        assert_eq!(rows[2].label, 7);
    }

    #[test]
    fn edge_list_errors_carry_line() {
        assert_eq!(parse_edge_list("").unwrap_err().line, 0);
        assert_eq!(parse_edge_list("a\tb\n").unwrap_err().line, 1);
        assert_eq!(parse_edge_list("child\tparent\tlabel\n1\t-1\t0\n2\tx\t3\n").unwrap_err().line, 3);
        assert_eq!(parse_edge_list("child\tparent\tlabel\n1\t-1\t0\n2\t1\tab\n").unwrap_err().line, 3);
        assert_eq!(parse_edge_list("child\tparent\tlabel\n1\t-1\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("child\tparent\tlabel\n").unwrap_err().line, 0);
    }

    #[test]
    fn edge_list_round_trip() {
        let t = CommonSuffixTrie::from_byte_strings(&["abab", "cab", "bb"], Direction::Rootward).unwrap();
        let text = write_edge_list(&t);
        let back = CommonSuffixTrie::from_edges(&parse_edge_list(&text).unwrap()).unwrap();
        assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn dot_highlight_marks_run_edges() {
        let t = CommonSuffixTrie::from_byte_strings(&["abab"], Direction::Rootward).unwrap();
        let plain = write_dot(&t, None);
        assert!(!plain.contains("color=red"));
        assert_eq!(plain, write_dot(&t, None));
        let run = RunRecord { deep: NodeId(5), shallow: NodeId::ROOT, period: 2, length: 4 };
        let dot = write_dot(&t, Some(&run));
        assert_eq!(dot.matches("color=red").count(), 4);
        assert!(dot.contains("period=2"));
    }
}
