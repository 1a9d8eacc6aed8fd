//! Line-oriented text formats for graphs, colorings, color lists and tree
//! decompositions.
//!
//! Graph (DIMACS-style):
//! ```text
//! c comment
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! Coloring: one `v <vertex> <color>` line per vertex (the `c` prefix stays
//! reserved for comments). Lists: `l <vertex> <c1> <c2> ...`; vertices
//! without a line keep the full palette. Tree decomposition (PACE-style):
//! `s td <bags> <width+1> <n>`, bag lines `b <id> <v...>`, then one
//! `<i> <j>` line per tree edge.
//!
//! All formats are UTF-8 with LF line endings (a trailing `\r` is tolerated),
//! with or without a final newline.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColorLists, Coloring, Graph};
use crate::treewidth::TreeDecomposition;

/// An in-memory problem instance as read from its component files.
#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub graph: Graph,
    pub coloring: Coloring,
    pub r: usize,
    pub budget: Option<usize>,
    pub lists: Option<ColorLists>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn tokens(line: &str) -> Vec<&str> {
    line.trim_end_matches('\r').split_whitespace().collect()
}

fn parse_num<T: std::str::FromStr>(tok: &str, lineno: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(lineno, format!("invalid {what}: {tok:?}")))
}

/// Parses a DIMACS-style graph file.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(raw);
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate header"));
                }
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(parse_err(lineno, "expected header `p edge <n> <m>`"));
                }
                let n = parse_num(toks[2], lineno, "vertex count")?;
                let m = parse_num(toks[3], lineno, "edge count")?;
                header = Some((n, m));
            }
            Some(&"e") => {
                let (n, m) = header.ok_or_else(|| parse_err(lineno, "edge before header"))?;
                if toks.len() != 3 {
                    return Err(parse_err(lineno, "expected `e <u> <v>`"));
                }
                let u: usize = parse_num(toks[1], lineno, "vertex")?;
                let v: usize = parse_num(toks[2], lineno, "vertex")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(
                        lineno,
                        format!("vertex index out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop at vertex {u}")));
                }
                if edges.len() == m {
                    return Err(parse_err(lineno, format!("more than {m} edge lines")));
                }
                edges.push((u, v));
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unexpected line kind {other:?}")));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(text.lines().count() + 1, "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count() + 1,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges)
}

/// Serializes a graph canonically: header, then sorted deduplicated edges.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Parses a coloring file: one `v <vertex> <color>` line per vertex of a
/// graph with `n` vertices, colors validated against `1..=r`.
pub fn parse_coloring(text: &str, n: usize, r: usize) -> Result<Coloring> {
    let mut colors: Vec<Option<usize>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(raw);
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"v") => {
                if toks.len() != 3 {
                    return Err(parse_err(lineno, "expected `v <vertex> <color>`"));
                }
                let v: usize = parse_num(toks[1], lineno, "vertex")?;
                let c: usize = parse_num(toks[2], lineno, "color")?;
                if v == 0 || v > n {
                    return Err(parse_err(lineno, format!("vertex {v} out of range 1..={n}")));
                }
                if c == 0 || c > r {
                    return Err(parse_err(lineno, format!("color {c} out of range 1..={r}")));
                }
                if colors[v - 1].is_some() {
                    return Err(parse_err(lineno, format!("vertex {v} assigned twice")));
                }
                colors[v - 1] = Some(c);
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unexpected line kind {other:?}")));
            }
        }
    }
    if let Some(v) = colors.iter().position(|c| c.is_none()) {
        return Err(parse_err(
            text.lines().count() + 1,
            format!("vertex {} has no color assignment", v + 1),
        ));
    }
    Coloring::new(colors.into_iter().map(|c| c.unwrap()).collect(), r)
}

pub fn serialize_coloring(phi: &Coloring) -> String {
    let mut out = String::new();
    for v in 1..=phi.n() {
        let _ = writeln!(out, "v {} {}", v, phi.color(v));
    }
    out
}

/// Parses a list file: `l <vertex> <c1> <c2> ...` lines. Vertices without a
/// line receive the full palette `1..=r`.
pub fn parse_lists(text: &str, n: usize, r: usize) -> Result<ColorLists> {
    let full: BTreeSet<usize> = (1..=r).collect();
    let mut lists: Vec<Option<BTreeSet<usize>>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(raw);
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"l") => {
                if toks.len() < 2 {
                    return Err(parse_err(lineno, "expected `l <vertex> <colors...>`"));
                }
                let v: usize = parse_num(toks[1], lineno, "vertex")?;
                if v == 0 || v > n {
                    return Err(parse_err(lineno, format!("vertex {v} out of range 1..={n}")));
                }
                if toks.len() == 2 {
                    return Err(parse_err(lineno, format!("empty list for vertex {v}")));
                }
                let mut set = BTreeSet::new();
                for t in &toks[2..] {
                    let c: usize = parse_num(t, lineno, "color")?;
                    if c == 0 || c > r {
                        return Err(parse_err(lineno, format!("color {c} out of range 1..={r}")));
                    }
                    set.insert(c);
                }
                if lists[v - 1].is_some() {
                    return Err(parse_err(lineno, format!("vertex {v} listed twice")));
                }
                lists[v - 1] = Some(set);
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unexpected line kind {other:?}")));
            }
        }
    }
    ColorLists::new(
        lists.into_iter().map(|l| l.unwrap_or_else(|| full.clone())).collect(),
        r,
    )
}

pub fn serialize_lists(lists: &ColorLists) -> String {
    let mut out = String::new();
    for v in 1..=lists.n() {
        let _ = write!(out, "l {v}");
        for c in lists.list(v) {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

/// Parses a tree decomposition and validates it against `g`. Bag ids are
/// 1-based in the file and 0-based in memory.
pub fn parse_tree_decomposition(text: &str, g: &Graph) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(raw);
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate header"));
                }
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(parse_err(lineno, "expected `s td <bags> <width+1> <n>`"));
                }
                let b: usize = parse_num(toks[2], lineno, "bag count")?;
                let w1: usize = parse_num(toks[3], lineno, "width+1")?;
                let n: usize = parse_num(toks[4], lineno, "vertex count")?;
                if n != g.n() {
                    return Err(parse_err(
                        lineno,
                        format!("decomposition is for {n} vertices, graph has {}", g.n()),
                    ));
                }
                bags = vec![None; b];
                header = Some((b, w1, n));
            }
            Some(&"b") => {
                let (b, _, n) = header.ok_or_else(|| parse_err(lineno, "bag before header"))?;
                if toks.len() < 2 {
                    return Err(parse_err(lineno, "expected `b <id> <vertices...>`"));
                }
                let id: usize = parse_num(toks[1], lineno, "bag id")?;
                if id == 0 || id > b {
                    return Err(parse_err(lineno, format!("bag id {id} out of range 1..={b}")));
                }
                if bags[id - 1].is_some() {
                    return Err(parse_err(lineno, format!("bag {id} declared twice")));
                }
                let mut content = Vec::new();
                for t in &toks[2..] {
                    let v: usize = parse_num(t, lineno, "vertex")?;
                    if v == 0 || v > n {
                        return Err(parse_err(lineno, format!("vertex {v} out of range 1..={n}")));
                    }
                    content.push(v);
                }
                content.sort_unstable();
                content.dedup();
                bags[id - 1] = Some(content);
            }
            Some(_) => {
                let (b, _, _) = header.ok_or_else(|| parse_err(lineno, "edge before header"))?;
                if toks.len() != 2 {
                    return Err(parse_err(lineno, "expected tree edge `<i> <j>`"));
                }
                let x: usize = parse_num(toks[0], lineno, "bag id")?;
                let y: usize = parse_num(toks[1], lineno, "bag id")?;
                if x == 0 || y == 0 || x > b || y > b {
                    return Err(parse_err(lineno, format!("bag id out of range 1..={b}")));
                }
                tree_edges.push((x - 1, y - 1));
            }
        }
    }
    let (_, w1, _) = header.ok_or_else(|| parse_err(text.lines().count() + 1, "missing header"))?;
    let mut bag_vec = Vec::with_capacity(bags.len());
    for (i, bag) in bags.into_iter().enumerate() {
        bag_vec.push(bag.ok_or_else(|| {
            parse_err(text.lines().count() + 1, format!("bag {} not declared", i + 1))
        })?);
    }
    let td = TreeDecomposition::new(bag_vec, tree_edges)?;
    td.validate(g)?;
    if td.max_bag_size() != w1 {
        return Err(Error::InvalidDecomposition(format!(
            "header declares maximum bag size {}, bags have {}",
            w1,
            td.max_bag_size()
        )));
    }
    Ok(td)
}

pub fn serialize_tree_decomposition(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bag_count(), td.max_bag_size(), n);
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for &(x, y) in td.tree_edges() {
        let _ = writeln!(out, "{} {}", x + 1, y + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_edge() {
        let g = parse_graph("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn parses_isolated_vertices() {
        let g = parse_graph("p edge 3 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn rejects_out_of_range_edge() {
        let err = parse_graph("p edge 2 1\ne 1 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        let err = parse_graph("c hi\np edge 2 2\ne 1 2\ne 2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
    }

    #[test]
    fn rejects_edge_count_mismatch() {
        assert!(parse_graph("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_graph("p edge 2 0\ne 1 2\n").is_err());
    }

    #[test]
    fn tolerates_comments_crlf_and_missing_final_newline() {
        let g = parse_graph("c x\r\np edge 2 1\r\ne 1 2").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn parses_coloring() {
        let phi = parse_coloring("v 1 1\nv 2 1\n", 2, 2).unwrap();
        assert_eq!(phi.as_slice(), &[1, 1]);
    }

    #[test]
    fn coloring_error_paths() {
        assert!(parse_coloring("v 1 1\n", 2, 2).is_err()); // vertex 2 missing
        assert!(parse_coloring("v 1 3\nv 2 1\n", 2, 2).is_err()); // color out of range
        assert!(parse_coloring("v 1 1\nv 1 2\n", 1, 2).is_err()); // duplicate
    }

    #[test]
    fn parses_lists_with_default_full_palette() {
        let ls = parse_lists("l 1 2\n", 2, 3).unwrap();
        assert_eq!(ls.list(1).iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(ls.list(2).len(), 3);
        assert!(parse_lists("l 1\n", 1, 3).is_err());
    }

    #[test]
    fn parses_tree_decomposition() {
        let g = Graph::complete(3);
        let td = parse_tree_decomposition("s td 1 3 3\nb 1 1 2 3\n", &g).unwrap();
        assert_eq!(td.width(), 2);

        let p3 = Graph::path(3);
        let td = parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", &p3).unwrap();
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn rejects_decomposition_missing_an_edge() {
        let g = Graph::complete(3);
        let err =
            parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", &g).unwrap_err();
        match err {
            Error::InvalidDecomposition(msg) => assert!(msg.contains("edge")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn graph_round_trip() {
        let g = Graph::new(5, &[(1, 2), (2, 3), (4, 5), (1, 5)]).unwrap();
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn coloring_round_trip() {
        let phi = Coloring::new(vec![2, 1, 3, 3], 3).unwrap();
        let back = parse_coloring(&serialize_coloring(&phi), 4, 3).unwrap();
        assert_eq!(phi, back);
    }
}
