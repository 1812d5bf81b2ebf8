//! Text formats. All of them are line oriented, use 1-indexed vertex ids and
//! treat lines starting with `c` as comments.
//!
//! Instance:
//!
//! ```text
//! p vcn <n> <m>
//! e <u> <v>        one per edge
//! r <v> <k>        one per nonzero requirement
//! f <v>            one per free vertex
//! ```
//!
//! Solution (also used for vertex covers): `s <size>` followed by one
//! `v <id>` line per vertex.
//!
//! Gadget mapping: `p map <n> <m> <subdivisions>`, the source edges as `e`
//! lines, then `role <gadget-id> <tag> <refs>` per gadget vertex where the tag
//! is `original <x>`, `w_side <x> <u>-<v>`, `w_mid <u>-<v>`,
//! `z_side <x> <u>-<v>` or `subdivision <owner-gadget-id>`.
//!
//! Hypergraph: `p hyp <n> <k>` then `h <v> <v> ...` per set.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gadgets::{build_bipartite_gadget, build_gadget, GadgetMapping, Role};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::Instance;
use crate::oracle::ViolatingFamily;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A whitespace-separated token with its 1-based column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn end_column(&self) -> usize {
        self.tokens
            .last()
            .map(|t| t.column + t.text.len())
            .unwrap_or(1)
    }

    fn token(&self, i: usize, what: &str) -> Result<&Token<'a>> {
        self.tokens
            .get(i)
            .ok_or_else(|| parse_error(self.number, self.end_column(), format!("missing {what}")))
    }

    fn number<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let tok = self.token(i, what)?;
        tok.text.parse().map_err(|_| {
            parse_error(
                self.number,
                tok.column,
                format!("expected {what}, found `{}`", tok.text),
            )
        })
    }

    /// A 1-indexed vertex id, returned 0-indexed.
    fn vertex(&self, i: usize, n: usize) -> Result<Vertex> {
        let v: usize = self.number(i, "vertex id")?;
        if v == 0 || v > n {
            return Err(parse_error(
                self.number,
                self.tokens[i].column,
                format!("vertex {v} is outside 1..={n}"),
            ));
        }
        Ok(v - 1)
    }

    fn expect_len(&self, len: usize) -> Result<()> {
        match self.tokens.get(len) {
            Some(extra) => Err(parse_error(
                self.number,
                extra.column,
                "unexpected trailing token",
            )),
            None => Ok(()),
        }
    }
}

/// Non-empty, non-comment lines.
fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let mut tokens = Vec::new();
        let mut rest = raw;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            tokens.push(Token {
                text: &tail[..len],
                column: offset + start + 1,
            });
            offset += start + len;
            rest = &tail[len..];
        }
        match tokens.first() {
            None => None,
            Some(t) if t.text == "c" || t.text.starts_with('c') && t.text.len() == 1 => None,
            Some(_) => Some(Line {
                number: i + 1,
                tokens,
            }),
        }
    })
}

struct Header {
    line: usize,
    n: usize,
    m: usize,
}

fn header(line: &Line, kind: &str) -> Result<Header> {
    let tag = line.token(1, "format tag")?;
    if tag.text != kind {
        return Err(parse_error(
            line.number,
            tag.column,
            format!("expected `p {kind}`"),
        ));
    }
    Ok(Header {
        line: line.number,
        n: line.number(2, "vertex count")?,
        m: line.number(3, "count")?,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut head: Option<Header> = None;
    let mut edges = Vec::new();
    let mut requirements: Vec<u32> = Vec::new();
    let mut seen_requirement: Vec<bool> = Vec::new();
    let mut free = VertexSet::new();

    for line in lines(text) {
        let first = &line.tokens[0];
        if first.text == "p" {
            if head.is_some() {
                return Err(parse_error(
                    line.number,
                    first.column,
                    "second problem line",
                ));
            }
            let h = header(&line, "vcn")?;
            line.expect_len(4)?;
            requirements = vec![0; h.n];
            seen_requirement = vec![false; h.n];
            head = Some(h);
            continue;
        }
        let Some(h) = &head else {
            return Err(parse_error(
                line.number,
                first.column,
                "expected `p vcn <n> <m>` first",
            ));
        };
        match first.text {
            "e" => {
                let (u, v) = (line.vertex(1, h.n)?, line.vertex(2, h.n)?);
                line.expect_len(3)?;
                edges.push((u, v, line.number));
            }
            "r" => {
                let v = line.vertex(1, h.n)?;
                let k: u32 = line.number(2, "requirement")?;
                line.expect_len(3)?;
                if seen_requirement[v] {
                    return Err(parse_error(
                        line.number,
                        first.column,
                        format!("second requirement for vertex {}", v + 1),
                    ));
                }
                seen_requirement[v] = true;
                requirements[v] = k;
            }
            "f" => {
                let v = line.vertex(1, h.n)?;
                line.expect_len(2)?;
                free.insert(v);
            }
            other => {
                return Err(parse_error(
                    line.number,
                    first.column,
                    format!("unknown line type `{other}`"),
                ));
            }
        }
    }

    let h = head.ok_or_else(|| parse_error(1, 1, "missing `p vcn <n> <m>` line"))?;
    if edges.len() != h.m {
        return Err(parse_error(
            h.line,
            1,
            format!("header promises {} edges, found {}", h.m, edges.len()),
        ));
    }
    let graph = build_graph(h.n, &edges)?;
    Instance::new(graph, requirements, free)
}

fn build_graph(n: usize, edges: &[(Vertex, Vertex, usize)]) -> Result<Graph> {
    let mut seen = std::collections::HashSet::new();
    for &(u, v, line) in edges {
        if u == v {
            return Err(parse_error(
                line,
                1,
                format!("self-loop at vertex {}", u + 1),
            ));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_error(
                line,
                1,
                format!("repeated edge {} {}", u + 1, v + 1),
            ));
        }
    }
    Graph::from_edges(n, edges.iter().map(|&(u, v, _)| (u, v)))
}

pub fn write_instance(inst: &Instance, comments: &[String]) -> String {
    let g = inst.graph();
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p vcn {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for v in g.vertices() {
        if inst.requirement(v) > 0 {
            writeln!(out, "r {} {}", v + 1, inst.requirement(v)).unwrap();
        }
    }
    for &v in inst.free() {
        writeln!(out, "f {}", v + 1).unwrap();
    }
    out
}

/// Parses a solution file against a graph with `n` vertices.
pub fn parse_solution(text: &str, n: usize) -> Result<VertexSet> {
    let mut size: Option<(usize, usize)> = None;
    let mut set = VertexSet::new();
    for line in lines(text) {
        let first = &line.tokens[0];
        match first.text {
            "s" => {
                if size.is_some() {
                    return Err(parse_error(line.number, first.column, "second size line"));
                }
                size = Some((line.number(1, "solution size")?, line.number));
                line.expect_len(2)?;
            }
            "v" => {
                if size.is_none() {
                    return Err(parse_error(
                        line.number,
                        first.column,
                        "expected `s <size>` first",
                    ));
                }
                let v = line.vertex(1, n)?;
                line.expect_len(2)?;
                if !set.insert(v) {
                    return Err(parse_error(
                        line.number,
                        first.column,
                        format!("vertex {} listed twice", v + 1),
                    ));
                }
            }
            other => {
                return Err(parse_error(
                    line.number,
                    first.column,
                    format!("unknown line type `{other}`"),
                ));
            }
        }
    }
    let (k, at) = size.ok_or_else(|| parse_error(1, 1, "missing `s <size>` line"))?;
    if k != set.len() {
        return Err(parse_error(
            at,
            1,
            format!("size line says {k}, found {} vertices", set.len()),
        ));
    }
    Ok(set)
}

pub fn write_solution(s: &VertexSet, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "s {}", s.len()).unwrap();
    for &v in s {
        writeln!(out, "v {}", v + 1).unwrap();
    }
    out
}

fn edge_ref(m: &GadgetMapping, edge: usize) -> String {
    let eg = &m.edge_index[edge];
    format!("{}-{}", eg.x + 1, eg.y + 1)
}

fn role_line(m: &GadgetMapping, u: Vertex) -> String {
    let refs = match m.roles[u] {
        Role::Original(x) => format!("original {}", x + 1),
        Role::WSide { vertex, edge } => format!("w_side {} {}", vertex + 1, edge_ref(m, edge)),
        Role::WMid { edge } => format!("w_mid {}", edge_ref(m, edge)),
        Role::ZSide { vertex, edge } => format!("z_side {} {}", vertex + 1, edge_ref(m, edge)),
        Role::Subdivision { owner } => format!("subdivision {}", owner + 1),
    };
    format!("role {} {refs}", u + 1)
}

pub fn write_mapping(m: &GadgetMapping) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "c gadget mapping: source graph, then one role per gadget vertex"
    )
    .unwrap();
    writeln!(
        out,
        "p map {} {} {}",
        m.source.vertex_count(),
        m.source.edge_count(),
        m.subdivisions
    )
    .unwrap();
    for (u, v) in m.source.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for u in m.gadget.vertices() {
        writeln!(out, "{}", role_line(m, u)).unwrap();
    }
    out
}

/// Reads a mapping sidecar, rebuilds the gadget from the recorded source
/// graph and checks every role line against the rebuilt one.
pub fn parse_mapping(text: &str) -> Result<GadgetMapping> {
    let mut head: Option<(Header, usize)> = None;
    let mut edges = Vec::new();
    let mut roles: BTreeMap<usize, (String, usize)> = BTreeMap::new();
    for line in lines(text) {
        let first = &line.tokens[0];
        match first.text {
            "p" => {
                if head.is_some() {
                    return Err(parse_error(
                        line.number,
                        first.column,
                        "second problem line",
                    ));
                }
                let h = header(&line, "map")?;
                let subdivisions: usize = line.number(4, "subdivision count")?;
                line.expect_len(5)?;
                head = Some((h, subdivisions));
            }
            "e" => {
                let Some((h, _)) = &head else {
                    return Err(parse_error(
                        line.number,
                        first.column,
                        "expected `p map` first",
                    ));
                };
                edges.push((line.vertex(1, h.n)?, line.vertex(2, h.n)?, line.number));
                line.expect_len(3)?;
            }
            "role" => {
                let id: usize = line.number(1, "gadget vertex id")?;
                let rest: Vec<&str> = line.tokens[1..].iter().map(|t| t.text).collect();
                roles.insert(id, (format!("role {}", rest.join(" ")), line.number));
            }
            other => {
                return Err(parse_error(
                    line.number,
                    first.column,
                    format!("unknown line type `{other}`"),
                ));
            }
        }
    }
    let (h, subdivisions) = head.ok_or_else(|| parse_error(1, 1, "missing `p map` line"))?;
    if edges.len() != h.m {
        return Err(parse_error(
            h.line,
            1,
            format!("header promises {} edges, found {}", h.m, edges.len()),
        ));
    }
    let source = build_graph(h.n, &edges)?;
    let m = match subdivisions {
        0 => build_gadget(&source)?,
        s if s % 2 == 1 => build_bipartite_gadget(&source, s / 2)?,
        s => {
            return Err(parse_error(
                h.line,
                1,
                format!("subdivision count {s} is neither 0 nor odd"),
            ))
        }
    };
    if roles.len() != m.gadget.vertex_count() {
        return Err(parse_error(
            h.line,
            1,
            format!(
                "{} role lines for a gadget with {} vertices",
                roles.len(),
                m.gadget.vertex_count()
            ),
        ));
    }
    for (u, (line, number)) in roles.values().enumerate() {
        let expected = role_line(&m, u);
        if *line != expected {
            return Err(parse_error(*number, 1, format!("expected `{expected}`")));
        }
    }
    Ok(m)
}

pub fn write_family(fam: &ViolatingFamily, n: usize) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "c {} family",
        if fam.minimal_only { "minimal" } else { "full" }
    )
    .unwrap();
    writeln!(out, "p hyp {n} {}", fam.sets.len()).unwrap();
    for x in &fam.sets {
        let ids: Vec<String> = x.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "h {}", ids.join(" ")).unwrap();
    }
    out
}

pub fn parse_family(text: &str) -> Result<(ViolatingFamily, usize)> {
    let mut head: Option<Header> = None;
    let mut sets = Vec::new();
    for line in lines(text) {
        let first = &line.tokens[0];
        match first.text {
            "p" => head = Some(header(&line, "hyp")?),
            "h" => {
                let Some(h) = &head else {
                    return Err(parse_error(
                        line.number,
                        first.column,
                        "expected `p hyp` first",
                    ));
                };
                let set: Result<VertexSet> = (1..line.tokens.len())
                    .map(|i| line.vertex(i, h.n))
                    .collect();
                sets.push(set?);
            }
            other => {
                return Err(parse_error(
                    line.number,
                    first.column,
                    format!("unknown line type `{other}`"),
                ));
            }
        }
    }
    let h = head.ok_or_else(|| parse_error(1, 1, "missing `p hyp` line"))?;
    if sets.len() != h.m {
        return Err(parse_error(
            h.line,
            1,
            format!("header promises {} sets, found {}", h.m, sets.len()),
        ));
    }
    Ok((
        ViolatingFamily {
            sets,
            minimal_only: false,
        },
        h.n,
    ))
}

/// Graphviz rendering: requirement labels, free vertices as boxes,
/// solution vertices filled.
pub fn to_dot(inst: &Instance, solution: Option<&VertexSet>) -> String {
    let g = inst.graph();
    let mut out = String::from("graph veccon {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let mut attrs = vec![format!("label=\"{}\\nr={}\"", v + 1, inst.requirement(v))];
        if inst.is_free(v) {
            attrs.push("shape=box".into());
        }
        if solution.is_some_and(|s| s.contains(&v)) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightblue".into());
        }
        writeln!(out, "  {} [{}];", v + 1, attrs.join(", ")).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", u + 1, v + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = "c path on three vertices\np vcn 3 2\ne 1 2\ne 2 3\nr 1 1\nr 2 1\nr 3 1\n";

    #[test]
    fn parses_instance() {
        let inst = parse_instance(P3).unwrap();
        assert_eq!(inst.graph(), &Graph::path(3));
        assert_eq!(inst.requirements(), &[1, 1, 1]);
        assert!(inst.free().is_empty());
        assert_eq!(parse_instance(&write_instance(&inst, &[])).unwrap(), inst);
    }

    #[test]
    fn reports_positions() {
        let err = parse_instance("p vcn 3 1\ne 1 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 5,
                message: "expected vertex id, found `x`".into()
            }
        );
        let err = parse_instance("p vcn 3 1\ne 1 4\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 2,
                column: 5,
                ..
            }
        ));
        assert!(matches!(
            parse_instance("e 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("p vcn 3 2\ne 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("p vcn 2 2\ne 1 2\ne 2 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_instance("p vcn 2 0\nq 1\n"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
    }

    #[test]
    fn solution_files() {
        let s: VertexSet = [1].into_iter().collect();
        let text = write_solution(&s, &["algo brute".into()]);
        assert_eq!(text, "c algo brute\ns 1\nv 2\n");
        assert_eq!(parse_solution(&text, 3).unwrap(), s);
        assert!(parse_solution("s 1\nv 4\n", 3).is_err());
        assert!(parse_solution("s 2\nv 1\n", 3).is_err());
    }

    #[test]
    fn mapping_round_trip() {
        let m = build_gadget(&Graph::complete(4)).unwrap();
        let text = write_mapping(&m);
        assert!(text.contains("role 5 w_side 1 1-2"));
        assert_eq!(parse_mapping(&text).unwrap(), m);
        let tampered = text.replace("role 5 w_side 1 1-2", "role 5 w_mid 1-2");
        assert!(parse_mapping(&tampered).is_err());
    }

    #[test]
    fn family_round_trip() {
        let fam = ViolatingFamily {
            sets: vec![[0, 1].into_iter().collect(), [2].into_iter().collect()],
            minimal_only: false,
        };
        let (back, n) = parse_family(&write_family(&fam, 3)).unwrap();
        assert_eq!(n, 3);
        assert_eq!(back, fam);
    }

    #[test]
    fn dot_output() {
        let inst = parse_instance(P3).unwrap();
        let dot = to_dot(&inst, None);
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert_eq!(dot.matches("label=").count(), 3);
        assert!(dot.contains("r=1"));
    }
}
