//! graph6, DOT and JSON encodings of exclusivity graphs.
//!
//! graph6 follows the published format exactly (`N(n) R(x)`, upper triangle
//! column by column, six bits per printable byte). The DOT writer draws each
//! complete context (a maximal clique of size `d`) as its own group of bold,
//! coloured edges, in the spirit of a Greechie diagram where every context is
//! one smooth line; edges outside every context are thin and grey.
//!
//! JSON schema: `{"n": 8, "edges": [[0, 1], ...], "labels": ["A", ...]}`,
//! `labels` optional.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::cliques::clique_masks;
use super::{Bits, ExclusivityGraph, GraphError, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Dot,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected graph6, dot or json)")),
        }
    }
}

pub fn serialize(g: &ExclusivityGraph, format: Format) -> Vec<u8> {
    serialize_with_contexts(g, format, None)
}

/// Like [`serialize`]; for DOT, `d` selects which cliques are drawn as
/// contexts.
pub fn serialize_with_contexts(g: &ExclusivityGraph, format: Format, d: Option<usize>) -> Vec<u8> {
    match format {
        Format::Graph6 => to_graph6(g).into_bytes(),
        Format::Dot => to_dot(g, d).into_bytes(),
        Format::Json => to_json(g).into_bytes(),
    }
}

pub fn parse(bytes: &[u8], format: Format) -> Result<ExclusivityGraph, GraphError> {
    match format {
        Format::Graph6 => from_graph6(bytes),
        Format::Dot => from_dot(bytes),
        Format::Json => from_json(bytes),
    }
}

// ---------------------------------------------------------------- graph6

pub fn to_graph6(g: &ExclusivityGraph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adjacent(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ascii")
}

pub fn from_graph6(bytes: &[u8]) -> Result<ExclusivityGraph, GraphError> {
    let mut offset = 0;
    let mut data = bytes;
    if data.starts_with(b">>graph6<<") {
        offset = 10;
        data = &data[10..];
    }
    let end = data
        .iter()
        .rposition(|b| !b.is_ascii_whitespace())
        .map_or(0, |p| p + 1);
    let data = &data[..end];
    if data.is_empty() {
        return Err(GraphError::parse(offset, "empty graph6 input"));
    }
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(GraphError::parse(offset + i, format!("byte {b:#04x} outside graph6 range 63..=126")));
        }
    }
    let (n, mut pos) = if data[0] == 126 {
        if data.get(1) == Some(&126) {
            return Err(GraphError::parse(offset + 1, "graph too large for this tool"));
        }
        if data.len() < 4 {
            return Err(GraphError::parse(offset + data.len(), "truncated vertex count"));
        }
        let n = data[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    } else {
        ((data[0] - 63) as usize, 1)
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(GraphError::parse(offset, format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }
    let bits = n * (n - 1) / 2;
    let need = bits.div_ceil(6);
    if data.len() - pos != need {
        let at = offset + pos + need.min(data.len() - pos);
        return Err(GraphError::parse(
            at,
            format!("expected {need} edge bytes for n={n}, found {}", data.len() - pos),
        ));
    }
    let mut g = ExclusivityGraph::empty(n)?;
    let mut k = 0;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                cur = data[pos] - 63;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 && cur & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(GraphError::parse(offset + pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

// ---------------------------------------------------------------- JSON

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn to_json(g: &ExclusivityGraph) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        labels: g.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string(&doc).expect("graph json serialises")
}

fn byte_offset(text: &[u8], line: usize, column: usize) -> usize {
    let mut l = 1;
    for (i, &b) in text.iter().enumerate() {
        if l == line {
            return (i + column.saturating_sub(1)).min(text.len());
        }
        if b == b'\n' {
            l += 1;
        }
    }
    text.len()
}

pub fn from_json(bytes: &[u8]) -> Result<ExclusivityGraph, GraphError> {
    let doc: GraphJson = serde_json::from_slice(bytes)
        .map_err(|e| GraphError::parse(byte_offset(bytes, e.line(), e.column()), e.to_string()))?;
    let mut g = ExclusivityGraph::empty(doc.n)?;
    for [u, v] in doc.edges {
        g.add_edge(u, v)?;
    }
    match doc.labels {
        Some(l) => g.with_labels(l),
        None => Ok(g),
    }
}

// ---------------------------------------------------------------- DOT

const PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#17becf",
    "#bcbd22", "#666666",
];

/// Maximal cliques with exactly `d` vertices.
fn contexts(g: &ExclusivityGraph, d: usize) -> Vec<u64> {
    clique_masks(g.rows(), d)
        .into_iter()
        .filter(|&c| Bits(c).fold(u64::MAX, |acc, v| acc & g.neighbors(v)) == 0)
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &ExclusivityGraph, d: Option<usize>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        match g.labels() {
            Some(l) => out.push_str(&format!("  {v} [label={}];\n", quote(&l[v]))),
            None => out.push_str(&format!("  {v};\n")),
        }
    }
    let mut drawn = vec![0u64; g.n()];
    if let Some(d) = d {
        for (k, c) in contexts(g, d).into_iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            out.push_str(&format!(
                "  subgraph context_{k} {{\n    edge [color=\"{color}\", penwidth=3];\n"
            ));
            let members: Vec<usize> = Bits(c).collect();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if drawn[u] >> v & 1 == 0 {
                        out.push_str(&format!("    {u} -- {v};\n"));
                        drawn[u] |= 1 << v;
                    }
                }
            }
            out.push_str("  }\n");
        }
    }
    let rest: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| drawn[u] >> v & 1 == 0)
        .collect();
    if !rest.is_empty() {
        if d.is_some() {
            out.push_str("  edge [color=gray, style=dashed];\n");
        }
        for (u, v) in rest {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Eq,
    EdgeOp,
    DirEdgeOp,
}

fn tokenize(src: &[u8]) -> Result<Vec<(usize, Tok)>, GraphError> {
    let mut toks = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let c = src[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' if i == 0 || src[i - 1] == b'\n' => {
                while i < src.len() && src[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if src.get(i + 1) == Some(&b'/') => {
                while i < src.len() && src[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if src.get(i + 1) == Some(&b'*') => {
                let start = i;
                i += 2;
                loop {
                    if i + 1 >= src.len() {
                        return Err(GraphError::parse(start, "unterminated comment"));
                    }
                    if src[i] == b'*' && src[i + 1] == b'/' {
                        i += 2;
                        break;
                    }
                    i += 1;
                }
            }
            b'{' => {
                toks.push((i, Tok::LBrace));
                i += 1;
            }
            b'}' => {
                toks.push((i, Tok::RBrace));
                i += 1;
            }
            b'[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            b']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            b';' => {
                toks.push((i, Tok::Semi));
                i += 1;
            }
            b',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            b'=' => {
                toks.push((i, Tok::Eq));
                i += 1;
            }
            b'-' if src.get(i + 1) == Some(&b'-') => {
                toks.push((i, Tok::EdgeOp));
                i += 2;
            }
            b'-' if src.get(i + 1) == Some(&b'>') => {
                toks.push((i, Tok::DirEdgeOp));
                i += 2;
            }
            b'"' => {
                let start = i;
                i += 1;
                let mut s = Vec::new();
                loop {
                    match src.get(i) {
                        None => return Err(GraphError::parse(start, "unterminated string")),
                        Some(b'\\') if i + 1 < src.len() => {
                            s.push(src[i + 1]);
                            i += 2;
                        }
                        Some(b'"') => {
                            i += 1;
                            break;
                        }
                        Some(&b) => {
                            s.push(b);
                            i += 1;
                        }
                    }
                }
                let s = String::from_utf8(s).map_err(|_| GraphError::parse(start, "invalid utf-8 in string"))?;
                toks.push((start, Tok::Id(s)));
            }
            c if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'-' || c >= 0x80 => {
                let start = i;
                while i < src.len() {
                    let b = src[i];
                    let dash_op = b == b'-' && matches!(src.get(i + 1), Some(b'-') | Some(b'>'));
                    if (b.is_ascii_alphanumeric() || b == b'_' || b == b'.' || b == b'-' || b >= 0x80) && !dash_op {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let s = std::str::from_utf8(&src[start..i])
                    .map_err(|_| GraphError::parse(start, "invalid utf-8 in identifier"))?;
                toks.push((start, Tok::Id(s.to_owned())));
            }
            other => {
                return Err(GraphError::parse(i, format!("unexpected character `{}`", other as char)));
            }
        }
    }
    Ok(toks)
}

struct DotParser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ids: HashMap<String, usize>,
    names: Vec<String>,
    labels: Vec<Option<String>>,
    edges: Vec<(usize, usize, usize)>,
}

impl DotParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), GraphError> {
        let at = self.at();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(GraphError::parse(at, format!("expected {what}"))),
        }
    }

    fn id(&mut self, what: &str) -> Result<String, GraphError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Id(s)) => Ok(s),
            _ => Err(GraphError::parse(at, format!("expected {what}"))),
        }
    }

    fn vertex(&mut self, name: &str, at: usize) -> Result<usize, GraphError> {
        if let Some(&v) = self.ids.get(name) {
            return Ok(v);
        }
        let v = self.names.len();
        if v >= MAX_VERTICES {
            return Err(GraphError::parse(at, format!("more than {MAX_VERTICES} vertices")));
        }
        self.ids.insert(name.to_owned(), v);
        self.names.push(name.to_owned());
        self.labels.push(None);
        Ok(v)
    }

    fn attrs(&mut self) -> Result<Vec<(String, String)>, GraphError> {
        let mut out = Vec::new();
        while self.peek() == Some(&Tok::LBracket) {
            self.bump();
            loop {
                match self.peek() {
                    Some(Tok::RBracket) => {
                        self.bump();
                        break;
                    }
                    Some(Tok::Comma) | Some(Tok::Semi) => {
                        self.bump();
                    }
                    _ => {
                        let k = self.id("attribute name")?;
                        self.expect(Tok::Eq, "`=` in attribute")?;
                        let v = self.id("attribute value")?;
                        out.push((k, v));
                    }
                }
            }
        }
        Ok(out)
    }

    fn stmts(&mut self) -> Result<(), GraphError> {
        loop {
            match self.peek() {
                None => return Err(GraphError::parse(self.end, "missing `}`")),
                Some(Tok::RBrace) => {
                    self.bump();
                    return Ok(());
                }
                Some(Tok::Semi) => {
                    self.bump();
                }
                Some(Tok::LBrace) => {
                    self.bump();
                    self.stmts()?;
                }
                Some(Tok::Id(s)) if s == "subgraph" => {
                    self.bump();
                    if let Some(Tok::Id(_)) = self.peek() {
                        self.bump();
                    }
                    self.expect(Tok::LBrace, "`{` after subgraph")?;
                    self.stmts()?;
                }
                Some(Tok::Id(s)) if s == "graph" || s == "node" || s == "edge" => {
                    self.bump();
                    self.attrs()?;
                }
                Some(Tok::Id(_)) => self.node_or_edge()?,
                Some(_) => return Err(GraphError::parse(self.at(), "unexpected token")),
            }
        }
    }

    fn node_or_edge(&mut self) -> Result<(), GraphError> {
        let at = self.at();
        let name = self.id("node id")?;
        if self.peek() == Some(&Tok::Eq) {
            self.bump();
            self.id("value")?;
            return Ok(());
        }
        let mut chain = vec![(name, at)];
        loop {
            match self.peek() {
                Some(Tok::EdgeOp) => {
                    self.bump();
                    let at = self.at();
                    chain.push((self.id("node id after `--`")?, at));
                }
                Some(Tok::DirEdgeOp) => {
                    return Err(GraphError::parse(self.at(), "directed edges are not supported"));
                }
                _ => break,
            }
        }
        let attrs = self.attrs()?;
        let mut vs = Vec::new();
        for (name, at) in &chain {
            vs.push((self.vertex(name, *at)?, *at));
        }
        if vs.len() == 1 {
            if let Some((_, l)) = attrs.iter().find(|(k, _)| k == "label") {
                self.labels[vs[0].0] = Some(l.clone());
            }
        }
        for w in vs.windows(2) {
            self.edges.push((w[0].0, w[1].0, w[1].1));
        }
        Ok(())
    }
}

pub fn from_dot(bytes: &[u8]) -> Result<ExclusivityGraph, GraphError> {
    let toks = tokenize(bytes)?;
    let mut p = DotParser {
        toks,
        pos: 0,
        end: bytes.len(),
        ids: HashMap::new(),
        names: Vec::new(),
        labels: Vec::new(),
        edges: Vec::new(),
    };
    if let Some(Tok::Id(s)) = p.peek() {
        if s == "strict" {
            p.bump();
        }
    }
    let at = p.at();
    match p.bump() {
        Some(Tok::Id(s)) if s == "graph" => {}
        Some(Tok::Id(s)) if s == "digraph" => {
            return Err(GraphError::parse(at, "directed graphs are not supported"));
        }
        _ => return Err(GraphError::parse(at, "expected `graph`")),
    }
    if let Some(Tok::Id(_)) = p.peek() {
        p.bump();
    }
    p.expect(Tok::LBrace, "`{`")?;
    p.stmts()?;
    if p.pos < p.toks.len() {
        return Err(GraphError::parse(p.at(), "trailing input after graph"));
    }
    if p.names.is_empty() {
        return Err(GraphError::parse(bytes.len(), "graph has no vertices"));
    }
    let mut g = ExclusivityGraph::empty(p.names.len())?;
    for &(u, v, at) in &p.edges {
        if u == v {
            return Err(GraphError::parse(at, "self-loop"));
        }
        g.add_edge(u, v)?;
    }
    let numeric = p.names.iter().all(|s| s.parse::<usize>().is_ok());
    if p.labels.iter().any(Option::is_some) || !numeric {
        let labels = p
            .labels
            .iter()
            .zip(&p.names)
            .map(|(l, n)| l.clone().unwrap_or_else(|| n.clone()))
            .collect();
        g = g.with_labels(labels)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // small examples from the format description
        let g = ExclusivityGraph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&ExclusivityGraph::empty(1).unwrap()), "@");
        assert_eq!(to_graph6(&ExclusivityGraph::complete(4).unwrap()), "C~");
    }

    #[test]
    fn graph6_large_header() {
        let g = ExclusivityGraph::cycle(64).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(from_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn graph6_errors_name_positions() {
        assert!(matches!(from_graph6(b""), Err(GraphError::Parse { position: 0, .. })));
        assert!(matches!(from_graph6(b"D Q"), Err(GraphError::Parse { position: 1, .. })));
        assert!(matches!(from_graph6(b"DQ"), Err(GraphError::Parse { .. })));
        assert!(matches!(from_graph6(b"DQcc"), Err(GraphError::Parse { .. })));
        // n = 2 has one edge bit; the 5 padding bits must be zero
        assert!(from_graph6(b"A_").is_ok());
        assert!(matches!(from_graph6(b"Aa"), Err(GraphError::Parse { position: 1, .. })));
    }

    #[test]
    fn graph6_accepts_header_and_newline() {
        let g = from_graph6(b">>graph6<<DQc\n").unwrap();
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let g = ExclusivityGraph::cycle(5)
            .unwrap()
            .with_labels((0..5).map(|i| format!("p{i}")).collect())
            .unwrap();
        assert_eq!(from_json(to_json(&g).as_bytes()).unwrap(), g);
        assert!(matches!(from_json(b"{\"n\": 3, \"edges\": [[0, 3]]}"), Err(GraphError::VertexOutOfRange { .. })));
        match from_json(b"{\n  \"n\": 3,\n  \"edges\": [[0, 1]] oops }") {
            Err(GraphError::Parse { position, .. }) => assert!(position > 20),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dot_roundtrip_with_contexts() {
        let g = ExclusivityGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
            .unwrap()
            .with_labels(["A", "x", "y", "z", "w \"q\"", "B"].iter().map(|s| s.to_string()).collect())
            .unwrap();
        let dot = to_dot(&g, Some(3));
        assert_eq!(dot.matches("subgraph context_").count(), 2);
        assert!(dot.contains("style=dashed"));
        assert_eq!(from_dot(dot.as_bytes()).unwrap(), g);
        let plain = ExclusivityGraph::cycle(4).unwrap();
        assert_eq!(from_dot(to_dot(&plain, None).as_bytes()).unwrap(), plain);
    }

    #[test]
    fn dot_generic_input() {
        let g = from_dot(b"strict graph {\n a -- b -- c; /* c */ c -- a [color=red]\n d\n}").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.labels().unwrap(), ["a", "b", "c", "d"]);
        assert!(matches!(from_dot(b"digraph { a -> b }"), Err(GraphError::Parse { position: 0, .. })));
        assert!(matches!(from_dot(b"graph { a -- }"), Err(GraphError::Parse { position: 13, .. })));
        assert!(matches!(from_dot(b"graph { a -- a }"), Err(GraphError::Parse { .. })));
    }
}
