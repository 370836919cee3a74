//! Readers and writers for the three supported graph file formats.
//!
//! * **edge list**: one `<label> <label>` pair per line, `#` comments.
//! * **DIMACS**: `p edge <n> <m>` header, `e <u> <v>` lines with 1-based ids, `c` comments.
//! * **GML**: the `graph [ node [ id N ] edge [ source X target Y ] ]` subset;
//!   every other key is skipped.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::ParseError;
use crate::graph::{Graph, GraphBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    #[serde(alias = "edge-list")]
    EdgeList,
    Dimacs,
    Gml,
}

impl GraphFormat {
    /// Guesses the format from a file extension; unknown extensions are edge lists.
    pub fn from_path(path: &Path) -> Self {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref()
        {
            Some("gml") => GraphFormat::Gml,
            Some("dimacs" | "col" | "clq") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edgelist",
            GraphFormat::Dimacs => "dimacs",
            GraphFormat::Gml => "gml",
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" | "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            "gml" => Ok(GraphFormat::Gml),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// Side information gathered while parsing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub duplicate_edges: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub graph: Graph,
    pub stats: ParseStats,
}

pub fn parse(text: &str, format: GraphFormat) -> Result<Parsed, ParseError> {
    match format {
        GraphFormat::EdgeList => read_edge_list(text),
        GraphFormat::Dimacs => read_dimacs_graph(text),
        GraphFormat::Gml => read_gml(text),
    }
}

/// Reads a graph file; `format = None` infers it from the extension.
pub fn read_graph_file(path: &Path, format: Option<GraphFormat>) -> Result<Parsed, ParseError> {
    let text = std::fs::read_to_string(path)?;
    let format = format.unwrap_or_else(|| GraphFormat::from_path(path));
    parse(&text, format)
}

pub fn write(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Dimacs => write_dimacs_graph(g),
        GraphFormat::Gml => write_gml(g),
    }
}

// ---------------------------------------------------------------- edge list

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    read_edge_list(text).map(|p| p.graph)
}

pub fn read_edge_list<'a>(text: &'a str) -> Result<Parsed, ParseError> {
    let mut ids: HashMap<&'a str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let (Some(a), Some(b), None) = (tok.next(), tok.next(), tok.next()) else {
            return Err(ParseError::Malformed(i + 1));
        };
        if a == b {
            return Err(ParseError::SelfLoop(a.to_string()));
        }
        let mut intern = |s: &'a str| -> usize {
            *ids.entry(s).or_insert_with(|| {
                labels.push(s.to_string());
                labels.len() - 1
            })
        };
        let u = intern(a);
        let v = intern(b);
        edges.push((u, v));
    }
    let mut b = GraphBuilder::new(labels.len());
    for (u, v) in edges {
        b.add_edge(u, v)
            .expect("interned ids are in range and distinct");
    }
    b.set_labels(labels);
    let (graph, duplicate_edges) = b.build_counting();
    Ok(Parsed {
        graph,
        stats: ParseStats {
            duplicate_edges,
            warnings: Vec::new(),
        },
    })
}

/// Writes one `<label> <label>` line per edge. Isolated vertices cannot be
/// represented and are dropped.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}

// ---------------------------------------------------------------- DIMACS

pub fn parse_dimacs_graph(text: &str) -> Result<Graph, ParseError> {
    read_dimacs_graph(text).map(|p| p.graph)
}

pub fn read_dimacs_graph(text: &str) -> Result<Parsed, ParseError> {
    let mut builder: Option<GraphBuilder> = None;
    let mut declared_m = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "p" => {
                if builder.is_some() || tok.len() != 4 {
                    return Err(ParseError::Malformed(i + 1));
                }
                let n: usize = tok[2].parse().map_err(|_| ParseError::Malformed(i + 1))?;
                declared_m = tok[3].parse().map_err(|_| ParseError::Malformed(i + 1))?;
                builder = Some(GraphBuilder::new(n));
            }
            "e" => {
                let b = builder.as_mut().ok_or(ParseError::MissingHeader)?;
                if tok.len() != 3 {
                    return Err(ParseError::Malformed(i + 1));
                }
                let u: i64 = tok[1].parse().map_err(|_| ParseError::Malformed(i + 1))?;
                let v: i64 = tok[2].parse().map_err(|_| ParseError::Malformed(i + 1))?;
                let n = b.n() as i64;
                for x in [u, v] {
                    if x < 1 || x > n {
                        return Err(ParseError::VertexOutOfRange(x));
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop(u.to_string()));
                }
                b.add_edge((u - 1) as usize, (v - 1) as usize)
                    .expect("range checked above");
            }
            _ => return Err(ParseError::Malformed(i + 1)),
        }
    }
    let mut b = builder.ok_or(ParseError::MissingHeader)?;
    b.set_labels((1..=b.n()).map(|i| i.to_string()).collect());
    let (graph, duplicate_edges) = b.build_counting();
    let mut warnings = Vec::new();
    if graph.m() != declared_m {
        let msg = format!(
            "header declares {declared_m} edges, found {} distinct",
            graph.m()
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }
    Ok(Parsed {
        graph,
        stats: ParseStats {
            duplicate_edges,
            warnings,
        },
    })
}

pub fn write_dimacs_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

// ---------------------------------------------------------------- GML

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Result<Vec<(Token<'_>, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut line = 1;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'[' => {
                out.push((Token::Open, line));
                i += 1;
            }
            b']' => {
                out.push((Token::Close, line));
                i += 1;
            }
            b'"' => {
                let start = i + 1;
                let start_line = line;
                i += 1;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(ParseError::Malformed(start_line));
                }
                out.push((Token::Atom(&text[start..i]), start_line));
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && !matches!(bytes[i], b'[' | b']' | b'"')
                {
                    i += 1;
                }
                out.push((Token::Atom(&text[start..i]), line));
            }
        }
    }
    Ok(out)
}

enum Value<'a> {
    Scalar(&'a str),
    List(Vec<(&'a str, Value<'a>, usize)>),
}

struct GmlParser<'a> {
    tokens: Vec<(Token<'a>, usize)>,
    pos: usize,
}

impl<'a> GmlParser<'a> {
    /// Parses `key value` pairs until a `]` (nested) or end of input (top level).
    fn list(&mut self, nested: bool) -> Result<Vec<(&'a str, Value<'a>, usize)>, ParseError> {
        let mut items = Vec::new();
        loop {
            let Some((tok, line)) = self.tokens.get(self.pos) else {
                return if nested {
                    Err(ParseError::UnbalancedBrackets)
                } else {
                    Ok(items)
                };
            };
            let line = *line;
            match tok {
                Token::Close => {
                    self.pos += 1;
                    return if nested {
                        Ok(items)
                    } else {
                        Err(ParseError::UnbalancedBrackets)
                    };
                }
                Token::Open => return Err(ParseError::Malformed(line)),
                Token::Atom(key) => {
                    let key = *key;
                    self.pos += 1;
                    let value = match self.tokens.get(self.pos) {
                        Some((Token::Atom(v), _)) => {
                            self.pos += 1;
                            Value::Scalar(v)
                        }
                        Some((Token::Open, _)) => {
                            self.pos += 1;
                            Value::List(self.list(true)?)
                        }
                        Some((Token::Close, _)) => return Err(ParseError::Malformed(line)),
                        None => {
                            return if nested {
                                Err(ParseError::UnbalancedBrackets)
                            } else {
                                Err(ParseError::Malformed(line))
                            }
                        }
                    };
                    items.push((key, value, line));
                }
            }
        }
    }
}

fn scalar<'a>(items: &[(&'a str, Value<'a>, usize)], key: &str) -> Option<&'a str> {
    items.iter().find_map(|(k, v, _)| match v {
        Value::Scalar(s) if *k == key => Some(*s),
        _ => None,
    })
}

pub fn parse_gml(text: &str) -> Result<Graph, ParseError> {
    read_gml(text).map(|p| p.graph)
}

pub fn read_gml(text: &str) -> Result<Parsed, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = GmlParser { tokens, pos: 0 };
    let top = p.list(false)?;
    let body = top
        .iter()
        .find_map(|(k, v, _)| match v {
            Value::List(items) if *k == "graph" => Some(items),
            _ => None,
        })
        .ok_or(ParseError::Malformed(1))?;

    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut names: Vec<Option<&str>> = Vec::new();
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    for (key, value, line) in body {
        let Value::List(items) = value else { continue };
        match *key {
            "node" => {
                let id = scalar(items, "id").ok_or(ParseError::Malformed(*line))?;
                if ids.insert(id, labels.len()).is_some() {
                    return Err(ParseError::Malformed(*line));
                }
                labels.push(id.to_string());
                names.push(scalar(items, "label"));
            }
            "edge" => {
                let s = scalar(items, "source").ok_or(ParseError::Malformed(*line))?;
                let t = scalar(items, "target").ok_or(ParseError::Malformed(*line))?;
                let lookup = |x: &str| {
                    ids.get(x)
                        .copied()
                        .ok_or_else(|| ParseError::EdgeBeforeNode(x.to_string()))
                };
                let (u, v) = (lookup(s)?, lookup(t)?);
                if u == v {
                    return Err(ParseError::SelfLoop(s.to_string()));
                }
                edges.push((u, v));
            }
            _ => {}
        }
    }
    // Node labels replace ids when every node has one and they are distinct
    // whitespace-free words.
    let usable: Option<Vec<&str>> = names
        .iter()
        .map(|l| l.filter(|l| !l.is_empty() && !l.contains(char::is_whitespace)))
        .collect();
    match usable {
        Some(named)
            if named.iter().collect::<std::collections::HashSet<_>>().len() == named.len() =>
        {
            labels = named.into_iter().map(str::to_string).collect();
        }
        _ if names.iter().any(Option::is_some) => {
            let msg = "node labels missing, repeated or containing spaces; using ids".to_string();
            log::warn!("{msg}");
            warnings.push(msg);
        }
        _ => {}
    }
    let mut b = GraphBuilder::new(labels.len());
    for (u, v) in edges {
        b.add_edge(u, v).expect("ids resolved above");
    }
    b.set_labels(labels);
    let (graph, duplicate_edges) = b.build_counting();
    Ok(Parsed {
        graph,
        stats: ParseStats {
            duplicate_edges,
            warnings,
        },
    })
}

pub fn write_gml(g: &Graph) -> String {
    let mut out = String::from("graph [\n");
    for u in g.vertices() {
        let _ = writeln!(out, "  node [ id {u} label \"{}\" ]", g.label(u));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  edge [ source {u} target {v} ]");
    }
    out.push_str("]\n");
    out
}
