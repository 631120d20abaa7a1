//! Text formats: graphs, division dumps and query pair lists.
//!
//! Graph format:
//! ```text
//! # comment
//! graph <n> <directed:0|1> <weighted:0|1>
//! u v [w]
//! ```

use std::fmt::Write as _;
use std::path::Path;

use minorvc_core::{Graph, RDivision};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing `graph <n> <directed> <weighted>` header")]
    MissingHeader,
    #[error("{0}")]
    Graph(#[from] minorvc_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// Numbered lines with comments stripped and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn field<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, FormatError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn flag(line: usize, tok: Option<&str>, what: &str) -> Result<bool, FormatError> {
    match tok {
        Some("0") => Ok(false),
        Some("1") => Ok(true),
        Some(t) => Err(parse_err(line, format!("{what} flag must be 0 or 1, got `{t}`"))),
        None => Err(parse_err(line, format!("missing {what} flag"))),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("graph") {
        return Err(FormatError::MissingHeader);
    }
    let n: usize = field(hl, tok.next(), "vertex count")?;
    let directed = flag(hl, tok.next(), "directed")?;
    let weighted = flag(hl, tok.next(), "weighted")?;
    if tok.next().is_some() {
        return Err(parse_err(hl, "trailing tokens after header"));
    }
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let mut tok = l.split_whitespace();
        let u: usize = field(ln, tok.next(), "endpoint")?;
        let v: usize = field(ln, tok.next(), "endpoint")?;
        let w: u32 = if weighted { field(ln, tok.next(), "weight")? } else { 1 };
        if tok.next().is_some() {
            return Err(parse_err(ln, "too many fields"));
        }
        if u >= n || v >= n {
            return Err(parse_err(ln, format!("vertex out of range (n = {n})")));
        }
        edges.push((u, v, w));
    }
    Ok(Graph::new(n, directed, edges)?)
}

pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    parse_graph(&read(path)?)
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Writes a graph. Weights are emitted only when some edge is not unit.
pub fn format_graph(g: &Graph) -> String {
    let weighted = !g.is_unit_weight();
    let mut s = format!("graph {} {} {}\n", g.n(), u8::from(g.is_directed()), u8::from(weighted));
    for e in g.edges() {
        if weighted {
            writeln!(s, "{} {} {}", e.u, e.v, e.w).unwrap();
        } else {
            writeln!(s, "{} {}", e.u, e.v).unwrap();
        }
    }
    s
}

/// Same layout with arbitrary-precision weights (the lower-bound gadget).
pub fn format_weighted_edges<W: std::fmt::Display>(n: usize, directed: bool, edges: &[(usize, usize, W)]) -> String {
    let mut s = format!("graph {} {} 1\n", n, u8::from(directed));
    for (u, v, w) in edges {
        writeln!(s, "{u} {v} {w}").unwrap();
    }
    s
}

/// One cluster per line: `id<TAB>vertices<TAB>boundary sequence`, lists
/// space-separated.
pub fn format_division(div: &RDivision) -> String {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    for c in &div.clusters {
        writeln!(s, "{}\t{}\t{}", c.id, join(&c.vertices), join(&c.boundary_sequence)).unwrap();
    }
    s
}

pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, FormatError> {
    content_lines(text)
        .map(|(ln, l)| {
            let mut tok = l.split_whitespace();
            let u = field(ln, tok.next(), "source")?;
            let v = field(ln, tok.next(), "target")?;
            if tok.next().is_some() {
                return Err(parse_err(ln, "too many fields"));
            }
            Ok((u, v))
        })
        .collect()
}

pub fn read_pairs(path: &Path) -> Result<Vec<(usize, usize)>, FormatError> {
    parse_pairs(&read(path)?)
}
