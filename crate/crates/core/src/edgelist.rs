//! Canonical edge-list files.
//!
//! ```text
//! # steiner-sparse v1
//! # r=4 n=6 construction=mod-sum group=Z6
//! 0 1 2 4
//! 1 3 4 5
//! ```
//!
//! One edge per line as ascending decimal vertex indices separated by single
//! spaces, lines in lexicographic order, every line newline-terminated. The
//! reader accepts exactly what the writer produces, so a file that parses
//! re-serializes byte for byte. Hypergraphs of unknown origin carry
//! `construction=external group=none`.

use std::io::{self, Write};

use crate::constructions::{ConstructionKind, ConstructionMeta};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::hypergraph::Hypergraph;

pub const MAGIC: &str = "# steiner-sparse v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListFile {
    pub hypergraph: Hypergraph,
    pub meta: Option<ConstructionMeta>,
}

impl EdgeListFile {
    pub fn new(hypergraph: Hypergraph, meta: Option<ConstructionMeta>) -> Result<Self> {
        if let Some(meta) = &meta {
            if meta.r != hypergraph.r() || meta.used_n != hypergraph.n() {
                return Err(Error::usage(format!(
                    "metadata (r={}, n={}) does not describe a hypergraph with r={}, n={}",
                    meta.r,
                    meta.used_n,
                    hypergraph.r(),
                    hypergraph.n()
                )));
            }
        }
        Ok(EdgeListFile { hypergraph, meta })
    }

    /// A file without construction metadata.
    pub fn external(hypergraph: Hypergraph) -> Self {
        EdgeListFile {
            hypergraph,
            meta: None,
        }
    }

    pub fn header_line(&self) -> String {
        let (kind, group) = match &self.meta {
            Some(m) => (m.kind.as_str().to_string(), m.group.to_string()),
            None => ("external".to_string(), "none".to_string()),
        };
        format!(
            "# r={} n={} construction={kind} group={group}",
            self.hypergraph.r(),
            self.hypergraph.n()
        )
    }

    pub fn write_to<W: Write>(&self, w: W) -> io::Result<()> {
        let mut w = io::BufWriter::new(w);
        writeln!(w, "{MAGIC}")?;
        writeln!(w, "{}", self.header_line())?;
        let mut line = String::new();
        for edge in self.hypergraph.edges() {
            line.clear();
            for (i, v) in edge.iter().enumerate() {
                if i > 0 {
                    line.push(' ');
                }
                line.push_str(&v.to_string());
            }
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        w.flush()
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("output is ASCII")
    }

    /// Parses a file; errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let line_count = text.split('\n').count();
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| Error::format(line_count, "file must end with a newline"))?;
        let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));

        match lines.next() {
            Some((_, MAGIC)) => {}
            Some((no, other)) => {
                return Err(Error::format(no, format!("expected {MAGIC:?}, found {other:?}")))
            }
            None => return Err(Error::format(1, "missing header")),
        }
        let (no, header) = lines
            .next()
            .ok_or_else(|| Error::format(2, "missing parameter header"))?;
        let (r, n, meta) = parse_header(header).map_err(|m| Error::format(no, m))?;

        let mut flat: Vec<u32> = Vec::new();
        let mut edge: Vec<u32> = Vec::with_capacity(r);
        for (no, line) in lines {
            edge.clear();
            for tok in line.split(' ') {
                let v = parse_canonical_u32(tok)
                    .ok_or_else(|| Error::format(no, format!("invalid vertex token {tok:?}")))?;
                if v >= n {
                    return Err(Error::format(no, format!("vertex {v} out of range 0..{n}")));
                }
                if edge.last().is_some_and(|&p| p >= v) {
                    return Err(Error::format(no, "vertices must be strictly increasing"));
                }
                edge.push(v);
            }
            if edge.len() != r {
                return Err(Error::format(
                    no,
                    format!("edge has {} vertices, expected r={r}", edge.len()),
                ));
            }
            if flat.len() >= r && flat[flat.len() - r..] >= edge[..] {
                return Err(Error::format(
                    no,
                    "edges must be in strictly increasing lexicographic order",
                ));
            }
            flat.extend_from_slice(&edge);
        }
        let hypergraph = Hypergraph::from_sorted_edges(r, n, flat);
        Ok(EdgeListFile { hypergraph, meta })
    }
}

type Header = (usize, u32, Option<ConstructionMeta>);

fn parse_header(line: &str) -> std::result::Result<Header, String> {
    let fields: Vec<&str> = line.split(' ').collect();
    let [hash, r, n, construction, group] = fields[..] else {
        return Err(format!(
            "expected `# r=<r> n=<n> construction=<name> group=<group>`, found {line:?}"
        ));
    };
    if hash != "#" {
        return Err(format!("header must start with `# `, found {line:?}"));
    }
    let field = |tok: &'_ str, key: &str| -> std::result::Result<String, String> {
        tok.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .map(str::to_string)
            .ok_or_else(|| format!("expected `{key}=...`, found {tok:?}"))
    };
    let r_val = field(r, "r")?;
    let r = parse_canonical_u32(&r_val)
        .filter(|r| (2..=64).contains(r))
        .ok_or_else(|| format!("invalid uniformity {r_val:?}"))? as usize;
    let n_val = field(n, "n")?;
    let n = parse_canonical_u32(&n_val).ok_or_else(|| format!("invalid vertex count {n_val:?}"))?;
    let construction = field(construction, "construction")?;
    let group = field(group, "group")?;

    let meta = match (construction.as_str(), group.as_str()) {
        ("external", "none") => None,
        ("external", _) | (_, "none") => {
            return Err("`construction=external` goes with `group=none` and only with it".into())
        }
        (kind, group) => {
            let kind: ConstructionKind = kind.parse().map_err(|e: Error| e.to_string())?;
            let group: GroupSpec = group.parse().map_err(|e: Error| e.to_string())?;
            if group.order() != n {
                return Err(format!("group {group} has order {}, but n={n}", group.order()));
            }
            Some(ConstructionMeta::new(kind, group, r, n as u64).map_err(|e| e.to_string())?)
        }
    };
    Ok((r, n, meta))
}

/// Decimal without sign or leading zeros.
fn parse_canonical_u32(tok: &str) -> Option<u32> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return None;
    }
    tok.parse().ok()
}
