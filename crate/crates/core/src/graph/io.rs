//! Plain-text edge lists: one undirected edge `u v [w]` per line, 0-based
//! ids, whitespace separated, `#` starts a comment line.
//!
//! Generated graphs carry a metadata comment
//! `# fcs n=<n> d=<d> S=<S> mu=<mu> seed=<seed>`, which is recognised on
//! reading so that trailing isolated vertices and generator parameters
//! survive a round trip.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{FcsConfig, Graph};
use crate::error::{Error, Result};

/// Metadata recovered from comment lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeListMeta {
    pub fcs: Option<FcsConfig>,
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    load_edge_list_with_meta(path).map(|(g, _)| g)
}

pub fn load_edge_list_with_meta(path: impl AsRef<Path>) -> Result<(Graph, EdgeListMeta)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    read_edge_list(BufReader::new(file))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    read_edge_list(text.as_bytes()).map(|(g, _)| g)
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<(Graph, EdgeListMeta)> {
    let mut meta = EdgeListMeta::default();
    let mut edges: Vec<(u32, u32, f64)> = Vec::new();
    let mut max_id: Option<u32> = None;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(cfg) = parse_fcs_header(comment) {
                meta.fcs = Some(cfg);
            }
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let parse_id = |tok: Option<&str>| -> Result<u32> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected `u v [w]`".into(),
            })?;
            tok.parse::<u32>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id `{tok}`"),
            })
        };
        let u = parse_id(fields.next())?;
        let v = parse_id(fields.next())?;
        let w = match fields.next() {
            None => 1.0,
            Some(tok) => {
                let w: f64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid weight `{tok}`"),
                })?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("weight must be positive, got {w}"),
                    });
                }
                w
            }
        };
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "too many fields".into(),
            });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: lineno,
                vertex: u,
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w));
    }

    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut n = max_id.map_or(0, |m| m as usize + 1);
    if let Some(cfg) = &meta.fcs {
        n = n.max(cfg.n);
    }
    let graph = Graph::from_edges(n, edges)?;
    Ok((graph, meta))
}

fn parse_fcs_header(comment: &str) -> Option<FcsConfig> {
    let mut parts = comment.split_whitespace();
    if parts.next()? != "fcs" {
        return None;
    }
    let (mut n, mut d, mut s, mut mu, mut seed) = (None, None, None, None, None);
    for kv in parts {
        let (k, v) = kv.split_once('=')?;
        match k {
            "n" => n = v.parse().ok(),
            "d" => d = v.parse().ok(),
            "S" => s = v.parse().ok(),
            "mu" => mu = v.parse().ok(),
            "seed" => seed = v.parse().ok(),
            _ => {}
        }
    }
    Some(FcsConfig {
        n: n?,
        avg_degree: d?,
        community_size: s?,
        mu: mu?,
        seed: seed?,
    })
}

/// Writes `g` as an edge list, optionally preceded by comment lines.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W, header: Option<&str>) -> Result<()> {
    if let Some(header) = header {
        for line in header.lines() {
            writeln!(out, "# {line}")?;
        }
    }
    for (u, v, w) in g.edges() {
        if w == 1.0 {
            writeln!(out, "{u} {v}")?;
        } else {
            writeln!(out, "{u} {v} {w}")?;
        }
    }
    out.flush()?;
    Ok(())
}
