//! Plain-text complex format.
//!
//! ```text
//! # comment
//! n 3
//! label 0 apex
//! e 0 1
//! e 1 2
//! ```
//!
//! The first non-comment line is `n <vertex_count>`; edges are `e <i> <j>` with
//! 0-based indices; `label <i> <string>` lines are optional.

use sha2::{Digest, Sha256};

use super::FlagComplex;
use crate::error::{Error, Result};

pub fn parse_complex(text: &str) -> Result<FlagComplex> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut labels: Vec<(usize, String, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap();
        match (tag, n) {
            ("n", None) => {
                let count = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| perr("expected `n <vertex_count>`"))?;
                if parts.next().is_some() {
                    return Err(perr("trailing tokens after vertex count"));
                }
                n = Some(count);
            }
            ("n", Some(_)) => return Err(perr("vertex count given twice")),
            (_, None) => return Err(perr("first line must be `n <vertex_count>`")),
            ("e", Some(_)) => {
                let mut idx = || -> Result<usize> {
                    parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| perr("expected `e <i> <j>`"))
                };
                let u = idx()?;
                let v = idx()?;
                if parts.next().is_some() {
                    return Err(perr("trailing tokens after edge"));
                }
                edges.push((u, v));
            }
            ("label", Some(_)) => {
                let rest = line["label".len()..].trim_start();
                let (idx, label) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| perr("expected `label <i> <string>`"))?;
                let i: usize = idx.parse().map_err(|_| perr("bad label index"))?;
                labels.push((i, label.trim().to_string(), line_no));
            }
            _ => return Err(perr(&format!("unknown directive `{tag}`"))),
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n <vertex_count>` line".into(),
    })?;
    let mut complex = FlagComplex::from_graph(n, &edges)?;
    for (i, label, _) in labels {
        complex.set_label(i, label)?;
    }
    Ok(complex)
}

/// Canonical text: `n` line, label lines by index, edges sorted.
pub fn write_complex(complex: &FlagComplex) -> String {
    let mut out = format!("n {}\n", complex.vertex_count());
    for (i, l) in complex.labels().iter().enumerate() {
        if let Some(l) = l {
            out.push_str(&format!("label {i} {l}\n"));
        }
    }
    for (u, v) in complex.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// SHA-256 (hex) of the label-free canonical text; identifies the 1-skeleton.
pub fn complex_hash(complex: &FlagComplex) -> String {
    let mut text = format!("n {}\n", complex.vertex_count());
    for (u, v) in complex.edges() {
        text.push_str(&format!("e {u} {v}\n"));
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}
