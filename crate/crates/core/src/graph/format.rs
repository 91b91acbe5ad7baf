//! Edge-list JSON and graph6 encodings.

use std::str::FromStr;

use super::{EdgeListJson, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeListJson,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list-json" | "json" => Ok(GraphFormat::EdgeListJson),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::InvalidArgument(format!("unknown graph format {other:?}"))),
        }
    }
}

const HEADER: &str = ">>graph6<<";

impl Graph {
    /// Parses `text` in the given format. graph6 vertices are labeled `"0".."n-1"`.
    pub fn parse(text: &str, format: GraphFormat) -> Result<Graph> {
        match format {
            GraphFormat::EdgeListJson => {
                let raw: EdgeListJson = serde_json::from_str(text).map_err(|e| Error::Syntax {
                    line: e.line(),
                    column: e.column(),
                    message: e.to_string(),
                })?;
                Graph::new(&raw.vertices, &raw.edges)
            }
            GraphFormat::Graph6 => parse_graph6(text),
        }
    }

    /// Edge-list JSON text.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    /// The graph6 encoding (labels are dropped; vertex order is kept).
    pub fn to_graph6(&self) -> String {
        let n = self.order();
        let mut out = String::new();
        if n < 63 {
            out.push((n as u8 + 63) as char);
        } else if n < 258_048 {
            out.push(126 as char);
            for shift in [12, 6, 0] {
                out.push((((n >> shift) & 63) as u8 + 63) as char);
            }
        } else {
            out.push(126 as char);
            out.push(126 as char);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push((((n >> shift) & 63) as u8 + 63) as char);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((acc << (6 - filled)) + 63) as char);
        }
        out
    }
}

fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    let (body, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (trimmed.as_bytes(), 0),
    };
    let err = |offset: usize, message: &str| Error::Graph6 {
        offset: base + offset,
        message: message.to_string(),
    };
    if let Some(k) = body.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(err(k, "byte outside the printable range 63..=126"));
    }
    let value = |bytes: &[u8]| bytes.iter().fold(0usize, |v, &b| (v << 6) | (b - 63) as usize);
    let (n, start) = match body {
        [] => return Err(err(0, "empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (value(&rest[..6]), 8),
        [126, 126, ..] => return Err(err(2, "truncated 36-bit vertex count")),
        [126, rest @ ..] if rest.len() >= 3 => (value(&rest[..3]), 4),
        [126, ..] => return Err(err(1, "truncated 18-bit vertex count")),
        [b, ..] => ((*b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let data = &body[start..];
    let needed = bits.div_ceil(6);
    if data.len() != needed {
        return Err(err(
            start,
            &format!("expected {needed} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[needed - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err(start + needed - 1, "nonzero padding bits"));
        }
    }
    Graph::from_indices(n, 0, &edges)
}
