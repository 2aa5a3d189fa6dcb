//! Text formats: graph6 (short form, up to 62 vertices) for graphs and a small
//! JSON schema for hypergraphs.
//!
//! ```text
//! {"n":3,"p":3,"edges":[[0,1,2]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{Host, Hypergraph};

/// Largest order the short graph6 header can express.
pub const GRAPH6_MAX_ORDER: usize = 62;

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::TooManyVertices { what: "graph6 short form", got: n, max: GRAPH6_MAX_ORDER });
    }
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(n as u8 + 63);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let bytes = text.strip_suffix('\r').unwrap_or(text).as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(Error::parse(0, "empty graph6 string"));
    };
    if head == 126 {
        return Err(Error::parse(0, "long-form graph6 header (n > 62) is not supported"));
    }
    if !(63..126).contains(&head) {
        return Err(Error::parse(0, format!("invalid graph6 header byte {head}")));
    }
    let n = (head - 63) as usize;
    let slots = n * n.saturating_sub(1) / 2;
    let expected = 1 + slots.div_ceil(6);
    if bytes.len() < expected {
        return Err(Error::parse(bytes.len(), format!("truncated graph6: expected {expected} bytes for n={n}")));
    }
    if bytes.len() > expected {
        return Err(Error::parse(expected, format!("trailing data after {expected} bytes")));
    }
    for (offset, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(offset, format!("byte {b} outside the graph6 range 63..=126")));
        }
    }
    let bit_at = |k: usize| -> bool {
        let b = bytes[1 + k / 6] - 63;
        b >> (5 - k % 6) & 1 == 1
    };
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit_at(k) {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    for pad in slots..(expected - 1) * 6 {
        if bit_at(pad) {
            return Err(Error::parse(expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphJson {
    n: usize,
    p: usize,
    edges: Vec<Vec<usize>>,
}

pub fn to_hjson(h: &Hypergraph) -> String {
    let doc = HypergraphJson { n: h.order(), p: h.uniformity(), edges: h.edge_lists() };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// Byte offset of a serde_json error position (1-based line and column).
pub(crate) fn json_offset(text: &str, err: &serde_json::Error) -> usize {
    let (line, col) = (err.line(), err.column());
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + col.saturating_sub(1)).min(text.len())
}

/// Byte offsets of the elements of the top-level array stored under `key`,
/// for a document already known to be valid JSON made of integers and
/// arrays below that key.
pub(crate) fn array_element_offsets(text: &str, key: &str) -> Vec<usize> {
    let needle = format!("\"{key}\"");
    let Some(k) = text.find(&needle) else {
        return Vec::new();
    };
    let bytes = text.as_bytes();
    let Some(open) = text[k + needle.len()..].find('[').map(|i| i + k + needle.len()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut depth = 0;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        match b {
            b'[' => {
                depth += 1;
                if depth == 2 {
                    out.push(i);
                }
            }
            b']' => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
    }
    out
}

pub fn from_hjson(text: &str) -> Result<Hypergraph> {
    let doc: HypergraphJson = serde_json::from_str(text).map_err(|e| Error::parse(json_offset(text, &e), e.to_string()))?;
    let offsets = array_element_offsets(text, "edges");
    let at = |i: usize| offsets.get(i).copied().unwrap_or(0);
    if doc.p < 2 {
        return Err(Error::parse(text.find("\"p\"").unwrap_or(0), format!("uniformity {} < 2", doc.p)));
    }
    if doc.n > crate::bits::MAX_VERTICES {
        return Err(Error::parse(text.find("\"n\"").unwrap_or(0), format!("n = {} exceeds 64", doc.n)));
    }
    let mut masks = Vec::with_capacity(doc.edges.len());
    let mut seen = std::collections::HashSet::new();
    for (i, e) in doc.edges.iter().enumerate() {
        if e.len() != doc.p {
            return Err(Error::parse(at(i), format!("edge {e:?} does not have {} vertices", doc.p)));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= doc.n) {
            return Err(Error::parse(at(i), format!("vertex {v} out of range for n = {}", doc.n)));
        }
        let m = crate::bits::from_slice(e);
        if crate::bits::size(m) != e.len() {
            return Err(Error::parse(at(i), format!("edge {e:?} repeats a vertex")));
        }
        if !seen.insert(m) {
            return Err(Error::parse(at(i), format!("duplicate edge {e:?}")));
        }
        masks.push(m);
    }
    Hypergraph::new(doc.n, doc.p, masks)
}

/// Graph6 or hypergraph JSON, told apart by the first non-blank byte.
pub fn parse_any(text: &str) -> Result<Hypergraph> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        from_hjson(trimmed)
    } else {
        Hypergraph::from_graph(&from_graph6(trimmed)?)
    }
}

/// Graph6 for 2-graphs, JSON otherwise.
pub fn emit_any(h: &Hypergraph) -> Result<String> {
    if h.uniformity() == 2 && h.order() <= GRAPH6_MAX_ORDER {
        to_graph6(&h.to_graph()?)
    } else {
        Ok(to_hjson(h))
    }
}
