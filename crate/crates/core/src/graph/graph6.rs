//! graph6 text encoding.
//!
//! A size prefix (`n + 63` for `n <= 62`, otherwise `~` followed by three
//! 6-bit groups) is followed by the upper triangle of the adjacency matrix in
//! column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, zero padded to a
//! multiple of six bits, each group written as `value + 63`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Graph, MAX_VERTICES};

pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 text")]
    Empty,
    #[error("byte {byte:#04x} at position {pos} is outside 63..=126")]
    InvalidCharacter { pos: usize, byte: u8 },
    #[error("graph6 body too short: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage starting at position {pos}")]
    TrailingGarbage { pos: usize },
    #[error("graph6 vertex count {0} unsupported (must be 1..=64)")]
    VertexCount(u64),
    #[error("non-zero padding bits in the final byte")]
    NonZeroPadding,
    #[error("size prefix uses the long form for n = {0}")]
    NonMinimalSize(u64),
}

/// Validated graph6 text (no header, no line terminator).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Graph6Text(String);

impl Graph6Text {
    pub fn new(text: impl Into<String>) -> Result<Self, Graph6Error> {
        let text = text.into();
        let stripped = text.strip_prefix(HEADER).unwrap_or(&text).to_string();
        decode(stripped.as_bytes())?;
        Ok(Graph6Text(stripped))
    }

    pub(crate) fn from_trusted(text: String) -> Self {
        Graph6Text(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn parse(&self) -> Result<Graph, Graph6Error> {
        decode(self.0.as_bytes())
    }
}

impl TryFrom<String> for Graph6Text {
    type Error = Graph6Error;
    fn try_from(s: String) -> Result<Self, Graph6Error> {
        Graph6Text::new(s)
    }
}

impl From<Graph6Text> for String {
    fn from(t: Graph6Text) -> String {
        t.0
    }
}

impl FromStr for Graph6Text {
    type Err = Graph6Error;
    fn from_str(s: &str) -> Result<Self, Graph6Error> {
        Graph6Text::new(s)
    }
}

impl fmt::Display for Graph6Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Graph6Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph6Text({:?})", self.0)
    }
}

/// Decode graph6 text, accepting an optional `>>graph6<<` header.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    decode(text.strip_prefix(HEADER).unwrap_or(text).as_bytes())
}

pub fn to_graph6(g: &Graph) -> Graph6Text {
    Graph6Text(encode_bits(g.n(), g))
}

pub(crate) fn encode_bits(n: usize, g: &Graph) -> String {
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + bits.div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.rows()[j];
        for i in 0..j {
            acc = (acc << 1) | ((row >> i) & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn decode(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let sixbits = |pos: usize| -> Result<u64, Graph6Error> {
        match bytes.get(pos) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
            Some(&b) => Err(Graph6Error::InvalidCharacter { pos, byte: b }),
            None => Err(Graph6Error::Truncated {
                expected: pos + 1,
                found: bytes.len(),
            }),
        }
    };
    let (n, body_start) = if bytes[0] != 126 {
        (sixbits(0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        let n = (sixbits(1)? << 12) | (sixbits(2)? << 6) | sixbits(3)?;
        if n <= 62 {
            return Err(Graph6Error::NonMinimalSize(n));
        }
        (n, 4)
    } else {
        let mut n = 0u64;
        for pos in 2..8 {
            n = (n << 6) | sixbits(pos)?;
        }
        return Err(Graph6Error::VertexCount(n));
    };
    if n == 0 || n > MAX_VERTICES as u64 {
        return Err(Graph6Error::VertexCount(n));
    }
    let n = n as usize;
    let bits = n * (n - 1) / 2;
    let body_len = bits.div_ceil(6);
    let body_end = body_start + body_len;
    if bytes.len() < body_end {
        // still report bad characters first
        for pos in body_start..bytes.len() {
            sixbits(pos)?;
        }
        return Err(Graph6Error::Truncated {
            expected: body_end,
            found: bytes.len(),
        });
    }
    if bytes.len() > body_end {
        return Err(Graph6Error::TrailingGarbage { pos: body_end });
    }
    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = sixbits(body_start + k / 6)?;
            if (group >> (5 - k % 6)) & 1 == 1 {
                rows[i] |= 1u64 << j;
                rows[j] |= 1u64 << i;
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) {
        let last = sixbits(body_end - 1)?;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}
