//! graph6 encoding.
//!
//! A graph6 string is `N(n) R(x)` where every byte is a 6-bit value plus 63:
//!
//! * `N(n)`: one byte `n + 63` for `n <= 62`; for `63 <= n <= 258047` the
//!   byte `126` followed by `n` as three 6-bit groups, big-endian; above
//!   that two `126` bytes followed by six groups (36 bits).
//! * `R(x)`: the upper triangle of the adjacency matrix in column-major
//!   order, `x(0,1), x(0,2), x(1,2), x(0,3), x(1,3), x(2,3), ...`, packed six
//!   bits per byte, most significant bit first, zero-padded to a multiple of
//!   six.
//!
//! An optional `>>graph6<<` prefix is accepted when decoding.

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder};

const BIAS: u8 = 63;
const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 input")]
    Empty,
    #[error("byte {value:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, value: u8 },
    #[error("truncated input: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage starting at offset {offset}")]
    Trailing { offset: usize },
    #[error("padding bits set in the final byte at offset {offset}")]
    Padding { offset: usize },
}

impl Graph6Error {
    /// Byte offset the error points at.
    pub fn offset(&self) -> usize {
        match *self {
            Graph6Error::BadByte { offset, .. }
            | Graph6Error::Trailing { offset }
            | Graph6Error::Padding { offset } => offset,
            Graph6Error::Truncated { found, .. } => found,
            Graph6Error::Empty => 0,
        }
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    let groups = if n <= 62 {
        out.push(n as u8 + BIAS);
        return;
    } else if n <= 258_047 {
        out.push(126);
        3
    } else {
        out.extend_from_slice(&[126, 126]);
        6
    };
    for g in (0..groups).rev() {
        out.push(((n >> (6 * g)) & 0x3f) as u8 + BIAS);
    }
}

pub fn to_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n_vertices();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

pub fn to_graph6_string(g: &Graph) -> String {
    String::from_utf8(to_graph6(g)).expect("graph6 is printable ASCII")
}

pub fn from_graph6(input: &[u8]) -> Result<Graph, Graph6Error> {
    let body_start = if input.starts_with(HEADER) { HEADER.len() } else { 0 };
    let data = &input[body_start..];
    let value = |i: usize| -> Result<u8, Graph6Error> {
        match data.get(i) {
            None => Err(Graph6Error::Truncated { expected: i + 1, found: body_start + data.len() }),
            Some(&b) if (BIAS..=126).contains(&b) => Ok(b - BIAS),
            Some(&b) => Err(Graph6Error::BadByte { offset: body_start + i, value: b }),
        }
    };
    if data.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, mut pos) = if data[0] != 126 {
        (value(0)? as usize, 1)
    } else if data.get(1) != Some(&126) {
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | value(i)? as usize;
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for i in 2..8 {
            n = (n << 6) | value(i)? as usize;
        }
        (n, 8)
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let body_len = pairs.div_ceil(6);
    let expected = pos + body_len;
    if data.len() < expected {
        return Err(Graph6Error::Truncated { expected: body_start + expected, found: body_start + data.len() });
    }
    if data.len() > expected {
        return Err(Graph6Error::Trailing { offset: body_start + expected });
    }
    let mut b = GraphBuilder::new(n);
    let mut bit = 0usize;
    let mut cur = 0u8;
    for v in 1..n {
        for u in 0..v {
            if bit.is_multiple_of(6) {
                cur = value(pos)?;
                pos += 1;
            }
            if cur >> (5 - bit % 6) & 1 == 1 {
                b.insert(u, v);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let used = bit % 6;
        if cur & ((1 << (6 - used)) - 1) != 0 {
            return Err(Graph6Error::Padding { offset: body_start + pos - 1 });
        }
    }
    Ok(b.build())
}

pub fn from_graph6_str(s: &str) -> Result<Graph, Graph6Error> {
    from_graph6(s.as_bytes())
}
