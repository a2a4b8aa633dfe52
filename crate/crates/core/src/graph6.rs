//! graph6 text encoding of undirected graphs.
//!
//! Bit-exact per the published convention: the upper triangle of the
//! adjacency matrix is read column by column (x(0,1), x(0,2), x(1,2),
//! x(0,3), ...), packed into 6-bit groups most significant bit first, padded
//! with zeros, and each group is offset by 63 into printable ASCII. Orders
//! up to 62 use a single header byte `n+63`; orders 63 and 64 use the `~`
//! header followed by three 6-bit digits.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("graph6 order {0} is outside the supported range 1..={MAX_ORDER}")]
    UnsupportedOrder(usize),
    #[error("truncated graph6 header")]
    TruncatedHeader,
    #[error("graph6 body has {got} bytes, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid graph6 byte {byte:#04x} at position {pos}")]
    InvalidByte { pos: usize, byte: u8 },
    #[error("nonzero padding bits in final graph6 byte")]
    TrailingBits,
}

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Encodes a graph as a graph6 string.
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        // Three 6-bit digits, most significant first.
        out.push(b'~');
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    debug_assert_eq!(out.len(), if n <= 62 { 1 } else { 4 } + body_len(n));
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 string.
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\r', '\n']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let sixbit = |pos: usize| -> Result<u64, Graph6Error> {
        let byte = bytes[pos];
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { pos, byte });
        }
        Ok(u64::from(byte - 63))
    };

    let (n, body_start) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            // 8-byte header form: orders beyond 258047, never representable here.
            return Err(Graph6Error::UnsupportedOrder(usize::MAX));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader);
        }
        let n = (sixbit(1)? << 12) | (sixbit(2)? << 6) | sixbit(3)?;
        (n as usize, 4)
    } else {
        (sixbit(0)? as usize, 1)
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }

    let expected = body_len(n);
    let got = bytes.len() - body_start;
    if got != expected {
        return Err(Graph6Error::LengthMismatch { expected, got });
    }

    let mut adj = vec![0u64; n];
    let mut pos = body_start;
    let mut group = 0u64;
    let mut remaining = 0u8;
    for j in 1..n {
        for i in 0..j {
            if remaining == 0 {
                group = sixbit(pos)?;
                pos += 1;
                remaining = 6;
            }
            remaining -= 1;
            if (group >> remaining) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    if remaining > 0 && group & ((1 << remaining) - 1) != 0 {
        return Err(Graph6Error::TrailingBits);
    }
    Ok(Graph::from_adj_unchecked(adj))
}
