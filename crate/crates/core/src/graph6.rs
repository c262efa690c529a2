//! graph6 encoding, as produced by `geng` and friends.
//!
//! Vertex count `N(n)`: one byte `n + 63` for `n <= 62`, `126` followed by
//! three 6-bit groups for `n <= 258047`, else `126 126` and six groups. The
//! body lists the upper triangle column by column (`x01, x02, x12, x03, ...`),
//! six bits per byte, most significant first, each byte offset by 63 and the
//! last one zero-padded.

use crate::error::{Error, Result};
use crate::graph::{Builder, Graph};

const HEADER: &str = ">>graph6<<";
const MAX_N: u64 = 68_719_476_735;

fn bad(msg: impl Into<String>) -> Error {
    Error::BadGraph6(msg.into())
}

fn push_groups(out: &mut Vec<u8>, value: u64, groups: u32) {
    for k in (0..groups).rev() {
        out.push(((value >> (6 * k)) & 63) as u8 + 63);
    }
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_groups(&mut out, n as u64, 3);
    } else {
        out.extend([126, 126]);
        push_groups(&mut out, n as u64, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn group(byte: u8) -> Result<u64> {
    if !(63..=126).contains(&byte) {
        return Err(bad(format!("byte {byte} outside 63..=126")));
    }
    Ok((byte - 63) as u64)
}

/// Parses one graph6 record. An optional `>>graph6<<` header and trailing
/// line terminator are accepted.
pub fn parse_graph6(input: &[u8]) -> Result<Graph> {
    let mut bytes = input.strip_prefix(HEADER.as_bytes()).unwrap_or(input);
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated vertex count"));
            }
            let mut n = 0u64;
            for &b in &rest[..6] {
                n = n << 6 | group(b)?;
            }
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated vertex count"));
            }
            let mut n = 0u64;
            for &b in &rest[..3] {
                n = n << 6 | group(b)?;
            }
            (n, &rest[3..])
        }
        [first, rest @ ..] => (group(*first)?, rest),
    };
    if n == 0 {
        return Err(bad("graph has no vertices"));
    }
    if n > MAX_N {
        return Err(bad("vertex count too large"));
    }
    let n = usize::try_from(n).map_err(|_| bad("vertex count too large"))?;
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(bad(format!("body has {} bytes, expected {expected} for n = {n}", body.len())));
    }
    let mut b = Builder::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = group(body[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = group(body[expected - 1])?;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(bad("nonzero padding bits"));
        }
    }
    // validate every body byte even when n < 2 leaves nothing to decode
    for &byte in body {
        group(byte)?;
    }
    Ok(b.build())
}

/// Parses a stream with one graph6 record per line; blank lines are skipped.
/// Errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> std::result::Result<Vec<Graph>, (usize, Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim().as_bytes()).map_err(|e| (i + 1, e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k2_is_a_underscore() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(write_graph6(&k2), "A_");
        assert_eq!(parse_graph6(b"A_").unwrap(), k2);
        assert_eq!(parse_graph6(b">>graph6<<A_\n").unwrap(), k2);
    }

    #[test]
    fn reference_strings() {
        // Hand-encoded: C4 on 0-1-2-3-0 has x01=1 x02=0 x12=1 x03=1 x13=0 x23=1 -> 101101.
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(write_graph6(&c4), format!("C{}", (0b101101u8 + 63) as char));
        // the path/edge example from petgraph's tests: edges a-c a-e b-d d-e on 5 vertices
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6(b"DQc").unwrap(), g);
        assert_eq!(write_graph6(&Graph::from_edge_list(1, &[]).unwrap()), "@");
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_graph6(b"A\x20"), Err(Error::BadGraph6(_))));
        assert!(matches!(parse_graph6(b"A"), Err(Error::BadGraph6(_))));
        assert!(matches!(parse_graph6(b"A__"), Err(Error::BadGraph6(_))));
        assert!(matches!(parse_graph6(b""), Err(Error::BadGraph6(_))));
        assert!(matches!(parse_graph6(b"?"), Err(Error::BadGraph6(_))));
        // 'A' with padding bit set (x01 then five padding bits)
        assert!(matches!(parse_graph6(b"A`"), Err(Error::BadGraph6(_))));
        assert!(matches!(parse_graph6(b"~??"), Err(Error::BadGraph6(_))));
    }

    #[test]
    fn multi_byte_vertex_count() {
        let n = 70;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edge_list(n, &edges).unwrap();
        let s = write_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 69]);
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn line_stream() {
        let graphs = parse_graph6_lines("A_\n\nC~\n").unwrap();
        assert_eq!(graphs.len(), 2);
        assert!(graphs[1].is_complete());
        assert_eq!(parse_graph6_lines("A_\nB!\n").unwrap_err().0, 2);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=20, seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut edges = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state & 1 == 1 {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let back = parse_graph6(write_graph6(&g).as_bytes()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
