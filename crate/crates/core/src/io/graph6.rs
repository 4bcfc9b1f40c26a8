//! graph6 encoding as used by nauty/geng.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = (1 << 36) - 1;

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        format: "graph6",
        offset,
        message: message.into(),
    }
}

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= MAX_ORDER, "graph too large for graph6");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_order(&mut out, n);
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and trailing
/// line break are accepted; everything else must be canonical.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    if text.starts_with(HEADER) {
        pos = HEADER.len();
    }
    let mut end = bytes.len();
    while end > pos && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &bytes[..end];
    if let Some(i) = body[pos..].iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(
            pos + i,
            format!("byte {:#04x} outside 63..=126", body[pos + i]),
        ));
    }
    let (n, mut pos) = read_order(body, pos)?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let have = body.len() - pos;
    if have != need {
        return Err(err(
            pos + have.min(need),
            format!("expected {need} adjacency bytes for n = {n}, found {have}"),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        pos += need - 1;
        let pad = 6 - bits % 6;
        if (body[pos] - 63) & ((1 << pad) - 1) != 0 {
            return Err(err(pos, "non-zero padding bits"));
        }
    }
    Graph::new(n, edges)
}

fn read_order(body: &[u8], pos: usize) -> Result<(usize, usize)> {
    let get = |i: usize| -> Result<usize> {
        body.get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| err(i, "truncated vertex count"))
    };
    let first = *body.get(pos).ok_or_else(|| err(pos, "empty input"))?;
    if first != 126 {
        return Ok(((first - 63) as usize, pos + 1));
    }
    if body.get(pos + 1) != Some(&126) {
        let n = (pos + 1..pos + 4).try_fold(0, |acc, i| Ok::<_, Error>(acc << 6 | get(i)?))?;
        if n <= 62 {
            return Err(err(pos, format!("non-canonical vertex count {n}")));
        }
        return Ok((n, pos + 4));
    }
    let n = (pos + 2..pos + 8).try_fold(0, |acc, i| Ok::<_, Error>(acc << 6 | get(i)?))?;
    if n <= 258_047 {
        return Err(err(pos, format!("non-canonical vertex count {n}")));
    }
    Ok((n, pos + 8))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        // hand-computed from the upper-triangle column order
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(to_graph6(&Graph::complete(2)), "A_");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::path(3)), "Bg");
        assert_eq!(to_graph6(&Graph::cycle(4)), "Cl");
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        // example from the format description: 5 vertices, edges 02 04 13 34
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn large_order_prefix() {
        let g = Graph::empty(63);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(from_graph6(&s).unwrap(), g);
        let g = Graph::path(300);
        assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap(), Graph::complete(4));
    }

    #[test]
    fn malformed_input_reports_offsets() {
        assert!(matches!(
            from_graph6(""),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            from_graph6("C~~"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            from_graph6("C"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            from_graph6("C\x20"),
            Err(Error::Parse { offset: 1, .. })
        ));
        // n = 2 has one bit; a set padding bit is rejected
        assert!(matches!(
            from_graph6("A`"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            from_graph6("~??A"),
            Err(Error::Parse { offset: 0, .. })
        ));
    }
}
