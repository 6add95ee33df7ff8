use std::collections::HashMap;

use super::Hypergraph;
use crate::error::{Error, Result};

/// Parses either hypergraph-text or a graph6 string (detected from the
/// first meaningful line).
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with(">>graph6<<") => parse_graph6(l),
        Some(l) if l.split_whitespace().count() == 1 && !l.chars().all(|c| c.is_ascii_digit()) => {
            parse_graph6(l)
        }
        _ => parse_text(text),
    }
}

/// Line-oriented format: header `r n m`, then `m` edge lines; lines
/// starting with `#` are comments.
pub fn parse_text(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::MalformedHeader { line: 1, reason: "empty input".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::MalformedHeader {
            line: hline,
            reason: format!("expected `r n m`, found {} fields", fields.len()),
        });
    }
    let num = |s: &str, what: &str| -> Result<usize> {
        s.parse::<usize>().map_err(|_| Error::MalformedHeader { line: hline, reason: format!("bad {what} {s:?}") })
    };
    let r = num(fields[0], "uniformity")?;
    let n = num(fields[1], "vertex count")?;
    let m = num(fields[2], "edge count")?;
    if r == 0 {
        return Err(Error::MalformedHeader { line: hline, reason: "uniformity must be positive".into() });
    }

    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let mut e = Vec::with_capacity(r);
        for tok in line.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::MalformedEdge { line: lineno, reason: format!("bad vertex {tok:?}") })?;
            if v >= n as u64 {
                return Err(Error::VertexOutOfRange { line: lineno, vertex: v, n });
            }
            e.push(v as u32);
        }
        if e.len() != r {
            return Err(Error::MalformedEdge {
                line: lineno,
                reason: format!("expected {r} vertices, found {}", e.len()),
            });
        }
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedEdge { line: lineno, reason: "repeated vertex".into() });
        }
        if seen.insert(e.clone(), lineno).is_some() {
            return Err(Error::DuplicateEdge { line: lineno, edge: e });
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(Error::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    edges.sort();
    Ok(Hypergraph::from_sorted_unchecked(r, n, edges))
}

/// graph6 decoder (undirected graphs, optional `>>graph6<<` prefix).
pub fn parse_graph6(s: &str) -> Result<Hypergraph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        (bytes[1..4].iter().fold(0, |a, &b| a << 6 | six(b)), &bytes[4..])
    } else if bytes.len() >= 8 {
        (bytes[2..8].iter().fold(0, |a, &b| a << 6 | six(b)), &bytes[8..])
    } else {
        return Err(Error::Graph6("truncated vertex count".into()));
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if rest.len() != need {
        return Err(Error::Graph6(format!("expected {need} data bytes for n = {n}, found {}", rest.len())));
    }
    let bit = |k: usize| (six(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push(vec![i as u32, j as u32]);
            }
            k += 1;
        }
    }
    if (pairs..need * 6).any(bit) {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    edges.sort();
    Ok(Hypergraph::from_sorted_unchecked(2, n, edges))
}

/// graph6 encoder for graphs.
pub fn to_graph6(g: &Hypergraph) -> Result<String> {
    if g.uniformity() != 2 {
        return Err(Error::Precondition("graph6 encodes graphs only".into()));
    }
    let n = g.n_vertices();
    let mut out = Vec::new();
    match n {
        0..=62 => out.push(n as u8 + 63),
        63..=258047 => {
            out.push(126);
            out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        }
        _ => {
            out.extend([126, 126]);
            out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mut bits = vec![false; pairs.div_ceil(6) * 6];
    for e in g.edges() {
        let (i, j) = (e[0] as usize, e[1] as usize);
        bits[j * (j - 1) / 2 + i] = true;
    }
    out.extend(bits.chunks(6).map(|c| c.iter().fold(0u8, |a, &b| a << 1 | b as u8) + 63));
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
