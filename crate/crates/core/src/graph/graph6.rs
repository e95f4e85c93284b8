//! graph6 interchange.
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix,
//! column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed
//! big-endian six bits per byte, each byte offset by 63. Orders up to 62
//! use one header byte; larger orders use `~` and three bytes.

use std::io::{BufRead, Write};

use super::{bit, Graph, MAX_ORDER};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn emit(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(4 + (n * (n - 1) / 2).div_ceil(6));
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.row(j);
        for i in 0..j {
            acc = (acc << 1) | ((row >> i) & 1) as u8;
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

pub fn parse(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!("byte {} at offset {pos} is not printable graph6", bytes[pos])));
    }
    let (n, body) = if bytes[0] != b'~' {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return Err(Error::Graph6("eight-byte header exceeds the supported order".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated header".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Graph6(format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let expected = (n * (n - 1) / 2).div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "bit field has {} bytes, expected {expected} for order {n}",
            body.len()
        )));
    }
    let mut rows = vec![0u64; n];
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if (byte >> (5 - idx % 6)) & 1 == 1 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            idx += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Reads one graph per non-empty line.
pub fn read_all<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse(line).map_err(|e| Error::Graph6(format!("line {}: {e}", lineno + 1)))?);
    }
    Ok(out)
}

/// Writes one graph per line, LF-terminated.
pub fn write_all<'a, W: Write>(mut writer: W, graphs: impl IntoIterator<Item = &'a Graph>) -> Result<()> {
    for g in graphs {
        writer.write_all(emit(g).as_bytes())?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
