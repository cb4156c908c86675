//! File formats: planar_code, rotation text and DOT.
//!
//! planar_code is the binary format used by plantri: the header
//! `>>planar_code<<`, then per graph one byte `n` followed by each vertex's
//! rotation as 1-based neighbour ids, each rotation closed by a zero. Graphs
//! with 256 or more vertices use plantri's wide form: a zero byte, then `n`
//! and every entry as little-endian `u16`.
//!
//! Rotation text has one line per vertex, `v: w1 w2 ...` with 0-based ids;
//! `#` starts a comment, an optional `outer: u v` line names a dart of the
//! outer face, and a line `---` separates graphs.

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::plane::PlaneGraph;

pub const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

/// Body of one graph, without the file header.
pub fn planar_code_entry(g: &PlaneGraph) -> Vec<u8> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n < 256 {
        out.push(n as u8);
        for v in 0..n {
            out.extend(g.neighbors(v).iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    } else {
        out.push(0);
        out.extend_from_slice(&(n as u16).to_le_bytes());
        for v in 0..n {
            for &w in g.neighbors(v) {
                out.extend_from_slice(&((w + 1) as u16).to_le_bytes());
            }
            out.extend_from_slice(&0u16.to_le_bytes());
        }
    }
    out
}

/// A complete planar_code file.
pub fn to_planar_code<'a>(graphs: impl IntoIterator<Item = &'a PlaneGraph>) -> Vec<u8> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for g in graphs {
        out.extend(planar_code_entry(g));
    }
    out
}

/// Streams graphs to a writer, emitting the header first.
pub struct PlanarCodeWriter<W: Write> {
    inner: W,
    written: usize,
}

impl<W: Write> PlanarCodeWriter<W> {
    pub fn new(mut inner: W) -> Result<Self> {
        inner.write_all(PLANAR_CODE_HEADER)?;
        Ok(PlanarCodeWriter { inner, written: 0 })
    }

    pub fn write(&mut self, g: &PlaneGraph) -> Result<()> {
        self.inner.write_all(&planar_code_entry(g))?;
        self.written += 1;
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.written
    }

    pub fn finish(mut self) -> Result<W> {
        self.inner.flush()?;
        Ok(self.inner)
    }
}

fn parse_entries(body: &[u8]) -> Result<Vec<PlaneGraph>> {
    let mut graphs = Vec::new();
    let mut pos = 0;
    let truncated = || Error::Parse("truncated planar_code".into());
    while pos < body.len() {
        let wide = body[pos] == 0;
        let n;
        if wide {
            let b = body.get(pos + 1..pos + 3).ok_or_else(truncated)?;
            n = u16::from_le_bytes([b[0], b[1]]) as usize;
            pos += 3;
        } else {
            n = body[pos] as usize;
            pos += 1;
        }
        let mut rot = vec![Vec::new(); n];
        for r in rot.iter_mut() {
            loop {
                let x = if wide {
                    let b = body.get(pos..pos + 2).ok_or_else(truncated)?;
                    pos += 2;
                    u16::from_le_bytes([b[0], b[1]]) as usize
                } else {
                    let b = *body.get(pos).ok_or_else(truncated)?;
                    pos += 1;
                    b as usize
                };
                if x == 0 {
                    break;
                }
                if x > n {
                    return Err(Error::Parse(format!("neighbour {x} out of range for n={n}")));
                }
                r.push(x - 1);
            }
        }
        graphs.push(PlaneGraph::build(rot, None)?);
    }
    Ok(graphs)
}

pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>> {
    let body = bytes
        .strip_prefix(PLANAR_CODE_HEADER)
        .ok_or_else(|| Error::Parse("missing >>planar_code<< header".into()))?;
    parse_entries(body)
}

pub fn read_planar_code_from<R: Read>(mut r: R) -> Result<Vec<PlaneGraph>> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    read_planar_code(&buf)
}

pub fn to_rotation_text(g: &PlaneGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# n={} e={} f={}", g.vertex_count(), g.edge_count(), g.face_count());
    for v in 0..g.vertex_count() {
        let ns: Vec<String> = g.neighbors(v).iter().map(|w| w.to_string()).collect();
        let _ = writeln!(s, "{v}: {}", ns.join(" "));
    }
    if let Some(f) = g.outer_face() {
        let (u, v) = g.face(f).unwrap().walk[0];
        let _ = writeln!(s, "outer: {u} {v}");
    }
    s
}

pub fn parse_rotation_text(text: &str) -> Result<Vec<PlaneGraph>> {
    let mut graphs = Vec::new();
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut outer = None;
    let bad = |line: &str| Error::Parse(format!("bad rotation line {line:?}"));
    let flush = |rows: &mut Vec<(usize, Vec<usize>)>, outer: &mut Option<(usize, usize)>, graphs: &mut Vec<PlaneGraph>| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let n = rows.iter().map(|(v, _)| v + 1).max().unwrap_or(0);
        let mut rot = vec![Vec::new(); n];
        for (v, r) in rows.drain(..) {
            rot[v] = r;
        }
        graphs.push(PlaneGraph::build(rot, outer.take())?);
        Ok(())
    };
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if line == "---" {
            flush(&mut rows, &mut outer, &mut graphs)?;
            continue;
        }
        let (head, tail) = line.split_once(':').ok_or_else(|| bad(raw))?;
        let nums = tail
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| bad(raw)))
            .collect::<Result<Vec<_>>>()?;
        if head.trim() == "outer" {
            match nums.as_slice() {
                [u, v] => outer = Some((*u, *v)),
                _ => return Err(bad(raw)),
            }
        } else {
            let v = head.trim().parse::<usize>().map_err(|_| bad(raw))?;
            rows.push((v, nums));
        }
    }
    flush(&mut rows, &mut outer, &mut graphs)?;
    Ok(graphs)
}

/// Reads planar_code when the header is present, rotation text otherwise.
pub fn read_graphs(bytes: &[u8]) -> Result<Vec<PlaneGraph>> {
    if bytes.starts_with(PLANAR_CODE_HEADER) {
        read_planar_code(bytes)
    } else {
        let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse("input is neither planar_code nor UTF-8 text".into()))?;
        parse_rotation_text(text)
    }
}

/// Undirected DOT; face boundaries and the outer face are listed as comments.
pub fn to_dot(g: &PlaneGraph, name: &str) -> String {
    let mut s = String::new();
    let p = g.profile();
    let _ = writeln!(s, "// n={} e={}", g.vertex_count(), g.edge_count());
    let sizes: Vec<String> = p.f_counts.iter().map(|(k, c)| format!("f{k}={c}")).collect();
    let _ = writeln!(s, "// faces: {}", sizes.join(" "));
    for f in g.faces() {
        let vs: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
        let tag = if g.is_outer(f.id) { " outer" } else { "" };
        let _ = writeln!(s, "// face {} size {}{tag}: {}", f.id, f.size(), vs.join(" "));
    }
    let _ = writeln!(s, "graph {name} {{");
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cuboctahedron, fan_family, icosahedron, k4};

    #[test]
    fn planar_code_round_trip() {
        let gs = vec![k4(), icosahedron(), cuboctahedron()];
        let bytes = to_planar_code(&gs);
        assert!(bytes.starts_with(b">>planar_code<<"));
        assert_eq!(bytes[15], 4);
        let back = read_planar_code(&bytes).unwrap();
        assert_eq!(to_planar_code(&back), bytes);
        assert_eq!(back[1].rotations(), icosahedron().rotations());
    }

    #[test]
    fn wide_planar_code() {
        let g = fan_family(2, 5).unwrap();
        assert!(g.vertex_count() >= 256);
        let bytes = to_planar_code([&g]);
        let back = read_planar_code(&bytes).unwrap();
        assert_eq!(back[0].rotations(), g.rotations());
    }

    #[test]
    fn rotation_text_round_trip() {
        let g = cuboctahedron();
        let text = to_rotation_text(&g);
        let back = parse_rotation_text(&format!("{text}---\n{text}")).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0], g);
        assert!(parse_rotation_text("0 1 2").is_err());
    }

    #[test]
    fn truncated_input_is_rejected() {
        let mut bytes = to_planar_code([&k4()]);
        bytes.pop();
        assert!(read_planar_code(&bytes).is_err());
        assert!(read_planar_code(b"nope").is_err());
    }

    #[test]
    fn dot_lists_faces() {
        let d = to_dot(&k4(), "k4");
        assert!(d.contains("// n=4 e=6"));
        assert_eq!(d.matches(" -- ").count(), 6);
        assert_eq!(d.matches("// face ").count(), 4);
    }
}
