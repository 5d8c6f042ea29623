//! The `regtri 1` text format.
//!
//! ```text
//! regtri 1
//! surface disk
//! vertices 8
//! faces 7
//! f 0 1 2
//! ...
//! layer 0 0 R
//! ```
//!
//! Lines are LF-terminated and `#` starts a comment line. Face records list
//! strictly increasing ids. Optional `layer v k CLS` records follow the faces,
//! with `CLS` one of `A`, `B`, `C` or `R` (root and first layer).

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialSurface, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid surface: {0}")]
    Surface(#[from] ComplexError),
    #[error("header declares a {declared} surface but the faces form a {actual} one")]
    ClosureMismatch {
        declared: &'static str,
        actual: &'static str,
    },
}

/// Per-vertex layer class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    /// Center and first layer.
    Root,
    /// Two neighbors in the previous layer.
    A,
    /// One previous-layer neighbor, which is of class A.
    B,
    /// One previous-layer neighbor, not of class A.
    C,
}

impl VertexClass {
    pub fn symbol(self) -> char {
        match self {
            VertexClass::Root => 'R',
            VertexClass::A => 'A',
            VertexClass::B => 'B',
            VertexClass::C => 'C',
        }
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for VertexClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" => Ok(VertexClass::Root),
            "A" => Ok(VertexClass::A),
            "B" => Ok(VertexClass::B),
            "C" => Ok(VertexClass::C),
            other => Err(format!("unknown layer class {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerRecord {
    pub vertex: Vertex,
    pub layer: usize,
    pub class: VertexClass,
}

/// Parsed contents of a TRI file, before surface validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriDocument {
    pub closed: bool,
    pub vertex_count: usize,
    pub faces: Vec<Face>,
    pub layers: Vec<LayerRecord>,
}

impl TriDocument {
    pub fn from_surface(surface: &SimplicialSurface) -> Self {
        Self {
            closed: surface.is_closed(),
            vertex_count: surface.vertex_count(),
            faces: surface.faces().to_vec(),
            layers: Vec::new(),
        }
    }

    /// Validates the faces and checks the declared closure.
    pub fn to_surface(&self) -> Result<SimplicialSurface, TriError> {
        let s = SimplicialSurface::with_vertex_count(self.vertex_count, &self.faces)?;
        if s.is_closed() != self.closed {
            return Err(TriError::ClosureMismatch {
                declared: closure_word(self.closed),
                actual: closure_word(s.is_closed()),
            });
        }
        Ok(s)
    }

    pub fn parse(text: &str) -> Result<Self, TriError> {
        let mut lines = text
            .split_inclusive('\n')
            .enumerate()
            .map(|(i, raw)| (i + 1, raw))
            .filter(|(_, raw)| !raw.starts_with('#'))
            .peekable();

        let mut next_line = |expect: &str| -> Result<(usize, &str), TriError> {
            match lines.next() {
                None => Err(TriError::Syntax {
                    line: 0,
                    message: format!("unexpected end of input, expected {expect}"),
                }),
                Some((no, raw)) => Ok((no, strip_lf(no, raw)?)),
            }
        };

        let (no, l) = next_line("`regtri 1`")?;
        if l != "regtri 1" {
            return Err(syntax(no, format!("expected `regtri 1`, found {l:?}")));
        }
        let (no, l) = next_line("`surface closed|disk`")?;
        let closed = match l {
            "surface closed" => true,
            "surface disk" => false,
            _ => return Err(syntax(no, format!("expected `surface closed|disk`, found {l:?}"))),
        };
        let (no, l) = next_line("`vertices N`")?;
        let vertex_count = keyword_count(no, l, "vertices")?;
        let (no, l) = next_line("`faces M`")?;
        let face_count = keyword_count(no, l, "faces")?;

        let mut faces = Vec::with_capacity(face_count);
        for _ in 0..face_count {
            let (no, l) = next_line("a face record")?;
            let fields: Vec<&str> = l.split(' ').collect();
            if fields.len() != 4 || fields[0] != "f" {
                return Err(syntax(no, format!("expected `f a b c`, found {l:?}")));
            }
            let a = parse_id(no, fields[1])?;
            let b = parse_id(no, fields[2])?;
            let c = parse_id(no, fields[3])?;
            if !(a < b && b < c) {
                return Err(syntax(no, "face ids must be strictly increasing".into()));
            }
            if c >= vertex_count {
                return Err(syntax(
                    no,
                    format!("vertex {c} out of range (vertices {vertex_count})"),
                ));
            }
            faces.push([a, b, c]);
        }

        let mut layers = Vec::new();
        for (no, raw) in lines {
            let l = strip_lf(no, raw)?;
            let fields: Vec<&str> = l.split(' ').collect();
            if fields.len() != 4 || fields[0] != "layer" {
                return Err(syntax(no, format!("unknown directive {l:?}")));
            }
            let vertex = parse_id(no, fields[1])?;
            if vertex >= vertex_count {
                return Err(syntax(no, format!("vertex {vertex} out of range")));
            }
            let layer = parse_id(no, fields[2])?;
            let class = fields[3].parse().map_err(|m| syntax(no, m))?;
            layers.push(LayerRecord {
                vertex,
                layer,
                class,
            });
        }

        Ok(Self {
            closed,
            vertex_count,
            faces,
            layers,
        })
    }

    /// Serializes with faces and layer records sorted.
    pub fn write(&self) -> String {
        let mut faces = self.faces.clone();
        for f in &mut faces {
            f.sort_unstable();
        }
        faces.sort_unstable();
        let mut layers = self.layers.clone();
        layers.sort_by_key(|r| r.vertex);

        let mut out = String::with_capacity(16 * (faces.len() + layers.len()) + 64);
        out.push_str("regtri 1\n");
        let _ = writeln!(out, "surface {}", closure_word(self.closed));
        let _ = writeln!(out, "vertices {}", self.vertex_count);
        let _ = writeln!(out, "faces {}", faces.len());
        for f in &faces {
            let _ = writeln!(out, "f {} {} {}", f[0], f[1], f[2]);
        }
        for r in &layers {
            let _ = writeln!(out, "layer {} {} {}", r.vertex, r.layer, r.class);
        }
        out
    }
}

fn closure_word(closed: bool) -> &'static str {
    if closed {
        "closed"
    } else {
        "disk"
    }
}

fn syntax(line: usize, message: String) -> TriError {
    TriError::Syntax { line, message }
}

fn strip_lf(no: usize, raw: &str) -> Result<&str, TriError> {
    let l = raw
        .strip_suffix('\n')
        .ok_or_else(|| syntax(no, "missing LF terminator".into()))?;
    if l.ends_with('\r') {
        return Err(syntax(no, "CR before LF".into()));
    }
    Ok(l)
}

fn keyword_count(no: usize, line: &str, keyword: &str) -> Result<usize, TriError> {
    match line.split_once(' ') {
        Some((k, n)) if k == keyword => parse_id(no, n),
        _ => Err(syntax(no, format!("expected `{keyword} N`, found {line:?}"))),
    }
}

fn parse_id(no: usize, s: &str) -> Result<usize, TriError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(no, format!("expected a non-negative integer, found {s:?}")));
    }
    s.parse()
        .map_err(|_| syntax(no, format!("integer {s:?} out of range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str = "regtri 1\nsurface closed\nvertices 4\nfaces 4\nf 0 1 2\nf 0 1 3\nf 0 2 3\nf 1 2 3\n";

    #[test]
    fn parses_and_writes_tetrahedron() {
        let doc = TriDocument::parse(TETRA).unwrap();
        assert!(doc.closed);
        assert_eq!(doc.faces.len(), 4);
        let s = doc.to_surface().unwrap();
        assert!(s.is_closed());
        assert_eq!(TriDocument::from_surface(&s).write(), TETRA);
    }

    #[test]
    fn comments_are_skipped() {
        let text = format!("# made by hand\n{}# trailing\n", TETRA);
        assert_eq!(TriDocument::parse(&text).unwrap().faces.len(), 4);
    }

    #[test]
    fn layer_records() {
        let text = "regtri 1\nsurface disk\nvertices 3\nfaces 1\nf 0 1 2\nlayer 0 0 R\nlayer 1 1 R\nlayer 2 1 R\n";
        let doc = TriDocument::parse(text).unwrap();
        assert_eq!(doc.layers.len(), 3);
        assert_eq!(doc.layers[1].class, VertexClass::Root);
        assert_eq!(doc.write(), text);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("regtri 2\n", 1),
            ("regtri 1\nsurface torus\n", 2),
            ("regtri 1\nsurface closed\nvertices x\n", 3),
            ("regtri 1\nsurface disk\nvertices 3\nfaces 1\nf 0 2 1\n", 5),
            ("regtri 1\nsurface disk\nvertices 3\nfaces 1\nf 0 1 3\n", 5),
            ("regtri 1\nsurface disk\nvertices 3\nfaces 1\nf 0 1 2\nlayer 0 0 Q\n", 6),
            ("regtri 1\nsurface disk\nvertices 3\nfaces 1\nf 0 1 2\ncolor 0 red\n", 6),
            ("regtri 1\r\n", 1),
            ("regtri 1\nsurface disk\nvertices 3\nfaces 1\nf 0 1 2", 5),
        ];
        for (text, line) in cases {
            match TriDocument::parse(text) {
                Err(TriError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn truncated_face_list() {
        let err = TriDocument::parse("regtri 1\nsurface disk\nvertices 3\nfaces 2\nf 0 1 2\n")
            .unwrap_err();
        assert!(matches!(err, TriError::Syntax { .. }));
    }

    #[test]
    fn closure_must_match() {
        let text = TETRA.replace("surface closed", "surface disk");
        let doc = TriDocument::parse(&text).unwrap();
        assert!(matches!(
            doc.to_surface(),
            Err(TriError::ClosureMismatch { .. })
        ));
    }
}
