//! Text formats: instances, pairs files and genealogy dumps.
//!
//! ```text
//! n m
//! v deg u_1 ... u_deg        (n lines, neighbors counterclockwise)
//! outer r w_1 ... w_r        (external face, clockwise)
//! coords                     (optional, then `v x y` per vertex)
//! weights                    (optional, then `u v w` per edge)
//! ```
//!
//! Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use ncsp_core::{EmbeddingError, GenealogyTree, NormalizedInstance, PlanarEmbedding, RotationOrder, Vertex};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error("invalid embedding: {0}")]
    Embedding(#[from] EmbeddingError),
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// An instance file as written, before validation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Instance {
    /// Neighbor lists, counterclockwise unless read with `--cw-rotations`.
    pub rotations: Vec<Vec<Vertex>>,
    pub outer: Vec<Vertex>,
    pub coords: Option<Vec<(f64, f64)>>,
    /// `(u, v, w)` per edge.
    pub weights: Option<Vec<(Vertex, Vertex, i64)>>,
    pub order: RotationOrder,
}

impl Instance {
    pub fn num_edges(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn embed(&self) -> Result<PlanarEmbedding, EmbeddingError> {
        PlanarEmbedding::build(&self.rotations, &self.outer, self.order)
    }
}

/// Numbered non-empty lines with comments stripped.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    peeked: Option<(usize, Vec<&'a str>)>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), peeked: None }
    }

    fn peek(&mut self) -> Option<&(usize, Vec<&'a str>)> {
        if self.peeked.is_none() {
            for (i, raw) in self.inner.by_ref() {
                let body = raw.split('#').next().unwrap_or("");
                let words: Vec<&str> = body.split_whitespace().collect();
                if !words.is_empty() {
                    self.peeked = Some((i + 1, words));
                    break;
                }
            }
        }
        self.peeked.as_ref()
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, Vec<&'a str>), FormatError> {
        self.peek();
        self.peeked.take().ok_or(FormatError::Truncated(what))
    }
}

fn num<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T, FormatError> {
    word.parse().map_err(|_| err(line, format!("bad {what} `{word}`")))
}

fn vertex(line: usize, word: &str, n: usize) -> Result<Vertex, FormatError> {
    let v: Vertex = num(line, word, "vertex id")?;
    if v as usize >= n {
        return Err(err(line, format!("vertex {v} out of range 0..{n}")));
    }
    Ok(v)
}

pub fn parse_instance(text: &str, order: RotationOrder) -> Result<Instance, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, w) = lines.next("header `n m`")?;
    if w.len() != 2 {
        return Err(err(ln, "expected `n m`"));
    }
    let n: usize = num(ln, w[0], "vertex count")?;
    let m: usize = num(ln, w[1], "edge count")?;

    let mut rotations = vec![Vec::new(); n];
    for v in 0..n {
        let (ln, w) = lines.next("rotation lines")?;
        let id: usize = num(ln, w[0], "vertex id")?;
        if id != v {
            return Err(err(ln, format!("expected rotation of vertex {v}, found {id}")));
        }
        let deg: usize = num(ln, w.get(1).copied().unwrap_or(""), "degree")?;
        if w.len() != deg + 2 {
            return Err(err(ln, format!("degree {deg} but {} neighbors listed", w.len().saturating_sub(2))));
        }
        rotations[v] = w[2..].iter().map(|s| vertex(ln, s, n)).collect::<Result<_, _>>()?;
    }
    let listed: usize = rotations.iter().map(Vec::len).sum();
    if listed != 2 * m {
        return Err(err(ln, format!("header says {m} edges, rotations list {listed} incidences")));
    }

    let (ln, w) = lines.next("`outer` line")?;
    if w[0] != "outer" || w.len() < 2 {
        return Err(err(ln, "expected `outer r w_1 ... w_r`"));
    }
    let r: usize = num(ln, w[1], "boundary length")?;
    if w.len() != r + 2 {
        return Err(err(ln, format!("boundary length {r} but {} vertices listed", w.len() - 2)));
    }
    let outer = w[2..].iter().map(|s| vertex(ln, s, n)).collect::<Result<_, _>>()?;

    let mut inst = Instance { rotations, outer, coords: None, weights: None, order };
    while let Some((ln, w)) = lines.peek().cloned() {
        lines.next("section")?;
        match w[0] {
            "coords" if inst.coords.is_none() => {
                let mut coords = vec![(0.0, 0.0); n];
                for v in 0..n {
                    let (ln, w) = lines.next("coordinate lines")?;
                    if w.len() != 3 || num::<usize>(ln, w[0], "vertex id")? != v {
                        return Err(err(ln, format!("expected `{v} x y`")));
                    }
                    coords[v] = (num(ln, w[1], "coordinate")?, num(ln, w[2], "coordinate")?);
                }
                inst.coords = Some(coords);
            }
            "weights" if inst.weights.is_none() => {
                let mut weights = Vec::with_capacity(m);
                for _ in 0..m {
                    let (ln, w) = lines.next("weight lines")?;
                    if w.len() != 3 {
                        return Err(err(ln, "expected `u v w`"));
                    }
                    weights.push((vertex(ln, w[0], n)?, vertex(ln, w[1], n)?, num(ln, w[2], "weight")?));
                }
                inst.weights = Some(weights);
            }
            other => return Err(err(ln, format!("unexpected `{other}`"))),
        }
    }
    Ok(inst)
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", inst.rotations.len(), inst.num_edges());
    for (v, list) in inst.rotations.iter().enumerate() {
        let _ = write!(out, "{} {}", v, list.len());
        for u in list {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    let _ = write!(out, "outer {}", inst.outer.len());
    for w in &inst.outer {
        let _ = write!(out, " {w}");
    }
    out.push('\n');
    if let Some(coords) = &inst.coords {
        out.push_str("coords\n");
        for (v, (x, y)) in coords.iter().enumerate() {
            let _ = writeln!(out, "{v} {x} {y}");
        }
    }
    if let Some(weights) = &inst.weights {
        out.push_str("weights\n");
        for (u, v, w) in weights {
            let _ = writeln!(out, "{u} {v} {w}");
        }
    }
    out
}

/// Pairs file: `k`, then `a b` per pair.
pub fn parse_pairs(text: &str, n: usize) -> Result<Vec<(Vertex, Vertex)>, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, w) = lines.next("pair count")?;
    if w.len() != 1 {
        return Err(err(ln, "expected `k`"));
    }
    let k: usize = num(ln, w[0], "pair count")?;
    let mut pairs = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, w) = lines.next("pair lines")?;
        if w.len() != 2 {
            return Err(err(ln, "expected `a b`"));
        }
        pairs.push((vertex(ln, w[0], n)?, vertex(ln, w[1], n)?));
    }
    if let Some((ln, _)) = lines.peek() {
        return Err(err(*ln, format!("more than {k} pairs")));
    }
    Ok(pairs)
}

pub fn write_pairs(pairs: &[(Vertex, Vertex)]) -> String {
    let mut out = format!("{}\n", pairs.len());
    for (a, b) in pairs {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// `i parent(i)` per pair, one-based in normalized order; the root's parent
/// is 0.
pub fn write_genealogy(inst: &NormalizedInstance, gen: &GenealogyTree) -> String {
    let mut out = String::new();
    for i in 0..inst.len() {
        let _ = writeln!(out, "{} {}", i + 1, gen.parent(i).map_or(0, |p| p + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const G4: &str = "4 4\n0 2 1 3\n1 2 2 0\n2 2 3 1\n3 2 0 2\nouter 4 0 1 2 3\n";

    #[test]
    fn round_trip() {
        let inst = parse_instance(G4, RotationOrder::Ccw).unwrap();
        assert_eq!(write_instance(&inst), G4);
        inst.embed().unwrap();
        let mut with = inst.clone();
        with.coords = Some(vec![(0.0, 1.0), (1.0, 1.0), (1.0, 0.0), (0.25, -1e-3)]);
        with.weights = Some(vec![(0, 1, 2), (1, 2, 1), (2, 3, 5), (3, 0, 1)]);
        let text = write_instance(&with);
        let back = parse_instance(&text, RotationOrder::Ccw).unwrap();
        assert_eq!(back, with);
        assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "4 4\n0 2 1 3\n# comment\n1 2 2 9\n";
        match parse_instance(bad, RotationOrder::Ccw) {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_instance("4 4\n0 2 1 3\n", RotationOrder::Ccw), Err(FormatError::Truncated(_))));
        assert!(matches!(parse_instance(&G4.replace("outer 4", "outer 5"), RotationOrder::Ccw), Err(FormatError::Parse { line: 6, .. })));
    }

    #[test]
    fn pairs() {
        let p = parse_pairs("2\n0 2\n1 3\n", 4).unwrap();
        assert_eq!(p, [(0, 2), (1, 3)]);
        assert_eq!(write_pairs(&p), "2\n0 2\n1 3\n");
        assert!(parse_pairs("1\n0 7\n", 4).is_err());
        assert!(parse_pairs("1\n0 1\n2 3\n", 4).is_err());
    }
}
