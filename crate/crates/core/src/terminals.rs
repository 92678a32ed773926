//! Terminal pairs on the external face: well-formedness, orientation,
//! reindexing and the genealogy tree.
//!
//! Pairs are chords of the boundary cycle. They are well-formed when no two
//! chords interleave, which a single parenthesis scan decides. Normalization
//! picks a pair whose endpoints are joined by a terminal-free boundary walk,
//! takes the first edge `e*` of that walk, and orients every pair so that its
//! clockwise walk `γ_i` from `s_i` to `t_i` avoids `e*`. Cutting the boundary at
//! `e*` turns every `γ_i` into an interval of a line, and the intervals nest.

use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::{Dart, PlanarEmbedding, Vertex};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub s: Vertex,
    pub t: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TerminalError {
    #[error("pair {pair}: terminal {vertex} is not on the external face")]
    TerminalNotOnBoundary { pair: usize, vertex: Vertex },
    #[error("pair {pair} joins a vertex to itself")]
    DegeneratePair { pair: usize },
    #[error("pairs {first} and {second} have the same endpoints")]
    DuplicatePair { first: usize, second: usize },
    #[error("pairs {first} and {second} interleave along the external face")]
    NotWellFormed { first: usize, second: usize },
    #[error("pair {pair} cannot be the root: no terminal-free boundary walk joins its endpoints")]
    InvalidRoot { pair: usize },
    #[error("parenthesis scan of the normalized pairs is unbalanced")]
    ImbalancedScan,
}

/// Boundary chord of one pair, `lo < hi` in boundary positions.
#[derive(Copy, Clone, Debug)]
struct Chord {
    lo: usize,
    hi: usize,
    pair: usize,
}

fn chords(emb: &PlanarEmbedding, pairs: &[(Vertex, Vertex)]) -> Result<Vec<Chord>, TerminalError> {
    let mut out = Vec::with_capacity(pairs.len());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let pa = emb
            .boundary_position(a)
            .ok_or(TerminalError::TerminalNotOnBoundary { pair: i, vertex: a })?;
        let pb = emb
            .boundary_position(b)
            .ok_or(TerminalError::TerminalNotOnBoundary { pair: i, vertex: b })?;
        if pa == pb {
            return Err(TerminalError::DegeneratePair { pair: i });
        }
        out.push(Chord {
            lo: pa.min(pb),
            hi: pa.max(pb),
            pair: i,
        });
    }
    Ok(out)
}

/// Decides whether the pairs are distinct and pairwise nested or disjoint
/// along the external face. On failure the error names two offending pairs
/// by input index.
pub fn check_well_formed(emb: &PlanarEmbedding, pairs: &[(Vertex, Vertex)]) -> Result<(), TerminalError> {
    let chords = chords(emb, pairs)?;

    let mut by_span: Vec<(usize, usize, usize)> = chords.iter().map(|c| (c.lo, c.hi, c.pair)).collect();
    by_span.sort_unstable();
    for w in by_span.windows(2) {
        if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
            return Err(TerminalError::DuplicatePair {
                first: w[0].2.min(w[1].2),
                second: w[0].2.max(w[1].2),
            });
        }
    }

    // Events ordered by position; at a shared position closes come before
    // opens, inner closes before outer ones, outer opens before inner ones.
    let mut events: Vec<(usize, u8, isize, usize)> = Vec::with_capacity(2 * chords.len());
    for (idx, c) in chords.iter().enumerate() {
        events.push((c.lo, 1, -(c.hi as isize), idx));
        events.push((c.hi, 0, -(c.lo as isize), idx));
    }
    events.sort_unstable();
    let mut stack: Vec<usize> = Vec::new();
    for &(_, kind, _, idx) in &events {
        if kind == 1 {
            stack.push(idx);
        } else {
            let top = stack.pop().expect("close without open");
            if top != idx {
                let (a, b) = (chords[top].pair, chords[idx].pair);
                return Err(TerminalError::NotWellFormed {
                    first: a.min(b),
                    second: a.max(b),
                });
            }
        }
    }
    Ok(())
}

/// Oriented, reindexed pairs. Index 0 is the root pair of the genealogy
/// tree (the `i* = 1` of the usual one-based labeling).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedInstance {
    pairs: Vec<Pair>,
    input_index: Vec<usize>,
    e_star: Option<Dart>,
    origin: usize,
    boundary_len: usize,
    s_rel: Vec<usize>,
    t_rel: Vec<usize>,
}

impl NormalizedInstance {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn pair(&self, i: usize) -> Pair {
        self.pairs[i]
    }

    /// Input index of normalized pair `i`.
    pub fn input_index(&self, i: usize) -> usize {
        self.input_index[i]
    }

    /// The external dart `e*` that no `γ_i` uses.
    pub fn e_star(&self) -> Option<Dart> {
        self.e_star
    }

    /// Boundary position of `v` counted clockwise from the head of `e*`.
    pub fn rel_position(&self, emb: &PlanarEmbedding, v: Vertex) -> Option<usize> {
        let p = emb.boundary_position(v)?;
        Some((p + self.boundary_len - self.origin) % self.boundary_len)
    }

    /// `γ_i` as an interval `[rel(s_i), rel(t_i)]` of relative positions.
    pub fn gamma(&self, i: usize) -> (usize, usize) {
        (self.s_rel[i], self.t_rel[i])
    }

    /// True when `γ_i ⊂ γ_j` strictly.
    pub fn nested_in(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.gamma(i);
        let (c, d) = self.gamma(j);
        c <= a && b <= d && (a, b) != (c, d)
    }

    /// Vertices of `γ_i` in clockwise order.
    pub fn gamma_vertices(&self, emb: &PlanarEmbedding, i: usize) -> Vec<Vertex> {
        let (a, b) = self.gamma(i);
        let outer = emb.outer();
        (a..=b).map(|x| outer[(x + self.origin) % self.boundary_len]).collect()
    }

    /// The pairs as raw, unordered input.
    pub fn as_raw(&self) -> Vec<(Vertex, Vertex)> {
        self.pairs.iter().map(|p| (p.s, p.t)).collect()
    }

    /// Direct check of the ordering invariants: `e* ∉ γ_i` for every `i`, and
    /// no terminal of an earlier pair lies strictly inside `γ_i`. Quadratic in
    /// `k`; intended for tests and audits.
    pub fn check_invariants(&self) -> Result<(), (usize, usize)> {
        for i in 0..self.len() {
            let (a, b) = self.gamma(i);
            if a >= b {
                return Err((i, i));
            }
            for j in 0..i {
                for x in [self.s_rel[j], self.t_rel[j]] {
                    if a < x && x < b {
                        return Err((j, i));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Orients and reindexes well-formed pairs, choosing the root pair by the
/// smallest boundary position at which a terminal-free walk between a pair's
/// endpoints starts.
pub fn normalize(emb: &PlanarEmbedding, pairs: &[(Vertex, Vertex)]) -> Result<NormalizedInstance, TerminalError> {
    normalize_with_root(emb, pairs, None)
}

/// Like [`normalize`], with the root pair optionally fixed by input index.
pub fn normalize_with_root(
    emb: &PlanarEmbedding,
    pairs: &[(Vertex, Vertex)],
    root: Option<usize>,
) -> Result<NormalizedInstance, TerminalError> {
    check_well_formed(emb, pairs)?;
    let r = emb.outer().len();
    if pairs.is_empty() {
        return Ok(NormalizedInstance {
            pairs: Vec::new(),
            input_index: Vec::new(),
            e_star: None,
            origin: 0,
            boundary_len: r,
            s_rel: Vec::new(),
            t_rel: Vec::new(),
        });
    }
    let chords = chords(emb, pairs)?;

    // prefix[p] = terminal occurrences at positions < p
    let mut prefix = vec![0usize; r + 1];
    for c in &chords {
        prefix[c.lo + 1] += 1;
        prefix[c.hi + 1] += 1;
    }
    for p in 0..r {
        prefix[p + 1] += prefix[p];
    }
    let inside = |from: usize, to: usize| -> usize {
        // Terminal occurrences strictly inside the clockwise walk from -> to.
        if from < to {
            prefix[to] - prefix[from + 1]
        } else {
            (prefix[r] - prefix[from + 1]) + prefix[to]
        }
    };

    // Candidate walks: (start, length, pair, end).
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for c in &chords {
        if root.is_some_and(|want| want != c.pair) {
            continue;
        }
        for (from, to) in [(c.lo, c.hi), (c.hi, c.lo)] {
            if inside(from, to) != 0 {
                continue;
            }
            let len = (to + r - from) % r;
            let cand = (from, len, c.pair, to);
            if best.is_none_or(|b| (cand.0, cand.1, cand.2) < (b.0, b.1, b.2)) {
                best = Some(cand);
            }
        }
    }
    let Some((start, _, root_pair, _)) = best else {
        return Err(match root {
            Some(pair) if pair < pairs.len() => TerminalError::InvalidRoot { pair },
            Some(pair) => TerminalError::InvalidRoot { pair },
            None => TerminalError::ImbalancedScan,
        });
    };
    let e_star = emb.outer_darts()[start];
    let origin = (start + 1) % r;
    let rel = |p: usize| (p + r - origin) % r;

    let mut oriented: Vec<(usize, usize, usize)> = chords
        .iter()
        .map(|c| {
            let (x, y) = (rel(c.lo), rel(c.hi));
            if x < y {
                (x, y, c.pair)
            } else {
                (y, x, c.pair)
            }
        })
        .collect();
    oriented.sort_unstable_by_key(|&(s, t, pair)| (pair != root_pair, s, core::cmp::Reverse(t), pair));

    let outer = emb.outer();
    let vertex_at = |x: usize| outer[(x + origin) % r];
    let inst = NormalizedInstance {
        pairs: oriented
            .iter()
            .map(|&(s, t, _)| Pair {
                s: vertex_at(s),
                t: vertex_at(t),
            })
            .collect(),
        input_index: oriented.iter().map(|o| o.2).collect(),
        e_star: Some(e_star),
        origin,
        boundary_len: r,
        s_rel: oriented.iter().map(|o| o.0).collect(),
        t_rel: oriented.iter().map(|o| o.1).collect(),
    };
    verify_order(&inst)?;
    Ok(inst)
}

/// Linear post-check of the normalized order. Together with the
/// non-interleaving of chords it implies the full ordering invariant.
fn verify_order(inst: &NormalizedInstance) -> Result<(), TerminalError> {
    for i in 0..inst.len() {
        let (s, t) = inst.gamma(i);
        if s >= t {
            return Err(TerminalError::ImbalancedScan);
        }
        if i >= 1 {
            let prev = if i == 1 { 0 } else { i - 1 };
            let (ps, pt) = inst.gamma(prev);
            if s < ps || (s == ps && t > pt) {
                return Err(TerminalError::ImbalancedScan);
            }
        }
    }
    Ok(())
}

/// Transitive reduction of the nesting order on `γ_i`; pair 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenealogyTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    enter: Vec<usize>,
    exit: Vec<usize>,
}

impl GenealogyTree {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    /// True when `a` is a strict ancestor of `d`, i.e. `γ_d ⊂ γ_a`.
    pub fn is_ancestor(&self, a: usize, d: usize) -> bool {
        a != d && self.enter[a] <= self.enter[d] && self.exit[d] <= self.exit[a]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.is_ancestor(i, j) || self.is_ancestor(j, i)
    }

    /// Strict ancestors of `i`, nearest first.
    pub fn ancestors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        core::iter::successors(self.parent[i], move |&p| self.parent[p])
    }
}

/// Builds the genealogy tree with one stack scan along the cut boundary.
pub fn genealogy(inst: &NormalizedInstance) -> Result<GenealogyTree, TerminalError> {
    let k = inst.len();
    // (position, close-before-open, order within position, pair)
    let mut events: Vec<(usize, u8, isize, usize)> = Vec::with_capacity(2 * k);
    for i in 0..k {
        let (s, t) = inst.gamma(i);
        events.push((s, 1, i as isize, i));
        events.push((t, 0, -(i as isize), i));
    }
    events.sort_unstable();
    let mut parent = vec![None; k];
    let mut enter = vec![0; k];
    let mut exit = vec![0; k];
    let mut stack: Vec<usize> = Vec::new();
    for (clock, &(_, kind, _, i)) in events.iter().enumerate() {
        if kind == 1 {
            parent[i] = stack.last().copied();
            if parent[i].is_none() && i != 0 {
                return Err(TerminalError::ImbalancedScan);
            }
            enter[i] = clock;
            stack.push(i);
        } else {
            if stack.pop() != Some(i) {
                return Err(TerminalError::ImbalancedScan);
            }
            exit[i] = clock;
        }
    }
    if !stack.is_empty() {
        return Err(TerminalError::ImbalancedScan);
    }
    let mut children = vec![Vec::new(); k];
    let mut depth = vec![0; k];
    for i in 0..k {
        // Parents precede children in index order.
        if let Some(p) = parent[i] {
            children[p].push(i);
            depth[i] = depth[p] + 1;
        }
    }
    Ok(GenealogyTree {
        parent,
        children,
        depth,
        enter,
        exit,
    })
}
