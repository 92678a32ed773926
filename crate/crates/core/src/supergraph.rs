//! Nested subgraphs `X_1 ⊆ X_2 ⊆ … ⊆ X_k`, each containing a shortest path
//! for its own pair, built from the tree sequence rooted at `s_1, …, s_k`.
//!
//! `X_1` is the tree path to `t_1`. At iteration `i` the tree moves to `s_i`.
//! `H_i` holds the vertices of `X_{i-1}` whose parent changed; each gets its
//! new parent edge, and the walk keeps climbing while it reaches vertices
//! not yet in `X_i`. The tree path to `t_i` is completed the same way.
//!
//! Vertices outside `X_{i-1}` are left out of `H_i` on purpose. Their tree
//! paths would hang off `X_i` as dead ends and can close cycles on which the
//! left-turn walk is no longer shortest.
//!
//! Subgraphs are stored as first-iteration stamps on edges and vertices, so
//! `X_j` is the set of items with stamp `≤ j` (iterations are one-based).
//! Internally 0 means "never", so the stamp arrays start out as untouched
//! zeroed memory.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::embedding::{Dart, PlanarEmbedding, Vertex};
use crate::mssp::{self, Mode, MsspError, TreeCursor};
use crate::terminals::{NormalizedInstance, Pair};

/// Stamp of items that never enter any `X_j`.
pub const NEVER: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("left-turn walk for pair {pair} did not reach its target")]
    WalkEscaped { pair: usize },
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SupergraphCounters {
    /// Parent darts followed by all backward walks.
    pub walk_steps: usize,
    /// Edges that received a stamp.
    pub edges_stamped: usize,
    /// Total size of the `H_i` sets.
    pub h_total: usize,
}

/// Result of a left-turn walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftWalk {
    /// Loop-erased vertex path from `s_i` to `t_i`.
    pub path: Vec<Vertex>,
    /// Times the walk entered a vertex with no other member dart.
    pub u_turns: usize,
    pub steps: usize,
}

/// First-iteration stamps encoding the whole chain `X_1 ⊆ … ⊆ X_k`.
#[derive(Clone, Debug)]
pub struct SupergraphTimeline {
    pairs: Vec<Pair>,
    edge_stamp: Vec<u32>,
    vertex_stamp: Vec<u32>,
    h_flat: Vec<Vertex>,
    h_start: Vec<usize>,
    eta_log: Vec<(Vertex, Vertex)>,
    counters: SupergraphCounters,
}

fn public(stamp: u32) -> u32 {
    if stamp == 0 {
        NEVER
    } else {
        stamp
    }
}

/// Distinct consecutive sources `s_i` and, per pair, the step of its root.
pub fn source_roots(inst: &NormalizedInstance) -> (Vec<Vertex>, Vec<usize>) {
    let mut roots: Vec<Vertex> = Vec::new();
    let mut step = Vec::with_capacity(inst.len());
    for p in inst.pairs() {
        if roots.last() != Some(&p.s) {
            roots.push(p.s);
        }
        step.push(roots.len() - 1);
    }
    (roots, step)
}

/// Runs the construction with a tree cursor of the given mode.
pub fn build_supergraphs_with_mode(
    emb: &PlanarEmbedding,
    inst: &NormalizedInstance,
    mode: Mode,
) -> Result<SupergraphTimeline, MsspError> {
    if inst.is_empty() {
        return Ok(SupergraphTimeline::empty(emb));
    }
    let (roots, _) = source_roots(inst);
    let mut cursor = mssp::cursor(emb, &roots, mode)?;
    Ok(build_supergraphs(emb, inst, &mut cursor))
}

/// Builds the timeline by consuming `cursor`, whose roots must be
/// [`source_roots`] of `inst` and which must sit at its first root.
pub fn build_supergraphs(emb: &PlanarEmbedding, inst: &NormalizedInstance, cursor: &mut impl TreeCursor) -> SupergraphTimeline {
    let mut tl = SupergraphTimeline::empty(emb);
    tl.pairs = inst.pairs().to_vec();
    let k = inst.len();
    if k == 0 {
        return tl;
    }
    debug_assert_eq!(cursor.roots(), source_roots(inst).0.as_slice());

    for i in 0..k {
        let iter = (i + 1) as u32;
        let Pair { s, t } = inst.pair(i);
        let from = tl.h_flat.len();
        tl.h_start.push(from);
        if i > 0 && s != inst.pair(i - 1).s {
            let added = cursor.advance().expect("cursor has a root per distinct source");
            // Heads already in X_{i-1}, i.e. stamped in 1..iter.
            let stamps = &tl.vertex_stamp;
            tl.h_flat.extend(added.iter().map(|&d| emb.head(d)).filter(|&v| stamps[v as usize].wrapping_sub(1) < iter - 1));
        }
        debug_assert_eq!(cursor.root(), s);
        tl.stamp_vertex(s, iter);
        let parent = cursor.parent_darts();
        for j in from..tl.h_flat.len() {
            tl.walk_up(emb, parent, tl.h_flat[j], iter);
        }
        tl.counters.h_total += tl.h_flat.len() - from;
        let junction = if tl.vertex_stamp[t as usize] != 0 {
            t
        } else {
            tl.walk_up(emb, parent, t, iter)
        };
        tl.eta_log.push((t, junction));
    }
    tl
}

impl SupergraphTimeline {
    fn empty(emb: &PlanarEmbedding) -> Self {
        SupergraphTimeline {
            pairs: Vec::new(),
            edge_stamp: vec![0; emb.num_edges()],
            vertex_stamp: vec![0; emb.num_vertices()],
            h_flat: Vec::new(),
            h_start: Vec::new(),
            eta_log: Vec::new(),
            counters: SupergraphCounters::default(),
        }
    }

    fn stamp_vertex(&mut self, v: Vertex, iter: u32) -> bool {
        let slot = &mut self.vertex_stamp[v as usize];
        if *slot == 0 {
            *slot = iter;
            true
        } else {
            false
        }
    }

    /// Adds the tree edge above `from` and keeps climbing while the reached
    /// vertex is new. Returns the vertex where the walk stopped.
    fn walk_up(&mut self, emb: &PlanarEmbedding, parent: &[Dart], from: Vertex, iter: u32) -> Vertex {
        self.stamp_vertex(from, iter);
        let mut v = from;
        loop {
            let d = parent[v as usize];
            if d.is_none() {
                return v;
            }
            self.counters.walk_steps += 1;
            if self.edge_stamp[d.edge()] == 0 {
                self.edge_stamp[d.edge()] = iter;
                self.counters.edges_stamped += 1;
            }
            let u = emb.tail(d);
            if !self.stamp_vertex(u, iter) {
                return u;
            }
            v = u;
        }
    }

    /// Number of pairs (and iterations).
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    /// First iteration containing edge `e`, or [`NEVER`].
    pub fn edge_stamp(&self, e: usize) -> u32 {
        public(self.edge_stamp[e])
    }

    pub fn vertex_stamp(&self, v: Vertex) -> u32 {
        public(self.vertex_stamp[v as usize])
    }

    /// `H_j` for one-based iteration `j` (empty for `j = 1`).
    pub fn h_set(&self, j: usize) -> &[Vertex] {
        let end = self.h_start.get(j).copied().unwrap_or(self.h_flat.len());
        &self.h_flat[self.h_start[j - 1]..end]
    }

    /// `(t_j, x)` where the walk completing the path to `t_j` stopped at `x`.
    pub fn eta(&self, j: usize) -> (Vertex, Vertex) {
        self.eta_log[j - 1]
    }

    pub fn counters(&self) -> SupergraphCounters {
        self.counters
    }

    /// Edge membership in `X_j`; `j = 0` is the empty graph.
    #[inline]
    pub fn in_x(&self, e: usize, j: usize) -> bool {
        (self.edge_stamp[e].wrapping_sub(1) as usize) < j
    }

    /// Dart predicate for `X_j`.
    pub fn x_membership(&self, j: usize) -> impl Fn(Dart) -> bool + '_ {
        move |d: Dart| self.in_x(d.edge(), j)
    }

    /// Edges of `X_k`.
    pub fn final_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_stamp.len()).filter(|&e| self.edge_stamp[e] != 0)
    }

    /// The walk from `s_i` that always turns left in `X_{i+1}` (pair `i` is
    /// zero-based), as a vertex sequence ending at `t_i`. Excursions into
    /// dead ends are erased, so the result is a simple path.
    pub fn leftmost_path_in_x(&self, emb: &PlanarEmbedding, i: usize) -> Result<Vec<Vertex>, WalkError> {
        self.left_walk(emb, i).map(|w| w.path)
    }

    /// [`Self::leftmost_path_in_x`] together with the number of U-turns.
    pub fn left_walk(&self, emb: &PlanarEmbedding, i: usize) -> Result<LeftWalk, WalkError> {
        let j = i + 1;
        let Pair { s, t } = self.pairs[i];
        let member = self.x_membership(j);
        let mut walk = LeftWalk { path: vec![s], u_turns: 0, steps: 0 };
        if s == t {
            return Ok(walk);
        }
        let escaped = WalkError::WalkEscaped { pair: i };
        let mut index: BTreeMap<Vertex, usize> = BTreeMap::new();
        index.insert(s, 0);
        let mut d = emb.leftmost_from_outside(s, &member).ok_or(escaped.clone())?;
        let limit = 2 * emb.num_darts() + 2;
        loop {
            walk.steps += 1;
            let v = emb.head(d);
            if let Some(&at) = index.get(&v) {
                for u in walk.path.drain(at + 1..) {
                    index.remove(&u);
                }
            } else {
                index.insert(v, walk.path.len());
                walk.path.push(v);
            }
            if v == t {
                return Ok(walk);
            }
            if walk.steps > limit {
                return Err(escaped);
            }
            let next = emb.turn_left(d, &member).ok_or(escaped.clone())?;
            if next == d.rev() {
                walk.u_turns += 1;
            }
            d = next;
        }
    }

    /// `edge u v stamp` lines for every stamped edge, in edge order.
    pub fn dump(&self, emb: &PlanarEmbedding) -> String {
        let mut out = String::new();
        for e in self.final_edges() {
            let d = Dart(2 * e as u32);
            let _ = writeln!(out, "edge {} {} {}", emb.tail(d), emb.head(d), self.edge_stamp[e]);
        }
        out
    }
}
