//! Directed union `Y_k` of non-crossing shortest paths, one per pair.
//!
//! For each pair, `σ_i` leaves `s_i` always turning left in `X_i`, and
//! `τ_i` leaves `t_i` always turning right. `σ_i` stops in front of a dart
//! already in `Y_{i-1}`, `τ_i` in front of a dart whose reverse is in
//! `Y_{i-1}`; the gap between them is filled by the parent's path:
//! `ρ_i = σ_i ∘ ρ_p[u_i, v_i] ∘ rev(τ_i)`.
//!
//! Turns scan the rotation lists restricted to `X_k` and skip darts that
//! enter the chain after iteration `i`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::embedding::{Dart, PlanarEmbedding, Vertex};
use crate::supergraph::SupergraphTimeline;
use crate::terminals::{GenealogyTree, NormalizedInstance, Pair};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UnionError {
    #[error("walk for pair {pair} left its subgraph without reaching a stop")]
    WalkEscaped { pair: usize },
    #[error("pair {pair}: junction {vertex} is not on the parent path in the expected place")]
    SpliceEndpointNotOnParent { pair: usize, vertex: Vertex },
    #[error("pair {pair}: the two walks disagree about where the path meets earlier ones")]
    InconsistentWalks { pair: usize },
    #[error("pair {pair}: walk reached a dead end at {vertex}")]
    DeadEnd { pair: usize, vertex: Vertex },
    #[error("pair {pair} stopped against earlier paths but has no parent")]
    MissingParent { pair: usize },
}

/// The two walks of one pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathBundle {
    /// Darts from `s_i`.
    pub sigma: Vec<Dart>,
    /// Darts from `t_i` (each the reverse of a dart of `ρ_i`).
    pub tau: Vec<Dart>,
    /// `d_i`: the dart of `Y_{i-1}` in front of which `σ_i` stopped.
    pub sigma_stop: Option<Dart>,
    /// `d'_i`: the dart of `ρ_i` in `Y_{i-1}` in front of which `τ_i` stopped.
    pub tau_stop: Option<Dart>,
}

impl PathBundle {
    pub fn is_direct(&self) -> bool {
        self.sigma_stop.is_none()
    }

    /// `u_i`, the vertex where `σ_i` ends.
    pub fn u(&self, emb: &PlanarEmbedding) -> Option<Vertex> {
        self.sigma_stop.map(|d| emb.tail(d))
    }

    /// `v_i`, the vertex where `τ_i` ends.
    pub fn v(&self, emb: &PlanarEmbedding) -> Option<Vertex> {
        self.tau_stop.map(|d| emb.head(d))
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct UnionCounters {
    /// Darts appended to `σ` walks.
    pub sigma_steps: usize,
    /// Darts appended to `τ` walks.
    pub tau_steps: usize,
    /// Restricted-rotation entries examined and rejected.
    pub scan_skips: usize,
}

#[derive(Clone, Debug)]
pub struct UnionResult {
    pairs: Vec<Pair>,
    y: Vec<u64>,
    bundles: Vec<PathBundle>,
    counters: UnionCounters,
}

/// Cyclic rotation lists restricted to the darts of `X_k`, built per vertex
/// the first time a walk reaches it, so memory follows the walks rather than
/// the graph. `base[v]` is one past the start of `v`'s block in `links`
/// (zero: not built). A block is a header `(len, 0)` followed by one
/// `(prev, next)` entry per rotation slot, holding slot indices plus one, or
/// zeros for darts outside `X_k`.
struct Restricted<'a> {
    tl: &'a SupergraphTimeline,
    base: Vec<u32>,
    links: Vec<(u32, u32)>,
}

impl<'a> Restricted<'a> {
    fn new(emb: &PlanarEmbedding, tl: &'a SupergraphTimeline) -> Self {
        Restricted {
            tl,
            base: vec![0; emb.num_vertices()],
            links: Vec::new(),
        }
    }

    /// Block start of `v`, building it if needed.
    fn block(&mut self, emb: &PlanarEmbedding, v: Vertex) -> usize {
        let b = self.base[v as usize];
        if b != 0 {
            return b as usize - 1;
        }
        let k = self.tl.len();
        let start = self.links.len();
        let ring = emb.rotation_slice(v);
        self.links.push((0, 0));
        self.links.resize(start + 1 + ring.len(), (0, 0));
        let (mut first, mut last, mut len) = (usize::MAX, usize::MAX, 0);
        for (j, d) in ring.iter().enumerate() {
            if !self.tl.in_x(d.edge(), k) {
                continue;
            }
            if first == usize::MAX {
                first = j;
            } else {
                self.links[start + 1 + last].1 = j as u32 + 1;
                self.links[start + 1 + j].0 = last as u32 + 1;
            }
            last = j;
            len += 1;
        }
        if len > 0 {
            self.links[start + 1 + last].1 = first as u32 + 1;
            self.links[start + 1 + first].0 = last as u32 + 1;
        }
        self.links[start].0 = len;
        self.base[v as usize] = start as u32 + 1;
        start
    }
}

/// Runs the walks for every pair, in normalized order.
pub fn extract_union(emb: &PlanarEmbedding, tl: &SupergraphTimeline, inst: &NormalizedInstance) -> Result<UnionResult, UnionError> {
    let k = inst.len();
    let mut res = UnionResult {
        pairs: inst.pairs().to_vec(),
        y: vec![0; emb.num_darts().div_ceil(64)],
        bundles: Vec::with_capacity(k),
        counters: UnionCounters::default(),
    };
    if k == 0 {
        return Ok(res);
    }
    let mut rot = Restricted::new(emb, tl);
    let limit = emb.num_darts() + 1;

    for i in 0..k {
        let j = i + 1;
        let Pair { s, t } = inst.pair(i);
        let member = |d: Dart| tl.in_x(d.edge(), j);
        let mut bundle = PathBundle::default();
        let escaped = UnionError::WalkEscaped { pair: i };

        // σ: turn left from s_i.
        let outside = emb.outer_dart_from(s).expect("terminal on the boundary");
        let mut c = rot.scan(emb, outside, &member, Turn::Left, &mut res.counters).ok_or(escaped.clone())?;
        let mut reached = false;
        loop {
            if res.contains(c) {
                bundle.sigma_stop = Some(c);
                break;
            }
            bundle.sigma.push(c);
            res.counters.sigma_steps += 1;
            if emb.head(c) == t {
                reached = true;
                break;
            }
            if bundle.sigma.len() > limit {
                return Err(escaped);
            }
            c = rot.turn(emb, c, &member, Turn::Left, &mut res.counters);
            if c == bundle.sigma.last().unwrap().rev() {
                return Err(UnionError::DeadEnd { pair: i, vertex: emb.tail(c) });
            }
        }

        // τ: turn right from t_i.
        if !reached {
            let outside = ccw_outer_dart(emb, t);
            let mut c = rot.scan(emb, outside, &member, Turn::Right, &mut res.counters).ok_or(escaped.clone())?;
            loop {
                if res.contains(c.rev()) {
                    bundle.tau_stop = Some(c.rev());
                    break;
                }
                if emb.head(c) == s {
                    return Err(UnionError::InconsistentWalks { pair: i });
                }
                bundle.tau.push(c);
                res.counters.tau_steps += 1;
                if bundle.tau.len() > limit {
                    return Err(escaped);
                }
                c = rot.turn(emb, c, &member, Turn::Right, &mut res.counters);
                if c == bundle.tau.last().unwrap().rev() {
                    return Err(UnionError::DeadEnd { pair: i, vertex: emb.tail(c) });
                }
            }
        }

        for &d in &bundle.sigma {
            res.insert(d);
        }
        for &d in &bundle.tau {
            res.insert(d.rev());
        }
        res.bundles.push(bundle);
    }
    Ok(res)
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Turn {
    Left,
    Right,
}

impl Restricted<'_> {
    /// Neighbor of slot `j` in the restricted ring of the block at `start`.
    fn step(&self, start: usize, j: usize, turn: Turn) -> usize {
        let (prev, next) = self.links[start + 1 + j];
        match turn {
            Turn::Left => prev as usize - 1,
            Turn::Right => next as usize - 1,
        }
    }

    /// First member at or after `d` in the full rotation (clockwise for a
    /// left turn), then continued in the restricted one.
    fn scan(&mut self, emb: &PlanarEmbedding, d: Dart, member: impl Fn(Dart) -> bool, turn: Turn, counters: &mut UnionCounters) -> Option<Dart> {
        let v = emb.tail(d);
        let start = self.block(emb, v);
        let len = self.links[start].0;
        if len == 0 {
            return None;
        }
        let ring = emb.rotation_slice(v);
        let mut j = emb.slot(d);
        while self.links[start + 1 + j].0 == 0 {
            j = match turn {
                Turn::Left => (j + ring.len() - 1) % ring.len(),
                Turn::Right => (j + 1) % ring.len(),
            };
        }
        for _ in 0..len {
            if member(ring[j]) {
                return Some(ring[j]);
            }
            counters.scan_skips += 1;
            j = self.step(start, j, turn);
        }
        None
    }

    /// Next member dart after arriving by `d`, scanning from `rev(d)`; returns
    /// `rev(d)` when nothing else is a member.
    fn turn(&mut self, emb: &PlanarEmbedding, d: Dart, member: impl Fn(Dart) -> bool, turn: Turn, counters: &mut UnionCounters) -> Dart {
        let back = d.rev();
        let v = emb.head(d);
        let start = self.block(emb, v);
        let ring = emb.rotation_slice(v);
        let home = emb.slot(back);
        let mut j = self.step(start, home, turn);
        while j != home {
            if member(ring[j]) {
                return ring[j];
            }
            counters.scan_skips += 1;
            j = self.step(start, j, turn);
        }
        back
    }
}

/// Counterclockwise outer dart at a boundary vertex.
fn ccw_outer_dart(emb: &PlanarEmbedding, v: Vertex) -> Dart {
    let p = emb.outer().len();
    let pos = emb.boundary_position(v).expect("terminal on the boundary");
    emb.outer_darts()[(pos + p - 1) % p].rev()
}

impl UnionResult {
    pub fn len(&self) -> usize {
        self.bundles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bundles.is_empty()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn bundle(&self, i: usize) -> &PathBundle {
        &self.bundles[i]
    }

    pub fn bundles(&self) -> &[PathBundle] {
        &self.bundles
    }

    /// Whether dart `d` belongs to `Y_k`.
    #[inline]
    pub fn contains(&self, d: Dart) -> bool {
        self.y[d.index() / 64] >> (d.index() % 64) & 1 != 0
    }

    fn insert(&mut self, d: Dart) {
        self.y[d.index() / 64] |= 1 << (d.index() % 64);
    }

    pub fn y_darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.y.len() * 64).map(|d| Dart(d as u32)).filter(|&d| self.contains(d))
    }

    /// Removes `d` from `Y_k`; used to build corrupted results for tests.
    pub fn remove_dart(&mut self, d: Dart) {
        self.y[d.index() / 64] &= !(1 << (d.index() % 64));
    }

    pub fn counters(&self) -> UnionCounters {
        self.counters
    }
}

/// Every `ρ_i` as a dart list, built top-down through the genealogy tree.
/// Each parent path is indexed once for all of its children.
pub fn materialize_all(emb: &PlanarEmbedding, res: &UnionResult, gen: &GenealogyTree) -> Result<Vec<Vec<Dart>>, UnionError> {
    let k = res.len();
    let mut paths: Vec<Vec<Dart>> = vec![Vec::new(); k];
    for i in 0..k {
        if gen.parent(i).is_none() {
            if res.bundles[i].sigma_stop.is_some() {
                return Err(UnionError::MissingParent { pair: i });
            }
            paths[i] = res.bundles[i].sigma.clone();
        }
    }
    // pos[v]: index in the parent path of the dart leaving v, or the path
    // length for its last vertex.
    let mut pos = vec![u32::MAX; emb.num_vertices()];
    for p in 0..k {
        let children = gen.children(p);
        if children.is_empty() {
            continue;
        }
        load_positions(emb, &paths[p], &mut pos);
        for &c in children {
            paths[c] = splice(emb, &res.bundles[c], c, &paths[p], &pos)?;
        }
        clear_positions(emb, &paths[p], &mut pos);
    }
    Ok(paths)
}

fn splice(emb: &PlanarEmbedding, b: &PathBundle, i: usize, parent: &[Dart], pos: &[u32]) -> Result<Vec<Dart>, UnionError> {
    let Some(d) = b.sigma_stop else {
        return Ok(b.sigma.clone());
    };
    let d2 = b.tau_stop.ok_or(UnionError::InconsistentWalks { pair: i })?;
    let (u, v) = (emb.tail(d), emb.head(d2));
    let a = pos[u as usize];
    let z = pos[v as usize];
    if a == u32::MAX || (a as usize) >= parent.len() || parent[a as usize] != d {
        return Err(UnionError::SpliceEndpointNotOnParent { pair: i, vertex: u });
    }
    if z == u32::MAX || z <= a || parent[z as usize - 1] != d2 {
        return Err(UnionError::SpliceEndpointNotOnParent { pair: i, vertex: v });
    }
    let mut path = Vec::with_capacity(b.sigma.len() + (z - a) as usize + b.tau.len());
    path.extend_from_slice(&b.sigma);
    path.extend_from_slice(&parent[a as usize..z as usize]);
    path.extend(b.tau.iter().rev().map(|d| d.rev()));
    Ok(path)
}

fn load_positions(emb: &PlanarEmbedding, path: &[Dart], pos: &mut [u32]) {
    for (j, &d) in path.iter().enumerate() {
        pos[emb.tail(d) as usize] = j as u32;
    }
    if let Some(&last) = path.last() {
        pos[emb.head(last) as usize] = path.len() as u32;
    }
}

fn clear_positions(emb: &PlanarEmbedding, path: &[Dart], pos: &mut [u32]) {
    for &d in path {
        pos[emb.tail(d) as usize] = u32::MAX;
        pos[emb.head(d) as usize] = u32::MAX;
    }
}

/// `ρ_i` alone, materializing its ancestors on the way.
pub fn materialize_path(emb: &PlanarEmbedding, res: &UnionResult, gen: &GenealogyTree, i: usize) -> Result<Vec<Dart>, UnionError> {
    let mut chain: Vec<usize> = gen.ancestors(i).collect();
    chain.reverse();
    chain.push(i);
    let mut pos = vec![u32::MAX; emb.num_vertices()];
    let mut current: Vec<Dart> = Vec::new();
    for (step, &a) in chain.iter().enumerate() {
        let b = &res.bundles[a];
        if step == 0 && b.sigma_stop.is_some() {
            return Err(UnionError::MissingParent { pair: a });
        }
        load_positions(emb, &current, &mut pos);
        let next = splice(emb, b, a, &current, &pos)?;
        clear_positions(emb, &current, &mut pos);
        current = next;
    }
    Ok(current)
}

/// `|ρ_i|` for every pair.
pub fn path_lengths(emb: &PlanarEmbedding, res: &UnionResult, gen: &GenealogyTree) -> Result<Vec<usize>, UnionError> {
    Ok(materialize_all(emb, res, gen)?.iter().map(Vec::len).collect())
}

/// Result file: `i length s t` per pair, optional `path i:` lines, then the
/// union darts as `tail->head`. Pairs are numbered from 1 in normalized order.
pub fn format_result(emb: &PlanarEmbedding, res: &UnionResult, paths: &[Vec<Dart>], with_paths: bool) -> String {
    let mut out = String::new();
    for (i, p) in paths.iter().enumerate() {
        let pr = res.pairs[i];
        let _ = writeln!(out, "{} {} {} {}", i + 1, p.len(), pr.s, pr.t);
    }
    if with_paths {
        for (i, p) in paths.iter().enumerate() {
            let _ = write!(out, "path {}: {}", i + 1, res.pairs[i].s);
            for &d in p {
                let _ = write!(out, " {}", emb.head(d));
            }
            out.push('\n');
        }
    }
    out.push_str("union:");
    for d in res.y_darts() {
        let _ = write!(out, " {}->{}", emb.tail(d), emb.head(d));
    }
    out.push('\n');
    out
}
