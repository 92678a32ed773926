//! Dart-based combinatorial embedding of a simple, connected plane graph.
//!
//! Every undirected edge `e` owns the two darts `2e` and `2e + 1`, so the
//! reverse of a dart is `d ^ 1`. Rotation lists are counterclockwise and the
//! external face is stored as a clockwise cycle: the unbounded region lies to
//! the left of every external dart. Under these conventions the leftmost
//! continuation of a dart `d` is the counterclockwise predecessor of `rev(d)`
//! around `head(d)`, and iterating that rule traces the face to the left of `d`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Vertex identifier, dense in `0..n`.
pub type Vertex = u32;

/// A directed half of an undirected edge.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    /// Sentinel for "no dart", e.g. the parent of a tree root.
    pub const NONE: Dart = Dart(u32::MAX);

    #[inline]
    pub fn rev(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// Index of the undirected edge this dart belongs to.
    #[inline]
    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_none(self) -> bool {
        self.0 == u32::MAX
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_none() {
            f.write_str("Dart(-)")
        } else {
            write!(f, "Dart({})", self.0)
        }
    }
}

/// Orientation of the neighbor lists handed to [`PlanarEmbedding::build`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum RotationOrder {
    #[default]
    Ccw,
    /// Lists are clockwise and get reversed on load.
    Cw,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("malformed rotation at vertex {vertex} (neighbor {neighbor}): {reason}")]
    MalformedRotation {
        vertex: Vertex,
        neighbor: Vertex,
        reason: &'static str,
    },
    #[error("rotation system is not planar: n - m + f = {vertices} - {edges} + {faces} != 2")]
    NotPlanar {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("outer vertex sequence is not a face of the embedding")]
    OuterNotAFace,
    #[error("outer face is not a simple cycle")]
    OuterNotSimple,
    #[error("graph is disconnected: vertex {vertex} is unreachable from vertex 0")]
    Disconnected { vertex: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("dart sequence is not a closed walk")]
    NotAClosedWalk,
    #[error("cycle encloses the outer face")]
    EnclosesOuterFace,
}

/// Immutable plane graph with a distinguished, simple external face.
#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    tail: Vec<Vertex>,
    next_ccw: Vec<Dart>,
    prev_ccw: Vec<Dart>,
    first: Vec<Dart>,
    degree: Vec<u32>,
    // Darts and heads of every rotation, counterclockwise from `first`,
    // stored contiguously; `slot[d]` is the index of `d` in its tail's run.
    ring_start: Vec<u32>,
    ring: Vec<Dart>,
    ring_head: Vec<Vertex>,
    slot: Vec<u32>,
    outer: Vec<Vertex>,
    outer_darts: Vec<Dart>,
    boundary_pos: Vec<u32>,
    face_of: Vec<u32>,
    face_count: usize,
}

const NOT_ON_BOUNDARY: u32 = u32::MAX;

impl PlanarEmbedding {
    /// Builds and validates an embedding from per-vertex neighbor lists and a
    /// clockwise listing of the external face.
    pub fn build(
        rotations: &[Vec<Vertex>],
        outer_hint: &[Vertex],
        order: RotationOrder,
    ) -> Result<Self, EmbeddingError> {
        let n = rotations.len();
        // (min, max, from, slot) for every listed incidence.
        let mut incidences: Vec<(Vertex, Vertex, Vertex, u32)> = Vec::new();
        for (v, list) in rotations.iter().enumerate() {
            let v = v as Vertex;
            for (slot, &u) in list.iter().enumerate() {
                if u as usize >= n {
                    return Err(EmbeddingError::MalformedRotation {
                        vertex: v,
                        neighbor: u,
                        reason: "neighbor out of range",
                    });
                }
                if u == v {
                    return Err(EmbeddingError::MalformedRotation {
                        vertex: v,
                        neighbor: u,
                        reason: "self-loop",
                    });
                }
                incidences.push((v.min(u), v.max(u), v, slot as u32));
            }
        }
        incidences.sort_unstable();

        // dart_at[v][slot]
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for list in rotations {
            offsets.push(offsets.last().unwrap() + list.len());
        }
        let mut dart_at = vec![Dart::NONE; incidences.len()];
        let mut tail = Vec::with_capacity(incidences.len());
        let mut i = 0;
        while i < incidences.len() {
            let (a, b, from, slot) = incidences[i];
            if i + 1 >= incidences.len() || (incidences[i + 1].0, incidences[i + 1].1) != (a, b) {
                let other = if from == a { b } else { a };
                return Err(EmbeddingError::MalformedRotation {
                    vertex: from,
                    neighbor: other,
                    reason: "edge missing from the other endpoint's list",
                });
            }
            let (_, _, from2, slot2) = incidences[i + 1];
            if from2 == from || (i + 2 < incidences.len() && (incidences[i + 2].0, incidences[i + 2].1) == (a, b)) {
                let other = if from == a { b } else { a };
                return Err(EmbeddingError::MalformedRotation {
                    vertex: from,
                    neighbor: other,
                    reason: "parallel edge",
                });
            }
            let d = Dart(tail.len() as u32);
            tail.push(from);
            tail.push(from2);
            dart_at[offsets[from as usize] + slot as usize] = d;
            dart_at[offsets[from2 as usize] + slot2 as usize] = d.rev();
            i += 2;
        }

        let darts = tail.len();
        let mut next_ccw = vec![Dart::NONE; darts];
        let mut prev_ccw = vec![Dart::NONE; darts];
        let mut first = vec![Dart::NONE; n];
        let mut degree = vec![0u32; n];
        for v in 0..n {
            let ring = &dart_at[offsets[v]..offsets[v + 1]];
            degree[v] = ring.len() as u32;
            if ring.is_empty() {
                continue;
            }
            first[v] = ring[0];
            let len = ring.len();
            for (j, &d) in ring.iter().enumerate() {
                let succ = ring[(j + 1) % len];
                match order {
                    RotationOrder::Ccw => {
                        next_ccw[d.index()] = succ;
                        prev_ccw[succ.index()] = d;
                    }
                    RotationOrder::Cw => {
                        prev_ccw[d.index()] = succ;
                        next_ccw[succ.index()] = d;
                    }
                }
            }
        }

        let mut emb = PlanarEmbedding {
            tail,
            next_ccw,
            prev_ccw,
            first,
            degree,
            ring_start: Vec::new(),
            ring: Vec::new(),
            ring_head: Vec::new(),
            slot: Vec::new(),
            outer: Vec::new(),
            outer_darts: Vec::new(),
            boundary_pos: vec![NOT_ON_BOUNDARY; n],
            face_of: vec![u32::MAX; darts],
            face_count: 0,
        };

        emb.fill_rings();
        emb.check_connected()?;
        emb.label_faces();
        let m = emb.num_edges();
        if n + emb.face_count != m + 2 {
            return Err(EmbeddingError::NotPlanar {
                vertices: n,
                edges: m,
                faces: emb.face_count,
            });
        }
        emb.attach_outer(outer_hint)?;
        Ok(emb)
    }

    fn fill_rings(&mut self) {
        let n = self.num_vertices();
        let mut ring_start = Vec::with_capacity(n + 1);
        let mut ring = Vec::with_capacity(self.num_darts());
        let mut slot = vec![0u32; self.num_darts()];
        ring_start.push(0);
        for v in 0..n as Vertex {
            for (j, d) in self.rotation(v).enumerate() {
                slot[d.index()] = j as u32;
                ring.push(d);
            }
            ring_start.push(ring.len() as u32);
        }
        self.ring_head = ring.iter().map(|&d| self.head(d)).collect();
        self.ring_start = ring_start;
        self.ring = ring;
        self.slot = slot;
    }

    fn check_connected(&self) -> Result<(), EmbeddingError> {
        let n = self.num_vertices();
        if n == 0 {
            return Ok(());
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0 as Vertex);
        while let Some(v) = queue.pop_front() {
            for d in self.rotation(v) {
                let u = self.head(d);
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(EmbeddingError::Disconnected { vertex: v as Vertex }),
            None => Ok(()),
        }
    }

    fn label_faces(&mut self) {
        let mut count = 0u32;
        for start in 0..self.num_darts() {
            if self.face_of[start] != u32::MAX {
                continue;
            }
            let mut d = Dart(start as u32);
            loop {
                self.face_of[d.index()] = count;
                d = self.face_successor_left(d);
                if d.index() == start {
                    break;
                }
            }
            count += 1;
        }
        self.face_count = count as usize;
    }

    fn attach_outer(&mut self, hint: &[Vertex]) -> Result<(), EmbeddingError> {
        let n = self.num_vertices();
        if hint.len() < 3 {
            return Err(EmbeddingError::OuterNotSimple);
        }
        let mut pos = vec![NOT_ON_BOUNDARY; n];
        for (j, &v) in hint.iter().enumerate() {
            if v as usize >= n {
                return Err(EmbeddingError::OuterNotAFace);
            }
            if pos[v as usize] != NOT_ON_BOUNDARY {
                return Err(EmbeddingError::OuterNotSimple);
            }
            pos[v as usize] = j as u32;
        }
        let r = hint.len();
        let start = self.find_dart(hint[0], hint[1]).ok_or(EmbeddingError::OuterNotAFace)?;
        let mut darts = Vec::with_capacity(r);
        let mut d = start;
        for j in 0..r {
            if self.tail(d) != hint[j] || self.head(d) != hint[(j + 1) % r] {
                return Err(EmbeddingError::OuterNotAFace);
            }
            darts.push(d);
            d = self.face_successor_left(d);
        }
        if d != start {
            // The face continues past the listed vertices, so it revisits one.
            return Err(EmbeddingError::OuterNotSimple);
        }
        self.outer = hint.to_vec();
        self.outer_darts = darts;
        self.boundary_pos = pos;
        Ok(())
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.first.len()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.tail.len() / 2
    }

    #[inline]
    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> Vertex {
        self.tail[d.index()]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> Vertex {
        self.tail[d.rev().index()]
    }

    /// Counterclockwise successor of `d` around `tail(d)`.
    #[inline]
    pub fn next_ccw(&self, d: Dart) -> Dart {
        self.next_ccw[d.index()]
    }

    /// Counterclockwise predecessor of `d` around `tail(d)`.
    #[inline]
    pub fn prev_ccw(&self, d: Dart) -> Dart {
        self.prev_ccw[d.index()]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v as usize] as usize
    }

    /// First dart of `v`'s rotation, in input order.
    #[inline]
    pub fn first_dart(&self, v: Vertex) -> Dart {
        self.first[v as usize]
    }

    /// Outgoing darts of `v` in counterclockwise order, starting from the
    /// first listed neighbor.
    pub fn rotation(&self, v: Vertex) -> Rotation<'_> {
        Rotation {
            emb: self,
            start: self.first[v as usize],
            cur: self.first[v as usize],
            done: self.degree[v as usize] == 0,
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.neighbor_slice(v).iter().copied()
    }

    /// Outgoing darts of `v`, counterclockwise from [`Self::first_dart`].
    #[inline]
    pub fn rotation_slice(&self, v: Vertex) -> &[Dart] {
        &self.ring[self.ring_start[v as usize] as usize..self.ring_start[v as usize + 1] as usize]
    }

    /// Heads of [`Self::rotation_slice`].
    #[inline]
    pub fn neighbor_slice(&self, v: Vertex) -> &[Vertex] {
        &self.ring_head[self.ring_start[v as usize] as usize..self.ring_start[v as usize + 1] as usize]
    }

    /// Offset of `v`'s run in the flat rotation arrays.
    #[inline]
    pub fn ring_offset(&self, v: Vertex) -> usize {
        self.ring_start[v as usize] as usize
    }

    /// All rotation runs back to back; see [`Self::ring_offset`].
    #[inline]
    pub fn flat_rotations(&self) -> (&[Dart], &[Vertex]) {
        (&self.ring, &self.ring_head)
    }

    /// Index of `d` in the rotation slice of its tail.
    #[inline]
    pub fn slot(&self, d: Dart) -> usize {
        self.slot[d.index()] as usize
    }

    /// Dart from `u` to `v`, scanning `u`'s rotation.
    pub fn find_dart(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        if u as usize >= self.num_vertices() {
            return None;
        }
        self.rotation(u).find(|&d| self.head(d) == v)
    }

    /// External face as a clockwise vertex cycle.
    pub fn outer(&self) -> &[Vertex] {
        &self.outer
    }

    /// External face darts; `outer_darts()[j]` goes from `outer()[j]` to `outer()[j + 1]`.
    pub fn outer_darts(&self) -> &[Dart] {
        &self.outer_darts
    }

    /// Position of `v` on the clockwise external cycle.
    #[inline]
    pub fn boundary_position(&self, v: Vertex) -> Option<usize> {
        match self.boundary_pos.get(v as usize) {
            Some(&p) if p != NOT_ON_BOUNDARY => Some(p as usize),
            _ => None,
        }
    }

    /// External dart leaving `v` in clockwise direction.
    pub fn outer_dart_from(&self, v: Vertex) -> Option<Dart> {
        self.boundary_position(v).map(|p| self.outer_darts[p])
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.index()] as usize
    }

    #[inline]
    pub fn face_count(&self) -> usize {
        self.face_count
    }

    /// Face id of the external face.
    pub fn outer_face(&self) -> usize {
        self.face_of(self.outer_darts[0])
    }

    /// Next dart on the boundary of the face to the left of `d`.
    #[inline]
    pub fn face_successor_left(&self, d: Dart) -> Dart {
        self.prev_ccw[d.rev().index()]
    }

    /// Leftmost continuation of `d` among darts accepted by `member`.
    ///
    /// Scans counterclockwise predecessors of `rev(d)` around `head(d)`.
    /// Falls back to `rev(d)` (a U-turn) when it is the only member dart, and
    /// returns `None` when no member dart exists at all.
    pub fn turn_left(&self, d: Dart, member: impl Fn(Dart) -> bool) -> Option<Dart> {
        let back = d.rev();
        let mut c = self.prev_ccw(back);
        while c != back {
            if member(c) {
                return Some(c);
            }
            c = self.prev_ccw(c);
        }
        member(back).then_some(back)
    }

    /// Mirror image of [`turn_left`](Self::turn_left).
    pub fn turn_right(&self, d: Dart, member: impl Fn(Dart) -> bool) -> Option<Dart> {
        let back = d.rev();
        let mut c = self.next_ccw(back);
        while c != back {
            if member(c) {
                return Some(c);
            }
            c = self.next_ccw(c);
        }
        member(back).then_some(back)
    }

    /// First member dart leaving the boundary vertex `v` when arriving from
    /// the unbounded region: the leftmost choice starts at the clockwise
    /// external dart and proceeds clockwise.
    pub fn leftmost_from_outside(&self, v: Vertex, member: impl Fn(Dart) -> bool) -> Option<Dart> {
        let start = self.outer_dart_from(v)?;
        let mut c = start;
        loop {
            if member(c) {
                return Some(c);
            }
            c = self.prev_ccw(c);
            if c == start {
                return None;
            }
        }
    }

    /// Mirror of [`leftmost_from_outside`](Self::leftmost_from_outside): starts
    /// at the counterclockwise external dart and proceeds counterclockwise.
    pub fn rightmost_from_outside(&self, v: Vertex, member: impl Fn(Dart) -> bool) -> Option<Dart> {
        let p = self.boundary_position(v)?;
        let r = self.outer.len();
        let start = self.outer_darts[(p + r - 1) % r].rev();
        let mut c = start;
        loop {
            if member(c) {
                return Some(c);
            }
            c = self.next_ccw(c);
            if c == start {
                return None;
            }
        }
    }

    /// All face orbits of the left-face permutation.
    pub fn faces(&self) -> FaceSet {
        let mut cycles: Vec<Vec<Dart>> = vec![Vec::new(); self.face_count];
        let mut seen = vec![false; self.num_darts()];
        for start in 0..self.num_darts() {
            if seen[start] {
                continue;
            }
            let f = self.face_of[start] as usize;
            let mut d = Dart(start as u32);
            loop {
                seen[d.index()] = true;
                cycles[f].push(d);
                d = self.face_successor_left(d);
                if d.index() == start {
                    break;
                }
            }
        }
        FaceSet {
            face_of: self.face_of.clone(),
            cycles,
        }
    }

    /// Region enclosed by the closed walk `cycle`, taken to lie on the right
    /// of its darts (a clockwise walk around a bounded area).
    pub fn region_of_cycle(&self, cycle: &[Dart]) -> Result<RegionSubgraph, RegionError> {
        if cycle.is_empty() {
            return Err(RegionError::NotAClosedWalk);
        }
        for (j, &d) in cycle.iter().enumerate() {
            let nxt = cycle[(j + 1) % cycle.len()];
            if d.index() >= self.num_darts() || nxt.index() >= self.num_darts() || self.head(d) != self.tail(nxt) {
                return Err(RegionError::NotAClosedWalk);
            }
        }
        let mut wall = vec![false; self.num_edges()];
        for &d in cycle {
            wall[d.edge()] = true;
        }
        let faces = self.faces();
        let mut in_region = vec![false; self.face_count];
        let mut stack = Vec::new();
        for &d in cycle {
            let f = self.face_of(d.rev());
            if !in_region[f] {
                in_region[f] = true;
                stack.push(f);
            }
        }
        let outer = self.outer_face();
        while let Some(f) = stack.pop() {
            if f == outer {
                return Err(RegionError::EnclosesOuterFace);
            }
            for &d in &faces.cycles[f] {
                if wall[d.edge()] {
                    continue;
                }
                let g = self.face_of(d.rev());
                if !in_region[g] {
                    in_region[g] = true;
                    stack.push(g);
                }
            }
        }
        Ok(RegionSubgraph::from_faces(self, &faces, |f| in_region[f]))
    }

    /// Partitions the faces of the embedding into the faces of a subgraph:
    /// two faces share a group when they are adjacent across an edge for which
    /// `wall` is false. Returns the group id per face and the group count.
    pub fn group_faces(&self, faces: &FaceSet, wall: impl Fn(usize) -> bool) -> (Vec<u32>, usize) {
        let mut group = vec![u32::MAX; self.face_count];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for f0 in 0..self.face_count {
            if group[f0] != u32::MAX {
                continue;
            }
            group[f0] = count;
            stack.push(f0);
            while let Some(f) = stack.pop() {
                for &d in &faces.cycles[f] {
                    if wall(d.edge()) {
                        continue;
                    }
                    let g = self.face_of(d.rev());
                    if group[g] == u32::MAX {
                        group[g] = count;
                        stack.push(g);
                    }
                }
            }
            count += 1;
        }
        (group, count as usize)
    }
}

/// Iterator over a vertex's darts in counterclockwise order.
pub struct Rotation<'a> {
    emb: &'a PlanarEmbedding,
    start: Dart,
    cur: Dart,
    done: bool,
}

impl Iterator for Rotation<'_> {
    type Item = Dart;

    fn next(&mut self) -> Option<Dart> {
        if self.done {
            return None;
        }
        let d = self.cur;
        self.cur = self.emb.next_ccw(d);
        if self.cur == self.start {
            self.done = true;
        }
        Some(d)
    }
}

/// Faces of an embedding as dart cycles.
#[derive(Clone, Debug)]
pub struct FaceSet {
    pub face_of: Vec<u32>,
    pub cycles: Vec<Vec<Dart>>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// Closed region of the embedding: a union of faces with their boundaries.
#[derive(Clone, Debug)]
pub struct RegionSubgraph {
    vertex_in: Vec<bool>,
    edge_in: Vec<bool>,
    vertices: Vec<Vertex>,
    edges: Vec<usize>,
}

impl RegionSubgraph {
    /// Collects every vertex and edge on the boundary of a selected face.
    pub fn from_faces(emb: &PlanarEmbedding, faces: &FaceSet, selected: impl Fn(usize) -> bool) -> Self {
        let mut vertex_in = vec![false; emb.num_vertices()];
        let mut edge_in = vec![false; emb.num_edges()];
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (f, cycle) in faces.cycles.iter().enumerate() {
            if !selected(f) {
                continue;
            }
            for &d in cycle {
                if !edge_in[d.edge()] {
                    edge_in[d.edge()] = true;
                    edges.push(d.edge());
                }
                let v = emb.tail(d);
                if !vertex_in[v as usize] {
                    vertex_in[v as usize] = true;
                    vertices.push(v);
                }
            }
        }
        vertices.sort_unstable();
        edges.sort_unstable();
        RegionSubgraph {
            vertex_in,
            edge_in,
            vertices,
            edges,
        }
    }

    #[inline]
    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertex_in[v as usize]
    }

    #[inline]
    pub fn contains_edge(&self, e: usize) -> bool {
        self.edge_in[e]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, fig2, grid, grid_vertex};

    #[test]
    fn c4_has_two_faces() {
        let emb = c4();
        assert_eq!(emb.face_count(), 2);
        assert_eq!(emb.num_edges(), 4);
        let inner = emb.find_dart(1, 0).unwrap();
        let mut d = inner;
        for _ in 0..4 {
            d = emb.face_successor_left(d);
        }
        assert_eq!(d, inner);
        assert_ne!(emb.face_of(inner), emb.outer_face());
    }

    #[test]
    fn g9_has_five_faces_with_square_cells() {
        let emb = grid(3, 3);
        assert_eq!(emb.face_count(), 5);
        let faces = emb.faces();
        let mut lengths: Vec<usize> = faces.cycles.iter().map(Vec::len).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![4, 4, 4, 4, 8]);
        assert_eq!(faces.cycles[emb.outer_face()].len(), 8);
    }

    #[test]
    fn center_turns() {
        let emb = grid(3, 3);
        let c = grid_vertex(3, 1, 1);
        let (e, n, w, s) = (grid_vertex(3, 1, 2), grid_vertex(3, 0, 1), grid_vertex(3, 1, 0), grid_vertex(3, 2, 1));
        let rot: Vec<Vertex> = emb.neighbors(c).collect();
        assert_eq!(rot, vec![e, n, w, s]);
        let arrive = emb.find_dart(w, c).unwrap();
        let to = |x| emb.find_dart(c, x).unwrap();
        assert_eq!(emb.face_successor_left(arrive), to(n));
        assert_eq!(emb.turn_left(arrive, |_| true), Some(to(n)));
        assert_eq!(emb.turn_left(arrive, |d| d != to(n)), Some(to(e)));
        assert_eq!(emb.turn_left(arrive, |d| d == to(w)), Some(to(w)));
        assert_eq!(emb.turn_left(arrive, |_| false), None);
        assert_eq!(emb.turn_right(arrive, |_| true), Some(to(s)));
        assert_eq!(emb.turn_right(arrive, |d| d != to(s)), Some(to(e)));
        assert_eq!(emb.turn_right(arrive, |d| d == to(w)), Some(to(w)));
    }

    #[test]
    fn cw_flag_reverses_lists() {
        let ccw = grid(3, 3);
        let rotations: Vec<Vec<Vertex>> = (0..9)
            .map(|v| {
                let mut l: Vec<Vertex> = ccw.neighbors(v).collect();
                l.reverse();
                l
            })
            .collect();
        let cw = PlanarEmbedding::build(&rotations, ccw.outer(), RotationOrder::Cw).unwrap();
        for v in 0..9 {
            for d in ccw.rotation(v) {
                let d2 = cw.find_dart(v, ccw.head(d)).unwrap();
                assert_eq!(cw.head(cw.next_ccw(d2)), ccw.head(ccw.next_ccw(d)));
            }
        }
        // Reading ccw lists as clockwise mirrors the drawing, so the
        // clockwise outer hint no longer names a face orbit.
        assert_eq!(
            PlanarEmbedding::build(&rotations, ccw.outer(), RotationOrder::Ccw).unwrap_err(),
            EmbeddingError::OuterNotAFace
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        let tri = |l: Vec<Vec<Vertex>>, outer: &[Vertex]| PlanarEmbedding::build(&l, outer, RotationOrder::Ccw);
        assert!(matches!(
            tri(vec![vec![1, 2], vec![2, 0], vec![0, 1, 1]], &[0, 1, 2]),
            Err(EmbeddingError::MalformedRotation { reason: "parallel edge", .. })
        ));
        assert!(matches!(
            tri(vec![vec![0, 1, 2], vec![2, 0], vec![0, 1]], &[0, 1, 2]),
            Err(EmbeddingError::MalformedRotation { reason: "self-loop", .. })
        ));
        assert!(matches!(
            tri(vec![vec![1, 2], vec![2], vec![0, 1]], &[0, 1, 2]),
            Err(EmbeddingError::MalformedRotation { .. })
        ));
        assert!(matches!(tri(vec![vec![1, 5], vec![0], vec![]], &[0, 1, 2]), Err(EmbeddingError::MalformedRotation { .. })));
        // Triangle 0-1-2 plus an isolated triangle 3-4-5.
        assert!(matches!(
            tri(
                vec![vec![1, 2], vec![2, 0], vec![0, 1], vec![4, 5], vec![5, 3], vec![3, 4]],
                &[0, 2, 1]
            ),
            Err(EmbeddingError::Disconnected { vertex: 3 })
        ));
        // K4 with a rotation that is not planar.
        let k4 = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        assert!(matches!(tri(k4, &[0, 1, 2]), Err(EmbeddingError::NotPlanar { .. })));
    }

    #[test]
    fn outer_hint_must_be_a_face() {
        let emb = grid(3, 3);
        let rotations: Vec<Vec<Vertex>> = (0..9).map(|v| emb.neighbors(v).collect()).collect();
        // Counterclockwise listing of the boundary is the inner side.
        let mut ccw_outer = emb.outer().to_vec();
        ccw_outer.reverse();
        assert_eq!(
            PlanarEmbedding::build(&rotations, &ccw_outer, RotationOrder::Ccw).unwrap_err(),
            EmbeddingError::OuterNotAFace
        );
        // A cell is a face but the hint must match the external one to
        // become the boundary; the cell listed clockwise is not a face.
        assert_eq!(
            PlanarEmbedding::build(&rotations, &[0, 1, 4, 3], RotationOrder::Ccw).unwrap_err(),
            EmbeddingError::OuterNotAFace
        );
        assert_eq!(
            PlanarEmbedding::build(&rotations, &[0, 1, 2, 1], RotationOrder::Ccw).unwrap_err(),
            EmbeddingError::OuterNotSimple
        );
    }

    #[test]
    fn outer_face_must_be_simple() {
        // Two triangles sharing vertex 2: the outer face visits 2 twice.
        let rot = vec![vec![2, 1], vec![0, 2], vec![1, 0, 4, 3], vec![2, 4], vec![3, 2]];
        let err = PlanarEmbedding::build(&rot, &[0, 1, 2], RotationOrder::Ccw);
        assert!(err.is_err());
    }

    #[test]
    fn regions() {
        let c = c4();
        let inner: Vec<Dart> = c.outer_darts().to_vec();
        let r = c.region_of_cycle(&inner).unwrap();
        assert_eq!(r.vertices().len(), 4);
        assert_eq!(r.edges().len(), 4);

        let g = grid(3, 3);
        let all = g.region_of_cycle(g.outer_darts()).unwrap();
        assert_eq!(all.vertices().len(), 9);
        assert_eq!(all.edges().len(), 12);

        // Top-left cell, clockwise: 0 -> 1 -> 4 -> 3 -> 0.
        let cyc: Vec<Dart> = [(0, 1), (1, 4), (4, 3), (3, 0)].iter().map(|&(a, b)| g.find_dart(a, b).unwrap()).collect();
        let cell = g.region_of_cycle(&cyc).unwrap();
        assert_eq!(cell.vertices(), &[0, 1, 3, 4]);
        assert_eq!(cell.edges().len(), 4);

        let rev: Vec<Dart> = cyc.iter().rev().map(|d| d.rev()).collect();
        assert_eq!(g.region_of_cycle(&rev).unwrap_err(), RegionError::EnclosesOuterFace);
        assert_eq!(g.region_of_cycle(&cyc[..3]).unwrap_err(), RegionError::NotAClosedWalk);
    }

    #[test]
    fn face_orbits_match_left_turn_walks() {
        for emb in [grid(4, 5), fig2()] {
            let faces = emb.faces();
            let total: usize = faces.cycles.iter().map(Vec::len).sum();
            assert_eq!(total, emb.num_darts());
            assert_eq!(emb.num_vertices() + faces.len(), emb.num_edges() + 2);
            for d in (0..emb.num_darts() as u32).map(Dart) {
                assert_eq!(emb.turn_left(d, |_| true), Some(emb.face_successor_left(d)));
                // Turning right undoes a left turn on the reversed walk.
                let l = emb.turn_left(d, |_| true).unwrap();
                assert_eq!(emb.turn_right(l.rev(), |_| true), Some(d.rev()));
            }
        }
    }

    #[test]
    fn outside_entry_darts() {
        let g = grid(3, 3);
        // Corner 0: clockwise external dart goes east, counterclockwise goes south.
        assert_eq!(g.leftmost_from_outside(0, |_| true), g.find_dart(0, 1));
        assert_eq!(g.rightmost_from_outside(0, |_| true), g.find_dart(0, 3));
        let not_east = g.find_dart(0, 1).unwrap();
        assert_eq!(g.leftmost_from_outside(0, |d| d != not_east), g.find_dart(0, 3));
        assert_eq!(g.leftmost_from_outside(4, |_| true), None);
    }
}
