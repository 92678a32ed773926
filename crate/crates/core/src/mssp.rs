//! Shortest-path trees rooted at successive external-face vertices.
//!
//! A sequence of trees is represented by the first tree plus, for every later
//! root, the darts that enter the tree: each added dart replaces the parent
//! dart of its head, and the new root simply loses its parent.
//!
//! Trees are canonical: depths are BFS distances and every vertex takes the
//! parent found first by a depth-first search over tight darts that, at each
//! vertex, tries the leftmost continuation of the arrival dart first. At the
//! root the search starts with the clockwise external dart, as if the root
//! had been entered from the unbounded face.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::embedding::{Dart, PlanarEmbedding, Vertex};

pub const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MsspError {
    #[error("root {0} is not on the external face")]
    RootNotOnOuterFace(Vertex),
    #[error("roots are not distinct and clockwise (offending index {index})")]
    RootsNotClockwise { index: usize },
    #[error("incremental tree sequences are not available in this build")]
    IncrementalUnavailable,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// One leftmost BFS per root, diffed against the previous tree.
    #[default]
    Reference,
    /// Linear-time maintenance of the tree while the root moves.
    Incremental,
}

/// Rooted shortest-path tree stored as one parent dart per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SptTree {
    root: Vertex,
    parent: Vec<Dart>,
    depth: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TreeDefect {
    #[error("root {0} has a parent or nonzero depth")]
    Root(Vertex),
    #[error("vertex {0} has no parent")]
    Orphan(Vertex),
    #[error("parent dart of vertex {0} does not end at it")]
    WrongHead(Vertex),
    #[error("depth of vertex {0} is not its parent's plus one")]
    Depth(Vertex),
    #[error("depth of vertex {vertex} is {depth}, BFS distance is {distance}")]
    NotShortest { vertex: Vertex, depth: u32, distance: u32 },
}

impl SptTree {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent_dart(&self, v: Vertex) -> Option<Dart> {
        let d = self.parent[v as usize];
        (!d.is_none()).then_some(d)
    }

    pub fn parent_darts(&self) -> &[Dart] {
        &self.parent
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v as usize]
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    /// Darts of the tree path from the root to `v`.
    pub fn path_to(&self, emb: &PlanarEmbedding, v: Vertex) -> Vec<Dart> {
        let mut path = Vec::new();
        let mut x = v;
        while let Some(d) = self.parent_dart(x) {
            path.push(d);
            x = emb.tail(d);
        }
        path.reverse();
        path
    }

    /// Builds a tree from parent darts alone, deriving depths by walking up.
    pub fn from_parents(emb: &PlanarEmbedding, root: Vertex, parent: Vec<Dart>) -> Result<Self, TreeDefect> {
        let n = parent.len();
        let mut depth = vec![UNREACHED; n];
        depth[root as usize] = 0;
        if !parent[root as usize].is_none() {
            return Err(TreeDefect::Root(root));
        }
        let mut chain = Vec::new();
        for v in 0..n as Vertex {
            let mut x = v;
            while depth[x as usize] == UNREACHED {
                let d = parent[x as usize];
                if d.is_none() {
                    return Err(TreeDefect::Orphan(x));
                }
                if emb.head(d) != x {
                    return Err(TreeDefect::WrongHead(x));
                }
                chain.push(x);
                if chain.len() > n {
                    return Err(TreeDefect::Depth(x));
                }
                x = emb.tail(d);
            }
            let mut base = depth[x as usize];
            while let Some(y) = chain.pop() {
                base += 1;
                depth[y as usize] = base;
            }
        }
        Ok(SptTree { root, parent, depth })
    }

    /// Checks the tree invariants and that depths equal BFS distances.
    pub fn validate(&self, emb: &PlanarEmbedding) -> Result<(), TreeDefect> {
        let root = self.root;
        if self.depth[root as usize] != 0 || self.parent_dart(root).is_some() {
            return Err(TreeDefect::Root(root));
        }
        let dist = bfs_distances(emb, root);
        for v in 0..emb.num_vertices() as Vertex {
            if v != root {
                let d = self.parent_dart(v).ok_or(TreeDefect::Orphan(v))?;
                if emb.head(d) != v {
                    return Err(TreeDefect::WrongHead(v));
                }
                if self.depth(v) != self.depth(emb.tail(d)) + 1 {
                    return Err(TreeDefect::Depth(v));
                }
            }
            if self.depth(v) != dist[v as usize] {
                return Err(TreeDefect::NotShortest {
                    vertex: v,
                    depth: self.depth(v),
                    distance: dist[v as usize],
                });
            }
        }
        Ok(())
    }
}

/// Unweighted single-source distances over the whole embedding.
pub fn bfs_distances(emb: &PlanarEmbedding, source: Vertex) -> Vec<u32> {
    let mut dist = vec![UNREACHED; emb.num_vertices()];
    let mut queue = Vec::new();
    bfs_into(emb, source, &mut dist, &mut queue);
    dist
}

fn bfs_into(emb: &PlanarEmbedding, source: Vertex, dist: &mut [u32], queue: &mut Vec<Vertex>) {
    dist.fill(UNREACHED);
    queue.clear();
    dist[source as usize] = 0;
    queue.push(source);
    let mut head = 0;
    while let Some(&v) = queue.get(head) {
        head += 1;
        let next = dist[v as usize] + 1;
        for &u in emb.neighbor_slice(v) {
            if dist[u as usize] == UNREACHED {
                dist[u as usize] = next;
                queue.push(u);
            }
        }
    }
}

/// Reusable buffers for computing leftmost trees.
#[derive(Default)]
struct LeftmostBuilder {
    queue: Vec<Vertex>,
    stack: Vec<Frame>,
}

struct Frame {
    base: u32,
    len: u32,
    next: u32,
    left: u32,
    depth: u32,
}

impl LeftmostBuilder {
    fn build_into(&mut self, emb: &PlanarEmbedding, root: Vertex, tree: &mut SptTree) -> Result<(), MsspError> {
        let first = emb.outer_dart_from(root).ok_or(MsspError::RootNotOnOuterFace(root))?;
        let n = emb.num_vertices();
        tree.root = root;
        tree.depth.resize(n, UNREACHED);
        tree.parent.clear();
        tree.parent.resize(n, Dart::NONE);
        bfs_into(emb, root, &mut tree.depth, &mut self.queue);

        let (darts, heads) = emb.flat_rotations();
        let frame = |v: Vertex, next: usize, left: usize| Frame {
            base: emb.ring_offset(v) as u32,
            len: emb.degree(v) as u32,
            next: next as u32,
            left: left as u32,
            depth: tree.depth[v as usize],
        };
        self.stack.clear();
        self.stack.push(frame(root, emb.slot(first), emb.degree(root)));
        // A vertex is visited once it has a parent; the root never gets one.
        while let Some(top) = self.stack.last_mut() {
            if top.left == 0 {
                self.stack.pop();
                continue;
            }
            let at = (top.base + top.next) as usize;
            top.next = if top.next == 0 { top.len - 1 } else { top.next - 1 };
            top.left -= 1;
            let y = heads[at];
            if tree.depth[y as usize] == top.depth + 1 && tree.parent[y as usize].is_none() {
                let c = darts[at];
                tree.parent[y as usize] = c;
                let deg = emb.degree(y);
                let back = emb.slot(c.rev());
                // Continue just clockwise of the arrival dart.
                let start = if back == 0 { deg - 1 } else { back - 1 };
                self.stack.push(frame(y, start, deg - 1));
            }
        }
        Ok(())
    }
}

/// The canonical leftmost shortest-path tree rooted at an external vertex.
pub fn leftmost_spt(emb: &PlanarEmbedding, root: Vertex) -> Result<SptTree, MsspError> {
    let mut tree = SptTree {
        root,
        parent: Vec::new(),
        depth: Vec::new(),
    };
    LeftmostBuilder::default().build_into(emb, root, &mut tree)?;
    Ok(tree)
}

/// Checks that `roots` are distinct boundary vertices in clockwise order
/// (wrapping around at most once).
pub fn check_roots(emb: &PlanarEmbedding, roots: &[Vertex]) -> Result<(), MsspError> {
    let r = emb.outer().len();
    let Some(&first) = roots.first() else {
        return Ok(());
    };
    let p0 = emb.boundary_position(first).ok_or(MsspError::RootNotOnOuterFace(first))?;
    let mut last = 0;
    for (j, &v) in roots.iter().enumerate().skip(1) {
        let p = emb.boundary_position(v).ok_or(MsspError::RootNotOnOuterFace(v))?;
        let offset = (p + r - p0) % r;
        if offset <= last {
            return Err(MsspError::RootsNotClockwise { index: j });
        }
        last = offset;
    }
    Ok(())
}

/// Step-by-step producer of a tree sequence. Consumers read the current tree
/// and advance to the next root, receiving the darts added by the move.
pub trait TreeCursor {
    fn roots(&self) -> &[Vertex];
    /// Index of the current root.
    fn step(&self) -> usize;
    fn root(&self) -> Vertex {
        self.roots()[self.step()]
    }
    /// Parent dart of every vertex in the current tree.
    fn parent_darts(&self) -> &[Dart];
    /// Moves to the next root and returns the darts whose heads changed
    /// parent, or `None` after the last root.
    fn advance(&mut self) -> Option<&[Dart]>;
}

/// Recomputes the leftmost tree from scratch for each root and diffs it with
/// its predecessor. `O(n)` per root.
pub struct ReferenceCursor<'a> {
    emb: &'a PlanarEmbedding,
    roots: Vec<Vertex>,
    step: usize,
    current: SptTree,
    next: SptTree,
    added: Vec<Dart>,
    builder: LeftmostBuilder,
}

impl<'a> ReferenceCursor<'a> {
    pub fn new(emb: &'a PlanarEmbedding, roots: &[Vertex]) -> Result<Self, MsspError> {
        check_roots(emb, roots)?;
        let first = *roots.first().ok_or(MsspError::RootsNotClockwise { index: 0 })?;
        let mut builder = LeftmostBuilder::default();
        let mut current = SptTree {
            root: first,
            parent: Vec::new(),
            depth: Vec::new(),
        };
        builder.build_into(emb, first, &mut current)?;
        Ok(ReferenceCursor {
            emb,
            roots: roots.to_vec(),
            step: 0,
            next: current.clone(),
            current,
            added: Vec::new(),
            builder,
        })
    }
}

impl ReferenceCursor<'_> {
    pub fn tree(&self) -> &SptTree {
        &self.current
    }
}

impl TreeCursor for ReferenceCursor<'_> {
    fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    fn step(&self) -> usize {
        self.step
    }

    fn parent_darts(&self) -> &[Dart] {
        &self.current.parent
    }

    fn advance(&mut self) -> Option<&[Dart]> {
        let root = *self.roots.get(self.step + 1)?;
        self.builder
            .build_into(self.emb, root, &mut self.next)
            .expect("roots were validated on construction");
        self.added.clear();
        for (old, new) in self.current.parent.iter().zip(&self.next.parent) {
            if old != new && !new.is_none() {
                self.added.push(*new);
            }
        }
        core::mem::swap(&mut self.current, &mut self.next);
        self.step += 1;
        Some(&self.added)
    }
}

/// Darts added at one step of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeSet {
    pub step: usize,
    pub added: Vec<Dart>,
}

/// Materialized tree sequence: the first tree and one change set per later root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SptSequence {
    roots: Vec<Vertex>,
    initial: SptTree,
    changes: Vec<ChangeSet>,
}

/// Computes the whole sequence for `roots`, materializing every change set.
pub fn spt_sequence(emb: &PlanarEmbedding, roots: &[Vertex], mode: Mode) -> Result<SptSequence, MsspError> {
    match mode {
        Mode::Reference => {
            let mut cursor = ReferenceCursor::new(emb, roots)?;
            Ok(SptSequence::collect(emb, &mut cursor))
        }
        Mode::Incremental => Err(MsspError::IncrementalUnavailable),
    }
}

/// A cursor for `mode` over `roots`.
pub fn cursor<'a>(emb: &'a PlanarEmbedding, roots: &[Vertex], mode: Mode) -> Result<ReferenceCursor<'a>, MsspError> {
    match mode {
        Mode::Reference => ReferenceCursor::new(emb, roots),
        Mode::Incremental => Err(MsspError::IncrementalUnavailable),
    }
}

impl SptSequence {
    /// Drains a cursor positioned at its first root.
    pub fn collect(emb: &PlanarEmbedding, cursor: &mut impl TreeCursor) -> Self {
        let roots = cursor.roots().to_vec();
        let initial = SptTree::from_parents(emb, cursor.root(), cursor.parent_darts().to_vec())
            .unwrap_or_else(|e| panic!("cursor holds an invalid tree: {e}"));
        let mut changes = Vec::with_capacity(roots.len().saturating_sub(1));
        while let Some(added) = cursor.advance() {
            let added = added.to_vec();
            changes.push(ChangeSet {
                step: cursor.step(),
                added,
            });
        }
        SptSequence { roots, initial, changes }
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn initial(&self) -> &SptTree {
        &self.initial
    }

    /// Change set leading to step `j`, for `j >= 1`.
    pub fn changes(&self, j: usize) -> &[Dart] {
        &self.changes[j - 1].added
    }

    pub fn change_sets(&self) -> &[ChangeSet] {
        &self.changes
    }

    pub fn total_added(&self) -> usize {
        self.changes.iter().map(|c| c.added.len()).sum()
    }

    /// True when no dart is added at two different steps.
    pub fn once_per_dart(&self) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        self.changes.iter().flat_map(|c| &c.added).all(|d| seen.insert(*d))
    }

    /// A cursor replaying the stored change sets, `O(|changes|)` per step.
    pub fn replay<'a>(&'a self, emb: &'a PlanarEmbedding) -> ReplayCursor<'a> {
        ReplayCursor {
            emb,
            seq: self,
            step: 0,
            parent: self.initial.parent.clone(),
        }
    }

    /// Tree at step `j`, rebuilt by applying the first `j` change sets and
    /// validated.
    pub fn tree_at(&self, emb: &PlanarEmbedding, j: usize) -> SptTree {
        let mut cursor = self.replay(emb);
        while cursor.step() < j {
            cursor.advance();
        }
        SptTree::from_parents(emb, self.roots[j], cursor.parent)
            .unwrap_or_else(|e| panic!("replay produced an invalid tree: {e}"))
    }

    /// Darts of the path from `roots[j]` to `v` in the tree at step `j`.
    pub fn tree_path(&self, emb: &PlanarEmbedding, j: usize, v: Vertex) -> Vec<Dart> {
        self.tree_at(emb, j).path_to(emb, v)
    }

    /// One line per change set: `step j: +dart(tail->head) ...`.
    pub fn dump(&self, emb: &PlanarEmbedding) -> String {
        let mut out = String::new();
        for c in &self.changes {
            let _ = write!(out, "step {}:", c.step);
            for &d in &c.added {
                let _ = write!(out, " +{}({}->{})", d.0, emb.tail(d), emb.head(d));
            }
            out.push('\n');
        }
        out
    }
}

/// Replays a materialized [`SptSequence`].
pub struct ReplayCursor<'a> {
    emb: &'a PlanarEmbedding,
    seq: &'a SptSequence,
    step: usize,
    parent: Vec<Dart>,
}

impl TreeCursor for ReplayCursor<'_> {
    fn roots(&self) -> &[Vertex] {
        &self.seq.roots
    }

    fn step(&self) -> usize {
        self.step
    }

    fn parent_darts(&self) -> &[Dart] {
        &self.parent
    }

    fn advance(&mut self) -> Option<&[Dart]> {
        let root = *self.seq.roots.get(self.step + 1)?;
        self.step += 1;
        let added = &self.seq.changes[self.step - 1].added;
        for &d in added {
            self.parent[self.emb.head(d) as usize] = d;
        }
        self.parent[root as usize] = Dart::NONE;
        Some(added)
    }
}

/// Format helper shared by dumps: `tail->head`.
pub fn dart_label(emb: &PlanarEmbedding, d: Dart) -> String {
    format!("{}->{}", emb.tail(d), emb.head(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, grid, grid_boundary};

    #[test]
    fn c4_tree_at_a() {
        let emb = c4();
        let t = leftmost_spt(&emb, 0).unwrap();
        assert_eq!(t.depths(), &[0, 1, 2, 1]);
        // The search leaves 0 clockwise towards 1 first, so 2 hangs below 1.
        assert_eq!(t.parent_dart(2), emb.find_dart(1, 2));
        assert_eq!(t.parent_dart(1), emb.find_dart(0, 1));
        assert_eq!(t.parent_dart(3), emb.find_dart(0, 3));
        t.validate(&emb).unwrap();
    }

    #[test]
    fn g9_corner_depths() {
        let emb = grid(3, 3);
        let t = leftmost_spt(&emb, 0).unwrap();
        assert_eq!(t.depth(8), 4);
        t.validate(&emb).unwrap();
        // Path to the top-right corner runs along the top edge.
        let path = t.path_to(&emb, 2);
        assert_eq!(path, vec![emb.find_dart(0, 1).unwrap(), emb.find_dart(1, 2).unwrap()]);
        assert!(t.path_to(&emb, 0).is_empty());
    }

    #[test]
    fn leftmost_prefers_the_clockwise_side() {
        // From the top-left corner the leftmost path to the bottom-right
        // corner hugs the top row and then the right column.
        let emb = grid(3, 3);
        let t = leftmost_spt(&emb, 0).unwrap();
        let verts: Vec<Vertex> = t.path_to(&emb, 8).iter().map(|&d| emb.head(d)).collect();
        assert_eq!(verts, vec![1, 2, 5, 8]);
    }

    #[test]
    fn interior_root_is_rejected() {
        let emb = grid(3, 3);
        assert_eq!(leftmost_spt(&emb, 4).unwrap_err(), MsspError::RootNotOnOuterFace(4));
    }

    #[test]
    fn single_root_sequence() {
        let emb = grid(3, 3);
        let seq = spt_sequence(&emb, &[0], Mode::Reference).unwrap();
        assert!(seq.change_sets().is_empty());
        assert_eq!(seq.initial(), &leftmost_spt(&emb, 0).unwrap());
    }

    #[test]
    fn c4_two_roots() {
        let emb = c4();
        let seq = spt_sequence(&emb, &[0, 1], Mode::Reference).unwrap();
        // Tree at 0: 0->1, 0->3, 1->2. Tree at 1 (starting clockwise towards 2):
        // 1->2, 2->3, 1->0. Added: 1->0 (0 gets a parent) and 2->3.
        let mut added = seq.changes(1).to_vec();
        added.sort();
        let mut expect = vec![emb.find_dart(1, 0).unwrap(), emb.find_dart(2, 3).unwrap()];
        expect.sort();
        assert_eq!(added, expect);
        assert_eq!(seq.tree_at(&emb, 1), leftmost_spt(&emb, 1).unwrap());
        let dump = seq.dump(&emb);
        assert!(dump.starts_with("step 1:"));
        assert!(dump.contains("(1->0)"));
    }

    #[test]
    fn root_order_checks() {
        let emb = grid(3, 3);
        let b = grid_boundary(3, 3);
        assert!(check_roots(&emb, &[b[6], b[7], b[0], b[2]]).is_ok());
        assert_eq!(check_roots(&emb, &[b[2], b[1], b[0]]), Err(MsspError::RootsNotClockwise { index: 2 }));
        assert_eq!(check_roots(&emb, &[b[2], b[2]]), Err(MsspError::RootsNotClockwise { index: 1 }));
        assert_eq!(check_roots(&emb, &[b[2], b[5], b[1], b[3]]), Err(MsspError::RootsNotClockwise { index: 3 }));
        assert_eq!(check_roots(&emb, &[b[2], 4]), Err(MsspError::RootNotOnOuterFace(4)));
        assert_eq!(spt_sequence(&emb, &[0], Mode::Incremental), Err(MsspError::IncrementalUnavailable));
    }

    #[test]
    fn replay_matches_direct_trees_on_full_boundary() {
        for (w, h) in [(3, 3), (5, 4), (6, 7)] {
            let emb = grid(w, h);
            let roots = grid_boundary(w, h);
            let seq = spt_sequence(&emb, &roots, Mode::Reference).unwrap();
            let mut replay = seq.replay(&emb);
            loop {
                let j = replay.step();
                let direct = leftmost_spt(&emb, roots[j]).unwrap();
                assert_eq!(replay.parent_darts(), direct.parent_darts());
                assert_eq!(seq.tree_at(&emb, j), direct);
                if replay.advance().is_none() {
                    break;
                }
            }
        }
    }

    #[test]
    fn g9_full_boundary_change_volume() {
        let emb = grid(3, 3);
        let seq = spt_sequence(&emb, &grid_boundary(3, 3), Mode::Reference).unwrap();
        assert!(seq.total_added() <= 2 * emb.num_edges());
    }

    #[test]
    fn tree_paths_have_bfs_length() {
        let emb = grid(7, 5);
        let roots = grid_boundary(7, 5);
        let seq = spt_sequence(&emb, &roots, Mode::Reference).unwrap();
        for j in [0, 3, 9, 15] {
            let dist = bfs_distances(&emb, roots[j]);
            for v in 0..emb.num_vertices() as Vertex {
                let path = seq.tree_path(&emb, j, v);
                assert_eq!(path.len() as u32, dist[v as usize]);
                if let Some(first) = path.first() {
                    assert_eq!(emb.tail(*first), roots[j]);
                    assert_eq!(emb.head(*path.last().unwrap()), v);
                }
            }
        }
    }
}
