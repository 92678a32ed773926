//! Oracles that only read the embedding: distances, crossings, distance
//! preservation inside regions, and a full audit of a solved instance.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt::Write;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::{Dart, PlanarEmbedding, RegionSubgraph, Vertex};
use crate::pathunion::UnionResult;
use crate::supergraph::SupergraphTimeline;
use crate::terminals::{GenealogyTree, NormalizedInstance};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("walk is not a simple path at position {position}")]
    NotAPath { position: usize },
}

/// Hop distance from `a` to `b` in the whole graph.
pub fn bfs_distance(emb: &PlanarEmbedding, a: Vertex, b: Vertex) -> Option<u32> {
    bfs_from(emb, a, |_| true)[b as usize]
}

/// Hop distance from `a` to `b` using only edges of `region`.
pub fn bfs_distance_in(emb: &PlanarEmbedding, region: &RegionSubgraph, a: Vertex, b: Vertex) -> Option<u32> {
    if !region.contains_vertex(a) || !region.contains_vertex(b) {
        return None;
    }
    bfs_from(emb, a, |e| region.contains_edge(e))[b as usize]
}

/// Distances from `a` over the edges accepted by `edge_ok`.
pub fn bfs_from(emb: &PlanarEmbedding, a: Vertex, edge_ok: impl Fn(usize) -> bool) -> Vec<Option<u32>> {
    let mut dist = vec![None; emb.num_vertices()];
    let mut queue = VecDeque::new();
    dist[a as usize] = Some(0);
    queue.push_back(a);
    while let Some(v) = queue.pop_front() {
        let next = dist[v as usize].unwrap() + 1;
        for d in emb.rotation(v) {
            if !edge_ok(d.edge()) {
                continue;
            }
            let u = emb.head(d) as usize;
            if dist[u].is_none() {
                dist[u] = Some(next);
                queue.push_back(u as Vertex);
            }
        }
    }
    dist
}

/// Weighted single-source distances; `weight[e]` is the length of edge `e`.
pub fn dijkstra(emb: &PlanarEmbedding, weight: &[u64], source: Vertex) -> Vec<Option<u64>> {
    let mut dist: Vec<Option<u64>> = vec![None; emb.num_vertices()];
    let mut heap = BinaryHeap::new();
    dist[source as usize] = Some(0);
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((dv, v))) = heap.pop() {
        if dist[v as usize] != Some(dv) {
            continue;
        }
        for d in emb.rotation(v) {
            let u = emb.head(d) as usize;
            let nd = dv + weight[d.edge()];
            if dist[u].map_or(true, |x| nd < x) {
                dist[u] = Some(nd);
                heap.push(Reverse((nd, u as Vertex)));
            }
        }
    }
    dist
}

/// Vertex sequence of a dart path starting at `start`.
pub fn path_vertices(emb: &PlanarEmbedding, start: Vertex, darts: &[Dart]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(darts.len() + 1);
    out.push(start);
    out.extend(darts.iter().map(|&d| emb.head(d)));
    out
}

fn check_simple(emb: &PlanarEmbedding, p: &[Vertex]) -> Result<(), VerifyError> {
    let mut seen = BTreeSet::new();
    for (j, &v) in p.iter().enumerate() {
        if v as usize >= emb.num_vertices() || !seen.insert(v) {
            return Err(VerifyError::NotAPath { position: j });
        }
        if j > 0 && emb.find_dart(p[j - 1], v).is_none() {
            return Err(VerifyError::NotAPath { position: j });
        }
    }
    Ok(())
}

/// Whether two simple paths cross. Each maximal common subpath (a single
/// shared vertex included) is contracted to a point, and the paths cross
/// there when the darts by which they leave it alternate around that point.
/// Returns a vertex of the first crossing run.
pub fn check_noncrossing(emb: &PlanarEmbedding, p: &[Vertex], q: &[Vertex]) -> Result<Option<Vertex>, VerifyError> {
    check_simple(emb, p)?;
    check_simple(emb, q)?;
    let qpos: BTreeMap<Vertex, usize> = q.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let mut a = 0;
    while a < p.len() {
        let Some(&x) = qpos.get(&p[a]) else {
            a += 1;
            continue;
        };
        // Grow the run in whichever direction q follows p.
        let mut dir = 0isize;
        let mut b = a;
        for cand in [1isize, -1] {
            let y = x as isize + cand;
            if a + 1 < p.len() && y >= 0 && (y as usize) < q.len() && q[y as usize] == p[a + 1] {
                dir = cand;
                break;
            }
        }
        if dir != 0 {
            while b + 1 < p.len() {
                let y = x as isize + dir * (b + 1 - a) as isize;
                if y < 0 || y as usize >= q.len() || q[y as usize] != p[b + 1] {
                    break;
                }
                b += 1;
            }
        }
        if run_crosses(emb, p, q, a, b, x, dir) {
            return Ok(Some(p[a]));
        }
        a = b + 1;
    }
    Ok(None)
}

fn run_crosses(emb: &PlanarEmbedding, p: &[Vertex], q: &[Vertex], a: usize, b: usize, x: usize, dir: isize) -> bool {
    let run = &p[a..=b];
    // q indices of the run ends: run[0] = q[x], run[L] = q[x + dir * L].
    let l = b - a;
    let y = (x as isize + dir * l as isize) as usize;
    if a == 0 || b + 1 == p.len() {
        return false;
    }
    let (q_lo, q_hi) = (x.min(y), x.max(y));
    if q_lo == 0 || q_hi + 1 == q.len() {
        return false;
    }
    let dart = |u: Vertex, v: Vertex| emb.find_dart(u, v).expect("consecutive path vertices are adjacent");
    let p_in = dart(run[0], p[a - 1]);
    let p_out = dart(run[l], p[b + 1]);
    let q_lo_end = q[q_lo];
    let q_hi_end = q[q_hi];
    let q_a = dart(q_lo_end, q[q_lo - 1]);
    let q_b = dart(q_hi_end, q[q_hi + 1]);

    let order = blob_order(emb, run);
    let rank = |d: Dart| order.iter().position(|&c| c == d);
    let (Some(r1), Some(r2), Some(r3), Some(r4)) = (rank(p_in), rank(p_out), rank(q_a), rank(q_b)) else {
        return false;
    };
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    let inside = |r: usize| lo < r && r < hi;
    inside(r3) != inside(r4)
}

/// Counterclockwise order of the darts leaving the contracted path `run`.
fn blob_order(emb: &PlanarEmbedding, run: &[Vertex]) -> Vec<Dart> {
    let l = run.len() - 1;
    let mut out = Vec::new();
    let d = |u: Vertex, v: Vertex| emb.find_dart(u, v).expect("run is a path");
    if l == 0 {
        out.extend(emb.rotation(run[0]));
        return out;
    }
    let sweep = |out: &mut Vec<Dart>, from: Dart, to: Dart| {
        let mut c = emb.next_ccw(from);
        while c != to {
            out.push(c);
            c = emb.next_ccw(c);
        }
    };
    let back = d(run[l], run[l - 1]);
    sweep(&mut out, back, back);
    for j in (1..l).rev() {
        sweep(&mut out, d(run[j], run[j + 1]), d(run[j], run[j - 1]));
    }
    let fwd = d(run[0], run[1]);
    sweep(&mut out, fwd, fwd);
    for j in 1..l {
        sweep(&mut out, d(run[j], run[j - 1]), d(run[j], run[j + 1]));
    }
    out
}

/// How the ISP check chooses vertex pairs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IspMode {
    /// Every pair of vertices of every region of every `X_j`.
    Exhaustive,
    /// About `samples` (region, a, b) triples.
    Sampled { samples: usize },
}

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Length { pair: usize, found: usize, expected: Option<u32> },
    Crossing { first: usize, second: usize, vertex: Vertex },
    NotAPath { pair: usize },
    SiblingsShareDart { first: usize, second: usize, dart: Dart },
    AncestorChainBroken { ancestor: usize, descendant: usize, via: usize, dart: Dart },
    UnionMissing { dart: Dart },
    UnionExtra { dart: Dart },
    Distance { step: usize, face: usize, a: Vertex, b: Vertex, region: Option<u32>, global: Option<u32> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<Witness>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of a group of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<CheckResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check: `name pass|fail checked [first witness]`.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "{} {} {}", c.name, if c.passed() { "pass" } else { "fail" }, c.checked);
            if let Some(w) = c.failures.first() {
                let _ = write!(out, " {:?}", w);
            }
            out.push('\n');
        }
        out
    }
}

/// Runs every structural check on the materialized paths `paths`
/// (`paths[i]` starts at `s_i`).
pub fn audit(
    emb: &PlanarEmbedding,
    inst: &NormalizedInstance,
    gen: &GenealogyTree,
    res: &UnionResult,
    paths: &[Vec<Dart>],
) -> AuditReport {
    let k = inst.len();
    let mut short = CheckResult::new("shortest");
    let mut cross = CheckResult::new("noncrossing");
    let mut siblings = CheckResult::new("siblings");
    let mut chains = CheckResult::new("ancestors");
    let mut union = CheckResult::new("union");

    let mut verts: Vec<Vec<Vertex>> = Vec::with_capacity(k);
    for i in 0..k {
        let p = inst.pair(i);
        let vs = path_vertices(emb, p.s, &paths[i]);
        let connected = paths[i].windows(2).all(|w| emb.head(w[0]) == emb.tail(w[1]))
            && paths[i].first().map_or(p.s == p.t, |d| emb.tail(*d) == p.s)
            && *vs.last().unwrap() == p.t;
        short.checked += 1;
        if !connected {
            short.failures.push(Witness::NotAPath { pair: i });
        } else {
            let expected = bfs_distance(emb, p.s, p.t);
            if expected != Some(paths[i].len() as u32) {
                short.failures.push(Witness::Length {
                    pair: i,
                    found: paths[i].len(),
                    expected,
                });
            }
        }
        verts.push(vs);
    }

    for i in 0..k {
        for j in i + 1..k {
            cross.checked += 1;
            match check_noncrossing(emb, &verts[i], &verts[j]) {
                Ok(None) => {}
                Ok(Some(v)) => cross.failures.push(Witness::Crossing { first: i, second: j, vertex: v }),
                Err(_) => cross.failures.push(Witness::NotAPath { pair: i }),
            }
        }
    }

    let sets: Vec<BTreeSet<Dart>> = paths.iter().map(|p| p.iter().copied().collect()).collect();
    for i in 0..k {
        for j in i + 1..k {
            if gen.comparable(i, j) {
                let (anc, desc) = if gen.is_ancestor(i, j) { (i, j) } else { (j, i) };
                chains.checked += 1;
                let between: Vec<usize> = gen.ancestors(desc).take_while(|&l| l != anc).collect();
                'outer: for d in sets[anc].intersection(&sets[desc]) {
                    for &l in &between {
                        if !sets[l].contains(d) {
                            chains.failures.push(Witness::AncestorChainBroken {
                                ancestor: anc,
                                descendant: desc,
                                via: l,
                                dart: *d,
                            });
                            break 'outer;
                        }
                    }
                }
            } else {
                siblings.checked += 1;
                if let Some(d) = sets[i].intersection(&sets[j]).next() {
                    siblings.failures.push(Witness::SiblingsShareDart {
                        first: i,
                        second: j,
                        dart: *d,
                    });
                }
            }
        }
    }

    let all: BTreeSet<Dart> = sets.iter().flatten().copied().collect();
    let y: BTreeSet<Dart> = res.y_darts().collect();
    union.checked = all.len().max(y.len());
    if let Some(d) = all.difference(&y).next() {
        union.failures.push(Witness::UnionMissing { dart: *d });
    }
    if let Some(d) = y.difference(&all).next() {
        union.failures.push(Witness::UnionExtra { dart: *d });
    }

    AuditReport {
        checks: vec![short, cross, siblings, chains, union],
    }
}

/// Distance preservation: for faces of `X_j ∪ f^∞` and vertices `a`, `b` of
/// their regions, the distance inside the region equals the distance in the
/// graph. `steps` lists the one-based iterations to check.
pub fn check_isp_preservation<R: Rng + ?Sized>(
    emb: &PlanarEmbedding,
    tl: &SupergraphTimeline,
    steps: &[usize],
    mode: IspMode,
    rng: &mut R,
) -> CheckResult {
    let mut out = CheckResult::new("isp");
    if steps.is_empty() {
        return out;
    }
    let faces = emb.faces();
    let outer = emb.outer_face();
    let on_outer = |e: usize| emb.face_of(Dart(2 * e as u32)) == outer || emb.face_of(Dart(2 * e as u32 + 1)) == outer;

    match mode {
        IspMode::Exhaustive => {
            let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
            let mut global: Vec<Option<Vec<Option<u32>>>> = vec![None; emb.num_vertices()];
            for &j in steps {
                let (group, count) = emb.group_faces(&faces, |e| tl.in_x(e, j) || on_outer(e));
                let mut members: Vec<Vec<u32>> = vec![Vec::new(); count];
                for (f, &g) in group.iter().enumerate() {
                    if f != outer {
                        members[g as usize].push(f as u32);
                    }
                }
                for (g, fs) in members.into_iter().enumerate() {
                    if fs.is_empty() || !seen.insert(fs.clone()) {
                        continue;
                    }
                    let region = RegionSubgraph::from_faces(emb, &faces, |f| group[f] == g as u32 && f != outer);
                    for &a in region.vertices() {
                        let inside = bfs_from(emb, a, |e| region.contains_edge(e));
                        let whole = global[a as usize].get_or_insert_with(|| bfs_from(emb, a, |_| true));
                        for &b in region.vertices() {
                            if b <= a {
                                continue;
                            }
                            out.checked += 1;
                            if inside[b as usize] != whole[b as usize] {
                                out.failures.push(Witness::Distance {
                                    step: j,
                                    face: fs[0] as usize,
                                    a,
                                    b,
                                    region: inside[b as usize],
                                    global: whole[b as usize],
                                });
                            }
                        }
                    }
                }
            }
        }
        IspMode::Sampled { samples } => {
            const PER_SOURCE: usize = 20;
            let mut done = 0;
            while done < samples {
                let j = *steps.choose(rng).unwrap();
                let f0 = loop {
                    let f = rng.gen_range(0..faces.len());
                    if f != outer {
                        break f;
                    }
                };
                let (group, _) = emb.group_faces(&faces, |e| tl.in_x(e, j) || on_outer(e));
                let g = group[f0];
                let region = RegionSubgraph::from_faces(emb, &faces, |f| group[f] == g && f != outer);
                let a = *region.vertices().choose(rng).unwrap();
                let inside = bfs_from(emb, a, |e| region.contains_edge(e));
                let whole = bfs_from(emb, a, |_| true);
                for _ in 0..PER_SOURCE.min(samples - done) {
                    let b = *region.vertices().choose(rng).unwrap();
                    out.checked += 1;
                    done += 1;
                    if inside[b as usize] != whole[b as usize] {
                        out.failures.push(Witness::Distance {
                            step: j,
                            face: f0,
                            a,
                            b,
                            region: inside[b as usize],
                            global: whole[b as usize],
                        });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, grid, grid_vertex};

    #[test]
    fn small_distances() {
        let g9 = grid(3, 3);
        assert_eq!(bfs_distance(&g9, 4, 4), Some(0));
        assert_eq!(bfs_distance(&g9, 0, 8), Some(4));
        assert_eq!(bfs_distance(&c4(), 0, 2), Some(2));
    }

    #[test]
    fn crossing_at_the_center() {
        let g9 = grid(3, 3);
        let v = |r, c| grid_vertex(3, r, c);
        // West-east and north-south through the center.
        let p = [v(1, 0), v(1, 1), v(1, 2)];
        let q = [v(0, 1), v(1, 1), v(2, 1)];
        assert_eq!(check_noncrossing(&g9, &p, &q).unwrap(), Some(v(1, 1)));
        assert_eq!(check_noncrossing(&g9, &q, &p).unwrap(), Some(v(1, 1)));
        // West-north touches without crossing.
        let r = [v(1, 0), v(1, 1), v(0, 1)];
        let s = [v(2, 1), v(1, 1), v(1, 2)];
        assert_eq!(check_noncrossing(&g9, &r, &s).unwrap(), None);
    }

    #[test]
    fn shared_edge_then_same_side() {
        let g9 = grid(3, 3);
        let v = |r, c| grid_vertex(3, r, c);
        // Both come from the west column, share the middle row, leave upward.
        let p = [v(0, 0), v(1, 0), v(1, 1), v(1, 2), v(0, 2)];
        let q = [v(2, 0), v(1, 0), v(1, 1), v(1, 2), v(2, 2)];
        assert_eq!(check_noncrossing(&g9, &p, &q).unwrap(), None);
        // Swapping one exit makes them cross along the shared segment.
        let q2 = [v(2, 0), v(1, 0), v(1, 1), v(0, 1)];
        let p2 = [v(0, 0), v(1, 0), v(1, 1), v(2, 1)];
        assert_eq!(check_noncrossing(&g9, &p2, &q2).unwrap(), Some(v(1, 0)));
        // Opposite directions over the shared part.
        let q3: Vec<_> = q2.iter().rev().copied().collect();
        assert_eq!(check_noncrossing(&g9, &p2, &q3).unwrap(), Some(v(1, 0)));
    }

    #[test]
    fn disjoint_and_endpoint_contacts() {
        let g9 = grid(3, 3);
        let v = |r, c| grid_vertex(3, r, c);
        assert_eq!(check_noncrossing(&g9, &[v(0, 0), v(0, 1)], &[v(2, 0), v(2, 1)]).unwrap(), None);
        // q ends on p's interior vertex.
        assert_eq!(check_noncrossing(&g9, &[v(1, 0), v(1, 1), v(1, 2)], &[v(0, 1), v(1, 1)]).unwrap(), None);
        assert!(check_noncrossing(&g9, &[v(0, 0), v(1, 1)], &[v(2, 0)]).is_err());
    }

    #[test]
    fn dijkstra_matches_bfs_on_unit_weights() {
        let g = grid(4, 3);
        let w = vec![1; g.num_edges()];
        let d = dijkstra(&g, &w, 0);
        let b = bfs_from(&g, 0, |_| true);
        for v in 0..g.num_vertices() {
            assert_eq!(d[v], b[v].map(u64::from));
        }
    }
}
