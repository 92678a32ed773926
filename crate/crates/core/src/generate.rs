//! Random instances: grids with optional diagonals, triangulated polygons,
//! and well-formed terminal pairs.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::{EmbeddingError, PlanarEmbedding, RotationOrder, Vertex};
use crate::fixtures::grid_boundary;
use crate::terminals::check_well_formed;

/// Ccw rotation lists and clockwise boundary of an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lists {
    pub rotations: Vec<Vec<Vertex>>,
    pub outer: Vec<Vertex>,
}

impl Lists {
    pub fn embed(&self) -> Result<PlanarEmbedding, EmbeddingError> {
        PlanarEmbedding::build(&self.rotations, &self.outer, RotationOrder::Ccw)
    }
}

/// `width` x `height` grid, row 0 on top. Each cell independently gets one
/// diagonal with probability `diagonal`, in a random direction.
pub fn grid_lists<R: Rng + ?Sized>(width: usize, height: usize, diagonal: f64, rng: &mut R) -> Lists {
    assert!(width >= 2 && height >= 2);
    let id = |r: usize, c: usize| (r * width + c) as Vertex;
    // down_right[cell] / up_right[cell] for the cell whose top-left is (r, c).
    let cells = (width - 1) * (height - 1);
    let mut down_right = vec![false; cells];
    let mut up_right = vec![false; cells];
    if diagonal > 0.0 {
        for cell in 0..cells {
            if rng.gen_bool(diagonal.min(1.0)) {
                if rng.gen_bool(0.5) {
                    down_right[cell] = true;
                } else {
                    up_right[cell] = true;
                }
            }
        }
    }
    let cell = |r: usize, c: usize| r * (width - 1) + c;
    let mut rotations = vec![Vec::new(); width * height];
    for r in 0..height {
        for c in 0..width {
            let has_e = c + 1 < width;
            let has_n = r > 0;
            let has_w = c > 0;
            let has_s = r + 1 < height;
            let list = &mut rotations[id(r, c) as usize];
            if has_e {
                list.push(id(r, c + 1));
            }
            if has_n && has_e && up_right[cell(r - 1, c)] {
                list.push(id(r - 1, c + 1));
            }
            if has_n {
                list.push(id(r - 1, c));
            }
            if has_n && has_w && down_right[cell(r - 1, c - 1)] {
                list.push(id(r - 1, c - 1));
            }
            if has_w {
                list.push(id(r, c - 1));
            }
            if has_s && has_w && up_right[cell(r, c - 1)] {
                list.push(id(r + 1, c - 1));
            }
            if has_s {
                list.push(id(r + 1, c));
            }
            if has_s && has_e && down_right[cell(r, c)] {
                list.push(id(r + 1, c + 1));
            }
        }
    }
    Lists {
        rotations,
        outer: grid_boundary(width, height),
    }
}

/// Triangulated `n`-gon grown by inserting an ear on a uniformly random
/// boundary edge. Vertex ids follow the clockwise boundary order.
pub fn disk_lists<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Lists {
    assert!(n >= 3);
    // Labels here are insertion order; relabeled at the end.
    let mut ring: Vec<usize> = vec![0, 1, 2];
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    for v in 3..n {
        let j = rng.gen_range(0..ring.len());
        let a = ring[j];
        let b = ring[(j + 1) % ring.len()];
        ring.insert(j + 1, v);
        edges.push((a, v));
        edges.push((v, b));
    }
    let mut label = vec![0 as Vertex; n];
    for (pos, &v) in ring.iter().enumerate() {
        label[v] = pos as Vertex;
    }
    let mut rotations = vec![Vec::new(); n];
    for &(a, b) in &edges {
        let (a, b) = (label[a], label[b]);
        rotations[a as usize].push(b);
        rotations[b as usize].push(a);
    }
    // Points in convex position, ids clockwise: counterclockwise around v the
    // neighbors come in increasing (v - u) mod n.
    for (v, list) in rotations.iter_mut().enumerate() {
        list.sort_unstable_by_key(|&u| (v + n - u as usize) % n);
    }
    Lists {
        rotations,
        outer: (0..n as Vertex).collect(),
    }
}

/// Uniform random balanced parenthesis word with `k` pairs, as the matched
/// position pairs `(open, close)`.
pub fn random_matching<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut steps: Vec<i8> = Vec::with_capacity(2 * k + 1);
    steps.extend(core::iter::repeat(1).take(k));
    steps.extend(core::iter::repeat(-1).take(k + 1));
    steps.shuffle(rng);
    // Rotate to start right after the first minimum of the prefix sums, then
    // drop the trailing close.
    let mut sum = 0i64;
    let mut best = (0i64, 0usize);
    for (j, &s) in steps.iter().enumerate() {
        sum += s as i64;
        if sum < best.0 {
            best = (sum, j + 1);
        }
    }
    let len = steps.len();
    steps.rotate_left(best.1 % len);
    steps.pop();
    let mut stack = Vec::new();
    let mut out = Vec::with_capacity(k);
    for (j, &s) in steps.iter().enumerate() {
        if s > 0 {
            stack.push(j);
        } else {
            out.push((stack.pop().expect("balanced word"), j));
        }
    }
    out
}

/// `k` well-formed pairs on `2k ≤ r` boundary positions. With `shared`,
/// neighboring terminals of different pairs are then merged at random onto
/// one vertex; a merge that breaks well-formedness is retried a few times
/// before falling back to distinct terminals.
pub fn random_pairs<R: Rng + ?Sized>(emb: &PlanarEmbedding, k: usize, shared: bool, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    let outer = emb.outer();
    let r = outer.len();
    assert!(2 * k <= r, "not enough boundary vertices for {k} pairs");
    let mut pos: Vec<usize> = rand::seq::index::sample(rng, r, 2 * k).into_vec();
    pos.sort_unstable();
    let matching = random_matching(k, rng);
    let flips: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
    let build = |pos: &[usize]| -> Vec<(Vertex, Vertex)> {
        matching
            .iter()
            .zip(&flips)
            .map(|(&(a, b), &f)| if f { (outer[pos[a]], outer[pos[b]]) } else { (outer[pos[b]], outer[pos[a]]) })
            .collect()
    };
    let mut pairs = build(&pos);
    if shared && k > 1 {
        let mut partner = vec![0; 2 * k];
        for &(a, b) in &matching {
            partner[a] = b;
            partner[b] = a;
        }
        for _ in 0..8 {
            let mut merged = pos.clone();
            for j in 1..2 * k {
                if partner[j] != j - 1 && rng.gen_bool(0.3) {
                    merged[j] = merged[j - 1];
                }
            }
            let candidate = build(&merged);
            if check_well_formed(emb, &candidate).is_ok() {
                pairs = candidate;
                break;
            }
        }
    }
    pairs.shuffle(rng);
    pairs
}
