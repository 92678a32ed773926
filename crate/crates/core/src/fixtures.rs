//! Small hand-built embeddings used throughout the tests and examples.

use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::{PlanarEmbedding, RotationOrder, Vertex};

/// Id of the grid vertex in `row`, `col` of a grid with `width` columns.
pub fn grid_vertex(width: usize, row: usize, col: usize) -> Vertex {
    (row * width + col) as Vertex
}

/// Rotation lists and clockwise boundary of a `width` x `height` grid with
/// row 0 on top.
pub fn grid_lists(width: usize, height: usize) -> (Vec<Vec<Vertex>>, Vec<Vertex>) {
    assert!(width >= 2 && height >= 2);
    let id = |r: usize, c: usize| grid_vertex(width, r, c);
    let mut rotations = vec![Vec::new(); width * height];
    for r in 0..height {
        for c in 0..width {
            let list = &mut rotations[id(r, c) as usize];
            if c + 1 < width {
                list.push(id(r, c + 1));
            }
            if r > 0 {
                list.push(id(r - 1, c));
            }
            if c > 0 {
                list.push(id(r, c - 1));
            }
            if r + 1 < height {
                list.push(id(r + 1, c));
            }
        }
    }
    (rotations, grid_boundary(width, height))
}

/// Clockwise boundary of a grid, starting at the top-left corner.
pub fn grid_boundary(width: usize, height: usize) -> Vec<Vertex> {
    let id = |r: usize, c: usize| grid_vertex(width, r, c);
    let mut outer = Vec::with_capacity(2 * (width + height) - 4);
    outer.extend((0..width).map(|c| id(0, c)));
    outer.extend((1..height).map(|r| id(r, width - 1)));
    outer.extend((0..width - 1).rev().map(|c| id(height - 1, c)));
    outer.extend((1..height - 1).rev().map(|r| id(r, 0)));
    outer
}

pub fn grid(width: usize, height: usize) -> PlanarEmbedding {
    let (rotations, outer) = grid_lists(width, height);
    PlanarEmbedding::build(&rotations, &outer, RotationOrder::Ccw).expect("grid embedding")
}

/// The 4-cycle 0-1-2-3 with boundary listed clockwise as (0, 1, 2, 3).
pub fn c4() -> PlanarEmbedding {
    let rotations = vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]];
    PlanarEmbedding::build(&rotations, &[0, 1, 2, 3], RotationOrder::Ccw).expect("c4 embedding")
}

/// 5 x 5 grid carrying the seven nested pairs of the reference genealogy
/// figure: boundary order is
/// `t1 · s1 s2 s3 t3 s4 s5 t5 t4 t2 s6 s7 t7 t6 ·` starting at the
/// top-left corner, with the unlabeled vertex after `t1` closing the only
/// terminal-free walk of pair 1.
pub fn fig2() -> PlanarEmbedding {
    grid(5, 5)
}

/// Pairs of [`fig2`] as `(s_i, t_i)` in label order.
pub fn fig2_pairs() -> Vec<(Vertex, Vertex)> {
    let b = grid_boundary(5, 5);
    vec![
        (b[2], b[0]),
        (b[3], b[10]),
        (b[4], b[5]),
        (b[6], b[9]),
        (b[7], b[8]),
        (b[11], b[14]),
        (b[12], b[13]),
    ]
}
