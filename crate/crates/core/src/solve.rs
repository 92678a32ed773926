//! End-to-end pipeline over one embedding and one list of raw pairs.

use alloc::vec::Vec;

use crate::embedding::{Dart, PlanarEmbedding, Vertex};
use crate::mssp::{self, Mode, MsspError, TreeCursor};
use crate::pathunion::{extract_union, materialize_all, UnionError, UnionResult};
use crate::supergraph::{build_supergraphs, source_roots, SupergraphTimeline};
use crate::terminals::{genealogy, normalize, GenealogyTree, NormalizedInstance, TerminalError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Terminals(#[from] TerminalError),
    #[error(transparent)]
    Mssp(#[from] MsspError),
    #[error(transparent)]
    Union(#[from] UnionError),
}

/// Everything the pipeline produced; pairs are in normalized order.
#[derive(Clone, Debug)]
pub struct Solution {
    pub instance: NormalizedInstance,
    pub genealogy: GenealogyTree,
    pub timeline: SupergraphTimeline,
    pub union: UnionResult,
    pub paths: Vec<Vec<Dart>>,
}

impl Solution {
    /// `|ρ_i|` in normalized order.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(Vec::len).collect()
    }

    /// Lengths in the order the raw pairs were given.
    pub fn input_lengths(&self) -> Vec<usize> {
        let mut out = alloc::vec![0; self.paths.len()];
        for (i, p) in self.paths.iter().enumerate() {
            out[self.instance.input_index(i)] = p.len();
        }
        out
    }
}

pub fn solve(emb: &PlanarEmbedding, pairs: &[(Vertex, Vertex)], mode: Mode) -> Result<Solution, SolveError> {
    let instance = normalize(emb, pairs)?;
    let (roots, _) = source_roots(&instance);
    if roots.is_empty() {
        return solve_with_cursor(emb, instance, &mut NoCursor);
    }
    let mut cursor = mssp::cursor(emb, &roots, mode)?;
    solve_with_cursor(emb, instance, &mut cursor)
}

/// Same as [`solve`], consuming a caller-supplied cursor positioned at the
/// first source of `instance`.
pub fn solve_with_cursor(emb: &PlanarEmbedding, instance: NormalizedInstance, cursor: &mut impl TreeCursor) -> Result<Solution, SolveError> {
    let genealogy = genealogy(&instance)?;
    let timeline = build_supergraphs(emb, &instance, cursor);
    let union = extract_union(emb, &timeline, &instance)?;
    let paths = materialize_all(emb, &union, &genealogy)?;
    Ok(Solution {
        instance,
        genealogy,
        timeline,
        union,
        paths,
    })
}

// k = 0: nothing is ever asked of the cursor.
struct NoCursor;

impl TreeCursor for NoCursor {
    fn roots(&self) -> &[Vertex] {
        &[]
    }
    fn step(&self) -> usize {
        0
    }
    fn parent_darts(&self) -> &[Dart] {
        &[]
    }
    fn advance(&mut self) -> Option<&[Dart]> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig2, fig2_pairs, grid};
    use crate::mssp::bfs_distances;

    #[test]
    fn corner_pair_on_g9() {
        let emb = grid(3, 3);
        let sol = solve(&emb, &[(0, 8)], Mode::Reference).unwrap();
        assert_eq!(sol.lengths(), [4]);
    }

    #[test]
    fn fig2_matches_bfs_in_input_order() {
        let emb = fig2();
        let raw = fig2_pairs();
        let sol = solve(&emb, &raw, Mode::Reference).unwrap();
        for (j, &(a, b)) in raw.iter().enumerate() {
            assert_eq!(sol.input_lengths()[j] as u32, bfs_distances(&emb, a)[b as usize]);
        }
    }

    #[test]
    fn no_pairs() {
        let sol = solve(&grid(3, 3), &[], Mode::Reference).unwrap();
        assert!(sol.paths.is_empty());
        assert!(sol.union.y_darts().next().is_none());
    }

    #[test]
    fn incremental_is_reported_missing() {
        let err = solve(&grid(3, 3), &[(0, 8)], Mode::Incremental).unwrap_err();
        assert_eq!(err, SolveError::Mssp(MsspError::IncrementalUnavailable));
    }
}
