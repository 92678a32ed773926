//! Non-crossing shortest paths between terminal pairs on the external face of
//! an undirected, unweighted plane graph.
//!
//! The pipeline is
//!
//! 1. [`embedding`]: a dart-based rotation system with a fixed external face,
//! 2. [`terminals`]: well-formedness, orientation and the genealogy tree of the pairs,
//! 3. [`mssp`]: leftmost shortest-path trees rooted along the external face,
//! 4. [`supergraph`]: the nested subgraphs `X_1 ⊆ … ⊆ X_k`,
//! 5. [`pathunion`]: the directed union `Y_k` of the non-crossing shortest paths,
//!
//! [`solve`] chains them; [`verify`] holds oracles that only look at the
//! embedding, and [`generate`] builds random instances for them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod embedding;
pub mod fixtures;
pub mod generate;
pub mod mssp;
pub mod pathunion;
pub mod solve;
pub mod supergraph;
pub mod terminals;
pub mod verify;

pub use embedding::{Dart, EmbeddingError, PlanarEmbedding, RotationOrder, Vertex};
pub use mssp::{Mode, MsspError};
pub use pathunion::{UnionError, UnionResult};
pub use solve::{solve, Solution, SolveError};
pub use supergraph::SupergraphTimeline;
pub use terminals::{GenealogyTree, NormalizedInstance, Pair, TerminalError};
pub use verify::{audit, AuditReport};
