//! File formats, generators, weight subdivision, rendering and benchmarks
//! around `ncsp-core`, plus the command implementations behind the `ncsp`
//! binary.

pub mod bench;
pub mod commands;
pub mod format;
pub mod gen;
pub mod render;
pub mod weights;
