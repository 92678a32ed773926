//! Seeded instance generation with coordinates for rendering.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ncsp_core::generate::{disk_lists, grid_lists, random_pairs, Lists};
use ncsp_core::{RotationOrder, Vertex};

use crate::format::Instance;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Grid { width: usize, height: usize, diagonal: f64 },
    Disk { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub kind: Kind,
    pub k: usize,
    /// Let pairs share terminals.
    pub shared: bool,
    /// Random integer weights in `1..=max_weight` when above 1.
    pub max_weight: i64,
    pub seed: u64,
}

pub fn generate(p: &GenParams) -> Result<(Instance, Vec<(Vertex, Vertex)>), GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (lists, coords) = match p.kind {
        Kind::Grid { width, height, diagonal } => {
            if width < 2 || height < 2 {
                return Err(GenError::ParamOutOfRange(format!("grid {width}x{height}: both sides must be at least 2")));
            }
            if !(0.0..=1.0).contains(&diagonal) {
                return Err(GenError::ParamOutOfRange(format!("diagonal probability {diagonal}")));
            }
            let lists = grid_lists(width, height, diagonal, &mut rng);
            let coords = (0..width * height).map(|v| ((v % width) as f64, (height - 1 - v / width) as f64)).collect();
            (lists, coords)
        }
        Kind::Disk { n } => {
            if n < 3 {
                return Err(GenError::ParamOutOfRange(format!("disk with {n} vertices: need at least 3")));
            }
            let lists = disk_lists(n, &mut rng);
            // Clockwise from the top of the unit circle.
            let coords = (0..n)
                .map(|i| {
                    let a = std::f64::consts::FRAC_PI_2 - std::f64::consts::TAU * i as f64 / n as f64;
                    (round6(a.cos()), round6(a.sin()))
                })
                .collect();
            (lists, coords)
        }
    };
    let Lists { rotations, outer } = lists;
    let r = outer.len();
    if 2 * p.k > r {
        return Err(GenError::ParamOutOfRange(format!("k = {} needs {} boundary vertices, have {r}", p.k, 2 * p.k)));
    }
    if p.max_weight < 1 {
        return Err(GenError::ParamOutOfRange(format!("max weight {}", p.max_weight)));
    }
    let mut inst = Instance {
        rotations,
        outer,
        coords: Some(coords),
        weights: None,
        order: RotationOrder::Ccw,
    };
    let emb = inst.embed().expect("generated lists embed");
    let pairs = random_pairs(&emb, p.k, p.shared, &mut rng);
    if p.max_weight > 1 {
        let mut weights = Vec::with_capacity(emb.num_edges());
        for (v, list) in inst.rotations.iter().enumerate() {
            for &u in list {
                if (v as Vertex) < u {
                    weights.push((v as Vertex, u, rng.gen_range(1..=p.max_weight)));
                }
            }
        }
        inst.weights = Some(weights);
    }
    Ok((inst, pairs))
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6 + 0.0
}
