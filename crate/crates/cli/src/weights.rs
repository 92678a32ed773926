//! Positive integer edge weights turned into unit-length paths.

use std::collections::HashMap;

use ncsp_core::Vertex;

use crate::format::Instance;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("edge {u}-{v} has non-positive weight {w}")]
    NonPositiveWeight { u: Vertex, v: Vertex, w: i64 },
    #[error("subdivision needs {needed} new vertices, cap is {cap}")]
    WeightCapExceeded { needed: u64, cap: u64 },
    #[error("instance has no weights section")]
    Missing,
    #[error("weight given for {u}-{v}, which is not an edge (or given twice)")]
    UnknownEdge { u: Vertex, v: Vertex },
}

/// Result of [`subdivide_weights`]. Original vertices keep their ids;
/// `map[v]` is the new id of original vertex `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subdivided {
    pub instance: Instance,
    pub map: Vec<Vertex>,
}

/// Replaces every weight-`r` edge by a path of `r` unit edges through
/// `r - 1` fresh vertices, spliced into both rotation lists and the
/// boundary. Edges without a weight line count as weight 1. `cap` bounds the
/// number of fresh vertices.
pub fn subdivide_weights(inst: &Instance, cap: u64) -> Result<Subdivided, WeightError> {
    let weights = inst.weights.as_ref().ok_or(WeightError::Missing)?;
    let n = inst.rotations.len();
    let key = |u: Vertex, v: Vertex| (u.min(v), u.max(v));
    let mut edges: HashMap<(Vertex, Vertex), i64> = HashMap::new();
    for (v, list) in inst.rotations.iter().enumerate() {
        for &u in list {
            edges.insert(key(v as Vertex, u), 1);
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut needed = 0u64;
    for &(u, v, w) in weights {
        if w < 1 {
            return Err(WeightError::NonPositiveWeight { u, v, w });
        }
        let slot = edges.get_mut(&key(u, v)).filter(|_| seen.insert(key(u, v))).ok_or(WeightError::UnknownEdge { u, v })?;
        *slot = w;
        needed += (w - 1) as u64;
    }
    if needed > cap {
        return Err(WeightError::WeightCapExceeded { needed, cap });
    }

    // Chain of fresh vertices from the smaller endpoint to the larger one,
    // allocated in sorted edge order so ids are reproducible.
    let mut keys: Vec<(Vertex, Vertex)> = edges.keys().copied().collect();
    keys.sort_unstable();
    let mut chain: HashMap<(Vertex, Vertex), Vec<Vertex>> = HashMap::new();
    let mut next = n as Vertex;
    let mut rotations = inst.rotations.clone();
    let mut coords = inst.coords.clone();
    for &(a, b) in &keys {
        let w = edges[&(a, b)];
        if w == 1 {
            continue;
        }
        let ids: Vec<Vertex> = (next..next + (w - 1) as Vertex).collect();
        next += (w - 1) as Vertex;
        for j in 0..ids.len() {
            let prev = if j == 0 { a } else { ids[j - 1] };
            let succ = if j + 1 == ids.len() { b } else { ids[j + 1] };
            rotations.push(vec![succ, prev]);
            if let Some(c) = coords.as_mut() {
                let (pa, pb) = (c[a as usize], c[b as usize]);
                let t = (j + 1) as f64 / w as f64;
                c.push((pa.0 + t * (pb.0 - pa.0), pa.1 + t * (pb.1 - pa.1)));
            }
        }
        chain.insert((a, b), ids);
    }
    // Neighbor of `v` towards `u` after subdivision.
    let first_towards = |v: Vertex, u: Vertex| -> Vertex {
        match chain.get(&key(v, u)) {
            None => u,
            Some(ids) if v < u => ids[0],
            Some(ids) => *ids.last().unwrap(),
        }
    };
    for v in 0..n {
        for slot in 0..rotations[v].len() {
            let u = rotations[v][slot];
            rotations[v][slot] = first_towards(v as Vertex, u);
        }
    }
    let mut outer = Vec::with_capacity(inst.outer.len() + needed as usize);
    let r = inst.outer.len();
    for j in 0..r {
        let (a, b) = (inst.outer[j], inst.outer[(j + 1) % r]);
        outer.push(a);
        if let Some(ids) = chain.get(&key(a, b)) {
            if a < b {
                outer.extend(ids.iter().copied());
            } else {
                outer.extend(ids.iter().rev().copied());
            }
        }
    }
    Ok(Subdivided {
        instance: Instance {
            rotations,
            outer,
            coords,
            weights: None,
            order: inst.order,
        },
        map: (0..n as Vertex).collect(),
    })
}
