use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::ballean::set_radius;
use crate::error::Result;
use crate::graph::{Truncation, VertexId};
use crate::ray::Arrow;

/// Distance from each vertex to the arrow, summarized per layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRadius {
    /// Max over the measured layers.
    pub r: u64,
    /// `per_layer[n]` = max over v ∈ S(a₀, n) of d(v, A).
    pub per_layer: Vec<u64>,
    /// Whether every distance on layer n is certified.
    pub exact: Vec<bool>,
    /// Nearest arrow index per vertex (canonical order, least index on ties).
    pub assignment: Vec<usize>,
}

/// Sphere radii with their least centers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereRadii {
    pub alpha: u64,
    pub radii: Vec<u64>,
    pub centers: Vec<VertexId>,
    pub exact: Vec<bool>,
}

/// d(v, A) for v on layers 0..=`last_layer`.
///
/// A FIFO search seeded with the arrow in index order keeps every BFS level
/// sorted by label, so each vertex inherits the least index at its distance.
pub fn cover_radius(t: &Truncation, arrow: &Arrow, last_layer: usize) -> Result<CoverRadius> {
    const UNSEEN: usize = usize::MAX;
    let mut dist = vec![u64::MAX; t.len()];
    let mut label = vec![UNSEEN; t.len()];
    let mut queue = VecDeque::new();
    for (n, &a) in arrow.vertices().iter().enumerate() {
        let i = t.idx(a)?;
        dist[i] = 0;
        label[i] = n;
        queue.push_back(i);
    }
    while let Some(x) = queue.pop_front() {
        for &y in t.adj_at(x) {
            if label[y] == UNSEEN {
                dist[y] = dist[x] + 1;
                label[y] = label[x];
                queue.push_back(y);
            }
        }
    }
    let end = t.layer_offset(last_layer + 1);
    let mut per_layer = vec![0u64; last_layer + 1];
    let mut exact = vec![true; last_layer + 1];
    for (i, &d) in dist.iter().enumerate().take(end) {
        let n = t.layer_at(i);
        per_layer[n] = per_layer[n].max(d);
        if d > 0 && !t.distances_exact() && !t.ball_exact(n, d - 1) {
            exact[n] = false;
        }
    }
    Ok(CoverRadius {
        r: per_layer.iter().copied().max().unwrap_or(0),
        per_layer,
        exact,
        assignment: label[..end].to_vec(),
    })
}

/// Exact 1-center radius of each sphere S(a₀, n), n <= `last_layer`.
pub fn sphere_uniform_radius(t: &Truncation, last_layer: usize) -> Result<SphereRadii> {
    let mut out = SphereRadii {
        alpha: 0,
        radii: Vec::with_capacity(last_layer + 1),
        centers: Vec::with_capacity(last_layer + 1),
        exact: Vec::with_capacity(last_layer + 1),
    };
    for n in 0..=last_layer {
        let r = set_radius(t, t.layer(n))?;
        out.alpha = out.alpha.max(r.radius);
        out.radii.push(r.radius);
        out.centers.push(r.center);
        out.exact.push(r.exact);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{explore, GeneratorSpec};
    use crate::ray::find_arrow;

    fn trunc(spec: &str, depth: usize) -> Truncation {
        explore(&spec.parse::<GeneratorSpec>().unwrap(), VertexId(0), depth).unwrap()
    }

    #[test]
    fn cover_radius_of_small_families() {
        for (spec, r) in [("ray", 0), ("comb:inf", 1), ("ladder:inf", 1)] {
            let t = trunc(spec, 30);
            let c = cover_radius(&t, &find_arrow(&t).unwrap(), 28).unwrap();
            assert_eq!(c.r, r, "{spec}");
            assert!(c.exact.iter().all(|&e| e), "{spec}");
        }
    }

    #[test]
    fn comb_teeth_are_assigned_to_their_spine_vertex() {
        let t = trunc("comb:inf", 10);
        let c = cover_radius(&t, &find_arrow(&t).unwrap(), 10).unwrap();
        for (i, &v) in t.vertices().iter().enumerate() {
            let n = if v.0 % 2 == 0 { v.0 / 2 } else { (v.0 - 3) / 2 };
            assert_eq!(c.assignment[i], n as usize, "{v}");
        }
    }

    #[test]
    fn binary_tree_cover_grows() {
        let t = trunc("kary:2:inf", 8);
        let c = cover_radius(&t, &find_arrow(&t).unwrap(), 8).unwrap();
        // the right subtree of the root hangs off a₀ and reaches layer n
        assert_eq!(c.per_layer, (0..=8).collect::<Vec<u64>>());
    }

    #[test]
    fn ladder_spheres_have_radius_one() {
        let t = trunc("ladder:inf", 20);
        let s = sphere_uniform_radius(&t, 18).unwrap();
        assert_eq!(s.alpha, 1);
        assert_eq!(s.radii[0], 0);
        assert!(s.radii[1..].iter().all(|&r| r == 1));
        assert!(s.exact.iter().all(|&e| e));
    }
}
