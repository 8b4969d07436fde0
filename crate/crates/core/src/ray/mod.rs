//! Deciding whether a graph is asymorphic to the ray.
//!
//! Given a bounded-degree graph and an arrow (a geodesic ray a₀, a₁, … from
//! the root), three statements are equivalent: the graph is an asymptotic
//! ray; every vertex lies within some fixed r of the arrow; the spheres
//! S(a₀, n) are uniformly bounded. For trees a fourth one joins them: the
//! pieces T(aₙ) left after deleting the arrow's edges have bounded size.
//!
//! [`certify_ray`] evaluates the criteria layer by layer on a truncation and
//! cross-checks them against each other; [`tree_decompose`] and
//! [`component_size_decide`] run the tree criterion independently.

mod certify;
mod criteria;
mod tree;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Truncation, VertexId};
use crate::morphisms::VertexMap;

pub use certify::{
    certify_ray, Evidence, LayerProfile, MarginPolicy, RayAnalysis, RayCertificate, Refutation,
    Scope, Verdict,
};
pub use criteria::{cover_radius, sphere_uniform_radius, CoverRadius, SphereRadii};
pub use tree::{
    check_tree_agreement, component_size_decide, tree_decompose, ComponentSizeVerdict,
    TreeDecomposition,
};

/// A prefix a₀, …, a_N of an arrow: consecutive vertices are adjacent and
/// aᵢ lies on layer i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    vertices: Vec<VertexId>,
}

impl Arrow {
    /// Validates the arrow conditions against `t`.
    pub fn new(t: &Truncation, vertices: Vec<VertexId>) -> Result<Self> {
        for (i, &v) in vertices.iter().enumerate() {
            if t.layer_of(v)? != i {
                return Err(Error::Consistency(format!(
                    "arrow vertex {v} is not on layer {i}"
                )));
            }
            if i > 0 && !t.neighbors(v)?.contains(&vertices[i - 1]) {
                return Err(Error::Consistency(format!(
                    "arrow vertices {} and {v} are not adjacent",
                    vertices[i - 1]
                )));
            }
        }
        if vertices.is_empty() {
            return Err(Error::Contract("an arrow has at least one vertex".into()));
        }
        Ok(Arrow { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn base(&self) -> VertexId {
        self.vertices[0]
    }

    /// Index of the last vertex.
    pub fn end(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<VertexId> {
        self.vertices.get(n).copied()
    }
}

/// Walks parent pointers up from the least vertex of layer N.
pub fn find_arrow(t: &Truncation) -> Result<Arrow> {
    if t.depth() == 0 {
        return Err(Error::Contract("an arrow needs depth >= 1".into()));
    }
    let deepest = t.layer_count() - 1;
    if deepest < t.depth() {
        return Err(Error::ArrowTooShort {
            reached: deepest,
            requested: t.depth(),
        });
    }
    let mut path = vec![t.layer(t.depth())[0]];
    while let Some(p) = t.parent(*path.last().expect("non-empty"))? {
        path.push(p);
    }
    path.reverse();
    Arrow::new(t, path)
}

/// Degree bound for a graph mapped into the ray with edge constant `k`:
/// |B(v,1)| <= |[f(v)-k, f(v)+k]| = 2k+1.
pub fn degree_bound(k: u64) -> u64 {
    2 * k
}

/// Numbers layers 0..=`last_layer` in canonical order: the root gets 0, then
/// each sphere in ascending id order.
pub fn construct_numbering(t: &Truncation, last_layer: usize) -> VertexMap {
    let end = t.layer_offset(last_layer + 1);
    VertexMap::from_pairs(
        t.vertices()[..end]
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, VertexId(i as u64))),
    )
    .expect("canonical order is injective")
}
