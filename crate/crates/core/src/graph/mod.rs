//! Lazy graph presentation and the exact BFS engine.
//!
//! A graph is given by an [`AdjacencyOracle`]: a neighbor function that is
//! only ever evaluated on the region being explored. [`explore`] turns an
//! oracle into a [`Truncation`], the finite BFS ball of a chosen radius, and
//! every metric quantity in the crate is computed inside a truncation with an
//! explicit flag saying whether it is exact for the whole graph.

mod edgelist;
mod generators;
mod truncation;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use edgelist::EdgeListGraph;
pub use generators::{Family, GeneratorSpec, LegProfile};
pub use truncation::{explore, explore_with_budget, Certified, Truncation, DEFAULT_VERTEX_BUDGET};

/// Opaque vertex token. Ordering is used for every deterministic tie-break.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for VertexId {
    fn from(v: u64) -> Self {
        VertexId(v)
    }
}

/// A locally finite, symmetric, irreflexive neighbor function.
///
/// Implementations must return the same ordered list every time they are
/// asked about a vertex. The engine spot-checks symmetry and irreflexivity on
/// every edge it explores.
pub trait AdjacencyOracle {
    /// Canonical base vertex.
    fn origin(&self) -> VertexId;

    fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>>;

    /// True when the whole (possibly infinite) graph is known to be a tree.
    /// Balls in a tree are geodesically convex, so distances measured inside
    /// any truncation are exact.
    fn is_tree(&self) -> bool {
        false
    }

    /// Closed-form size of the sphere of radius `n` around [`origin`](Self::origin),
    /// when the presentation knows it.
    fn layer_size(&self, _n: usize) -> Option<u64> {
        None
    }
}

impl<T: AdjacencyOracle + ?Sized> AdjacencyOracle for &T {
    fn origin(&self) -> VertexId {
        (**self).origin()
    }
    fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        (**self).neighbors(v)
    }
    fn is_tree(&self) -> bool {
        (**self).is_tree()
    }
    fn layer_size(&self, n: usize) -> Option<u64> {
        (**self).layer_size(n)
    }
}
