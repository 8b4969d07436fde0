//! Certificate-producing coarse geometry on graphs.
//!
//! The crate decides, on explored BFS prefixes, whether a locally finite graph
//! is asymorphic to the ray and produces the explicit evidence either way:
//!
//! - [`graph`]: lazy adjacency oracles, built-in families and the BFS engine.
//! - [`ballean`]: finite ball structures, their axioms and uniformly bounded
//!   families.
//! - [`morphisms`]: Lipschitz constants of vertex maps and asymorphism checks.
//! - [`ray`]: arrows, the three ray criteria, the explicit numbering and the
//!   tree decomposition.

pub mod ballean;
pub mod error;
pub mod graph;
pub mod morphisms;
pub mod ray;
pub mod trend;

pub use error::{Error, Result};
pub use graph::{AdjacencyOracle, Certified, GeneratorSpec, Truncation, VertexId};
