//! Finite ball structures (X, P, B).
//!
//! A [`FiniteBallStructure`] stores the full ball table so that every
//! quantifier in the symmetry and multiplicativity axioms can be decided by
//! exhaustive search. Graph-derived structures come from complete truncations;
//! arbitrary ones come from a ball-table file.

mod axioms;
mod family;
mod table;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Truncation, VertexId};

pub use axioms::{
    check_axioms, AxiomReport, CandidateFailure, Counterexample, PropertyVerdict, Witness,
};
pub use family::{
    family_radius, family_radius_in, set_radius, BoundedFamilyCertificate, FamilyRadius,
    MemberRadius, SetRadius,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBallStructure {
    support: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    radii: Vec<u64>,
    /// `balls[a][x]` is B(support[x], radii[a]).
    balls: Vec<Vec<FixedBitSet>>,
    /// `stars[a][x]` is B*(support[x], radii[a]).
    stars: Vec<Vec<FixedBitSet>>,
}

impl FiniteBallStructure {
    /// Builds a structure from a ball function. Radii are sorted and
    /// deduplicated; every ball must contain its center and stay inside the
    /// support.
    pub fn new<F>(support: Vec<VertexId>, radii: Vec<u64>, mut ball: F) -> Result<Self>
    where
        F: FnMut(VertexId, u64) -> Vec<VertexId>,
    {
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        let mut radii = radii;
        radii.sort_unstable();
        radii.dedup();
        if support.is_empty() || radii.is_empty() {
            return Err(Error::Contract(
                "support and radius set must be non-empty".into(),
            ));
        }
        let index: HashMap<VertexId, usize> =
            support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut balls = Vec::with_capacity(radii.len());
        for &alpha in &radii {
            let mut row = Vec::with_capacity(support.len());
            for (i, &x) in support.iter().enumerate() {
                let mut set = FixedBitSet::with_capacity(support.len());
                for y in ball(x, alpha) {
                    let j = *index.get(&y).ok_or(Error::UnknownVertex(y))?;
                    set.insert(j);
                }
                if !set.contains(i) {
                    return Err(Error::Contract(format!(
                        "ball({x}, {alpha}) does not contain its center"
                    )));
                }
                row.push(set);
            }
            balls.push(row);
        }
        let stars = balls
            .iter()
            .map(|row| {
                let mut stars = vec![FixedBitSet::with_capacity(support.len()); support.len()];
                for (y, ball) in row.iter().enumerate() {
                    for x in ball.ones() {
                        stars[x].insert(y);
                    }
                }
                stars
            })
            .collect();
        Ok(FiniteBallStructure {
            support,
            index,
            radii,
            balls,
            stars,
        })
    }

    /// The metric ball structure of a complete truncation. Radii default to
    /// 0..=diameter.
    pub fn from_truncation(t: &Truncation, radii: Option<Vec<u64>>) -> Result<Self> {
        let diameter = t.diameter()?;
        let radii = radii.unwrap_or_else(|| (0..=diameter).collect());
        let dist: Vec<Vec<u32>> = (0..t.len()).map(|i| t.bfs_from(i)).collect();
        Self::new(t.vertices().to_vec(), radii, |x, alpha| {
            let i = t.idx(x).expect("support is the explored set");
            (0..t.len())
                .filter(|&j| u64::from(dist[i][j]) <= alpha)
                .map(|j| t.vertex_at(j))
                .collect()
        })
    }

    pub fn support(&self) -> &[VertexId] {
        &self.support
    }

    /// Radii in ascending order.
    pub fn radii(&self) -> &[u64] {
        &self.radii
    }

    pub fn ball(&self, x: VertexId, alpha: u64) -> Result<Vec<VertexId>> {
        let (i, a) = (self.element(x)?, self.radius(alpha)?);
        Ok(self.members(&self.balls[a][i]))
    }

    /// B*(x, α) = { y : x ∈ B(y, α) }.
    pub fn star_ball(&self, x: VertexId, alpha: u64) -> Result<Vec<VertexId>> {
        let (i, a) = (self.element(x)?, self.radius(alpha)?);
        Ok(self.members(self.star(a, i)))
    }

    pub(crate) fn element(&self, x: VertexId) -> Result<usize> {
        self.index.get(&x).copied().ok_or(Error::UnknownVertex(x))
    }

    fn radius(&self, alpha: u64) -> Result<usize> {
        self.radii
            .binary_search(&alpha)
            .map_err(|_| Error::UnknownRadius(alpha))
    }

    pub(crate) fn len(&self) -> usize {
        self.support.len()
    }

    pub(crate) fn ball_at(&self, a: usize, i: usize) -> &FixedBitSet {
        &self.balls[a][i]
    }

    pub(crate) fn star(&self, a: usize, i: usize) -> &FixedBitSet {
        &self.stars[a][i]
    }

    /// B(A, α) for a set A given as a bitset.
    pub(crate) fn ball_of_set(&self, a: usize, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for i in set.ones() {
            out.union_with(&self.balls[a][i]);
        }
        out
    }

    pub(crate) fn members(&self, set: &FixedBitSet) -> Vec<VertexId> {
        set.ones().map(|i| self.support[i]).collect()
    }
}
