//! Uniformly bounded families.
//!
//! A family is uniformly bounded when one radius α works for every member:
//! each F sits inside some ball B(x, α). Centers may be any point of the
//! support, not only points of F.

use serde::{Deserialize, Serialize};

use crate::ballean::FiniteBallStructure;
use crate::error::{Error, Result};
use crate::graph::{Truncation, VertexId};

/// Evidence that a family is uniformly bounded with radius `alpha`:
/// `family[i] ⊆ B(centers[i], alpha)` for every i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedFamilyCertificate {
    pub alpha: u64,
    pub centers: Vec<VertexId>,
    /// Least radius of each member on its own.
    pub radii: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyRadius {
    Bounded(BoundedFamilyCertificate),
    /// No radius in P contains the given member in a single ball.
    Unbounded {
        member: usize,
    },
}

/// radius(F) = min over centers x of max over f ∈ F of d(x, f).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetRadius {
    pub radius: u64,
    pub center: VertexId,
    pub exact: bool,
}

/// Per-member radius, kept for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberRadius {
    pub radius: u64,
    pub center: VertexId,
}

impl BoundedFamilyCertificate {
    /// Re-checks every containment against the ball structure.
    pub fn verify(&self, bs: &FiniteBallStructure, family: &[Vec<VertexId>]) -> Result<bool> {
        for (member, &center) in family.iter().zip(&self.centers) {
            let ball = bs.ball(center, self.alpha)?;
            if !member.iter().all(|f| ball.binary_search(f).is_ok()) {
                return Ok(false);
            }
        }
        Ok(family.len() == self.centers.len())
    }

    /// Re-checks every containment by explored distance.
    pub fn verify_in(&self, t: &Truncation, family: &[Vec<VertexId>]) -> Result<bool> {
        for (member, &center) in family.iter().zip(&self.centers) {
            for &f in member {
                if t.distance(center, f)?.value > self.alpha {
                    return Ok(false);
                }
            }
        }
        Ok(family.len() == self.centers.len())
    }

    pub fn members(&self) -> Vec<MemberRadius> {
        self.radii
            .iter()
            .zip(&self.centers)
            .map(|(&radius, &center)| MemberRadius { radius, center })
            .collect()
    }
}

/// Least α ∈ P for which every member fits in one ball, with least centers.
pub fn family_radius(bs: &FiniteBallStructure, family: &[Vec<VertexId>]) -> Result<FamilyRadius> {
    let members = family
        .iter()
        .map(|f| f.iter().map(|&v| bs.element(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let center_at = |a: usize, member: &[usize]| {
        (0..bs.len()).find(|&x| member.iter().all(|&f| bs.ball_at(a, x).contains(f)))
    };
    let mut radii = Vec::with_capacity(members.len());
    for (i, member) in members.iter().enumerate() {
        match (0..bs.radii.len()).find(|&a| center_at(a, member).is_some()) {
            Some(a) => radii.push(bs.radii[a]),
            None => return Ok(FamilyRadius::Unbounded { member: i }),
        }
    }
    for a in 0..bs.radii.len() {
        let centers: Option<Vec<usize>> = members.iter().map(|m| center_at(a, m)).collect();
        if let Some(centers) = centers {
            return Ok(FamilyRadius::Bounded(BoundedFamilyCertificate {
                alpha: bs.radii[a],
                centers: centers.into_iter().map(|x| bs.support[x]).collect(),
                radii,
            }));
        }
    }
    Ok(FamilyRadius::Unbounded { member: 0 })
}

/// Exact 1-center search over the whole explored support.
///
/// The value is exact for the full graph when distances are exact, or when
/// every ball B(f, radius-1) around a member is fully explored (then no
/// unexplored center can beat the one found).
pub fn set_radius(t: &Truncation, set: &[VertexId]) -> Result<SetRadius> {
    let sources = set.iter().map(|&v| t.idx(v)).collect::<Result<Vec<_>>>()?;
    let mut worst = vec![0u32; t.len()];
    for &s in &sources {
        for (w, d) in worst.iter_mut().zip(t.bfs_from(s)) {
            *w = (*w).max(d);
        }
    }
    let (best, _) = worst
        .iter()
        .enumerate()
        .min_by_key(|&(i, &w)| (w, t.vertex_at(i)))
        .expect("truncation is non-empty");
    let radius = u64::from(worst[best]);
    let exact = t.distances_exact()
        || sources
            .iter()
            .all(|&s| t.ball_exact(t.layer_at(s), radius.saturating_sub(1)));
    Ok(SetRadius {
        radius,
        center: t.vertex_at(best),
        exact,
    })
}

/// Uniform radius of a family of explored vertex sets. Every member must be
/// certified; otherwise a margin error names the first offending member.
pub fn family_radius_in(
    t: &Truncation,
    family: &[Vec<VertexId>],
) -> Result<BoundedFamilyCertificate> {
    let mut centers = Vec::with_capacity(family.len());
    let mut radii = Vec::with_capacity(family.len());
    for (i, member) in family.iter().enumerate() {
        let r = set_radius(t, member)?;
        if !r.exact {
            return Err(Error::Margin(format!(
                "member {i} {:?} has radius {} which is not certified at depth {}",
                member.iter().map(|v| v.0).collect::<Vec<_>>(),
                r.radius,
                t.depth()
            )));
        }
        centers.push(r.center);
        radii.push(r.radius);
    }
    Ok(BoundedFamilyCertificate {
        alpha: radii.iter().copied().max().unwrap_or(0),
        centers,
        radii,
    })
}
