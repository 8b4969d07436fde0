//! Vertex maps between graph balleans.
//!
//! For graph balleans a ≺-mapping is exactly a Lipschitz map, and the least
//! Lipschitz constant is already attained on edges. [`edge_lipschitz`]
//! computes it from edges, [`global_lipschitz_oracle`] recomputes it over all
//! pairs as an independent brute-force check. An asymorphism is a bijection
//! whose forward and inverse constants are both finite; on unbounded inputs
//! "finite" is judged at scale from per-layer profiles (see [`crate::trend`]).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ballean::{set_radius, BoundedFamilyCertificate, SetRadius};
use crate::error::{Error, Result};
use crate::graph::{Certified, Truncation, VertexId};
use crate::trend::bounded_at_scale;

/// Largest domain accepted by [`global_lipschitz_oracle`].
pub const ORACLE_MAX_VERTICES: usize = 200;

/// A finite metric region the maps in this module can run between.
pub trait MetricSpace {
    /// Points in canonical order.
    fn points(&self) -> Vec<VertexId>;
    fn contains(&self, v: VertexId) -> bool;
    fn metric(&self, u: VertexId, v: VertexId) -> Result<Certified<u64>>;
    /// Unit-distance pairs, each once.
    fn unit_pairs(&self) -> Vec<(VertexId, VertexId)>;
    /// Distance from the base point, used to index per-layer profiles.
    fn level(&self, v: VertexId) -> Result<usize>;
    fn radius_of(&self, set: &[VertexId]) -> Result<SetRadius>;
    /// The region is the whole (finite) space.
    fn is_whole(&self) -> bool;
}

impl MetricSpace for Truncation {
    fn points(&self) -> Vec<VertexId> {
        self.vertices().to_vec()
    }
    fn contains(&self, v: VertexId) -> bool {
        Truncation::contains(self, v)
    }
    fn metric(&self, u: VertexId, v: VertexId) -> Result<Certified<u64>> {
        self.distance(u, v)
    }
    fn unit_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
    }
    fn level(&self, v: VertexId) -> Result<usize> {
        self.layer_of(v)
    }
    fn radius_of(&self, set: &[VertexId]) -> Result<SetRadius> {
        set_radius(self, set)
    }
    fn is_whole(&self) -> bool {
        self.is_complete()
    }
}

/// The prefix {0, …, len-1} of the ray, with metric |i - j|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayPrefix {
    pub len: u64,
}

impl RayPrefix {
    fn check(&self, v: VertexId) -> Result<u64> {
        if v.0 < self.len {
            Ok(v.0)
        } else {
            Err(Error::Unexplored(v))
        }
    }
}

impl MetricSpace for RayPrefix {
    fn points(&self) -> Vec<VertexId> {
        (0..self.len).map(VertexId).collect()
    }
    fn contains(&self, v: VertexId) -> bool {
        v.0 < self.len
    }
    fn metric(&self, u: VertexId, v: VertexId) -> Result<Certified<u64>> {
        Ok(Certified {
            value: self.check(u)?.abs_diff(self.check(v)?),
            exact: true,
        })
    }
    fn unit_pairs(&self) -> Vec<(VertexId, VertexId)> {
        (1..self.len)
            .map(|i| (VertexId(i - 1), VertexId(i)))
            .collect()
    }
    fn level(&self, v: VertexId) -> Result<usize> {
        self.check(v).map(|i| i as usize)
    }
    fn radius_of(&self, set: &[VertexId]) -> Result<SetRadius> {
        let values = set
            .iter()
            .map(|&v| self.check(v))
            .collect::<Result<Vec<_>>>()?;
        let (lo, hi) = match (values.iter().min(), values.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, 0),
        };
        Ok(SetRadius {
            radius: (hi - lo).div_ceil(2),
            center: VertexId(lo + (hi - lo) / 2),
            exact: true,
        })
    }
    fn is_whole(&self) -> bool {
        false
    }
}

/// A map between vertex sets, stored in ascending domain order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    forward: BTreeMap<VertexId, VertexId>,
}

impl VertexMap {
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut forward = BTreeMap::new();
        for (v, w) in pairs {
            if forward.insert(v, w).is_some_and(|old| old != w) {
                return Err(Error::Contract(format!("{v} is mapped twice")));
            }
        }
        Ok(VertexMap { forward })
    }

    /// Parses `v f(v)` lines; `#` comments and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut forward = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line, message };
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [v, w] = fields.as_slice() else {
                return Err(err(format!("expected \"v f(v)\", found {content:?}")));
            };
            let id = |s: &str| {
                s.parse::<u64>()
                    .map(VertexId)
                    .map_err(|_| err(format!("{s:?} is not a non-negative integer")))
            };
            let (v, w) = (id(v)?, id(w)?);
            if forward.insert(v, w).is_some() {
                return Err(err(format!("{v} is mapped twice")));
            }
        }
        Ok(VertexMap { forward })
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.forward.get(&v).copied()
    }

    fn apply(&self, v: VertexId) -> Result<VertexId> {
        self.get(v)
            .ok_or_else(|| Error::Contract(format!("map is undefined at {v}")))
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.forward.iter().map(|(&v, &w)| (v, w))
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.forward.keys().copied()
    }

    pub fn is_injective(&self) -> bool {
        let image: BTreeSet<VertexId> = self.forward.values().copied().collect();
        image.len() == self.forward.len()
    }

    /// True when the map is a bijection onto exactly `codomain`.
    pub fn is_bijective_onto(&self, codomain: &[VertexId]) -> bool {
        let image: BTreeSet<VertexId> = self.forward.values().copied().collect();
        let target: BTreeSet<VertexId> = codomain.iter().copied().collect();
        self.is_injective() && image == target
    }

    pub fn inverse(&self) -> Option<VertexMap> {
        self.is_injective().then(|| VertexMap {
            forward: self.forward.iter().map(|(&v, &w)| (w, v)).collect(),
        })
    }

    /// `next ∘ self`, defined where both steps are.
    pub fn then(&self, next: &VertexMap) -> VertexMap {
        VertexMap {
            forward: self
                .forward
                .iter()
                .filter_map(|(&v, &w)| next.get(w).map(|x| (v, x)))
                .collect(),
        }
    }

    /// Vertices of `required` the map does not cover.
    pub fn missing(&self, required: &[VertexId]) -> Vec<VertexId> {
        required
            .iter()
            .copied()
            .filter(|v| !self.forward.contains_key(v))
            .collect()
    }
}

/// Least edge constant of a map, with its per-layer profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LipschitzReport {
    /// Least m with f(B(v,1)) ⊆ B(f(v), m) on the mapped region.
    pub edge_constant: u64,
    /// First edge (canonical order) attaining `edge_constant`.
    pub witness: Option<(VertexId, VertexId)>,
    /// Least m with d(f(u), f(v)) <= m·d(u, v) over all pairs, when the
    /// exhaustive oracle was run.
    pub global_constant: Option<u64>,
    pub global_witness: Option<(VertexId, VertexId)>,
    /// `profile[n]` is the largest image distance over edges whose deeper
    /// endpoint sits on layer n of the source.
    pub profile: Vec<u64>,
    /// False when the source is a prefix of a larger graph.
    pub whole: bool,
}

/// Edge form of the Lipschitz constant: the largest image distance across an
/// edge of the source region (edges with both ends in the map's domain).
pub fn edge_lipschitz<S, D>(f: &VertexMap, src: &S, dst: &D) -> Result<LipschitzReport>
where
    S: MetricSpace + ?Sized,
    D: MetricSpace + ?Sized,
{
    let mut best: Option<(u64, (VertexId, VertexId))> = None;
    let mut profile: Vec<u64> = Vec::new();
    for (u, v) in src.unit_pairs() {
        let (Some(fu), Some(fv)) = (f.get(u), f.get(v)) else {
            continue;
        };
        let d = dst.metric(fu, fv)?;
        if !d.exact {
            return Err(Error::Margin(format!(
                "image distance d({fu}, {fv}) = {} is only an upper bound",
                d.value
            )));
        }
        let layer = src.level(u)?.max(src.level(v)?);
        if profile.len() <= layer {
            profile.resize(layer + 1, 0);
        }
        profile[layer] = profile[layer].max(d.value);
        if best.is_none_or(|(m, _)| d.value > m) {
            best = Some((d.value, (u, v)));
        }
    }
    Ok(LipschitzReport {
        edge_constant: best.map_or(0, |(m, _)| m),
        witness: best.map(|(_, e)| e),
        global_constant: None,
        global_witness: None,
        profile,
        whole: src.is_whole(),
    })
}

/// Brute-force least constant over all pairs: max over u != v of
/// ⌈d₂(f(u), f(v)) / d₁(u, v)⌉. Small, exactly measured inputs only.
pub fn global_lipschitz_oracle<S, D>(
    f: &VertexMap,
    src: &S,
    dst: &D,
) -> Result<(u64, Option<(VertexId, VertexId)>)>
where
    S: MetricSpace + ?Sized,
    D: MetricSpace + ?Sized,
{
    if f.len() > ORACLE_MAX_VERTICES {
        return Err(Error::Scale(format!(
            "{} mapped vertices, oracle limit is {ORACLE_MAX_VERTICES}",
            f.len()
        )));
    }
    let domain: Vec<VertexId> = f.domain().collect();
    let mut best: Option<(u64, (VertexId, VertexId))> = None;
    for (i, &u) in domain.iter().enumerate() {
        for &v in &domain[i + 1..] {
            let d1 = src.metric(u, v)?;
            let d2 = dst.metric(f.apply(u)?, f.apply(v)?)?;
            if !d1.exact || !d2.exact {
                return Err(Error::Contract(
                    "exhaustive oracle needs exactly measured spaces".into(),
                ));
            }
            let ratio = d2.value.div_ceil(d1.value);
            if best.is_none_or(|(m, _)| ratio > m) {
                best = Some((ratio, (u, v)));
            }
        }
    }
    Ok((best.map_or(0, |(m, _)| m), best.map(|(_, p)| p)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymorphismReport {
    pub forward: LipschitzReport,
    pub inverse: LipschitzReport,
    pub is_asymorphism: bool,
}

impl AsymorphismReport {
    pub fn forward_m(&self) -> u64 {
        self.forward.edge_constant
    }
    pub fn inverse_m(&self) -> u64 {
        self.inverse.edge_constant
    }
}

/// Checks that `f` is a bijection from part of `src` onto all of `dst` whose
/// forward and inverse edge constants are bounded.
///
/// Between two whole finite graphs every bijection qualifies. Otherwise both
/// per-layer profiles must be bounded at scale.
pub fn check_asymorphism<S, D>(f: &VertexMap, src: &S, dst: &D) -> Result<AsymorphismReport>
where
    S: MetricSpace + ?Sized,
    D: MetricSpace + ?Sized,
{
    if let Some(v) = f.domain().find(|&v| !src.contains(v)) {
        return Err(Error::Contract(format!("{v} is not a source vertex")));
    }
    if !f.is_bijective_onto(&dst.points()) {
        return Err(Error::Contract(
            "map is not a bijection onto the target region".into(),
        ));
    }
    let inverse_map = f.inverse().expect("bijective");
    let forward = edge_lipschitz(f, src, dst)?;
    let inverse = edge_lipschitz(&inverse_map, dst, src)?;
    let is_asymorphism = (src.is_whole() && dst.is_whole())
        || (bounded_at_scale(&forward.profile, &[]) && bounded_at_scale(&inverse.profile, &[]));
    Ok(AsymorphismReport {
        forward,
        inverse,
        is_asymorphism,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushforwardReport {
    pub source: BoundedFamilyCertificate,
    pub image_alpha: u64,
    pub image_radii: Vec<u64>,
    pub image_centers: Vec<VertexId>,
    /// Source family bounded at scale.
    pub source_bounded: bool,
    /// Image family bounded at scale.
    pub image_bounded: bool,
}

impl PushforwardReport {
    /// Uniform boundedness is carried over (vacuous if the source family is
    /// not bounded to begin with).
    pub fn preserved(&self) -> bool {
        !self.source_bounded || self.image_bounded
    }
}

fn family_in<S: MetricSpace + ?Sized>(
    space: &S,
    family: &[Vec<VertexId>],
) -> Result<(Vec<u64>, Vec<VertexId>)> {
    let mut radii = Vec::with_capacity(family.len());
    let mut centers = Vec::with_capacity(family.len());
    for (i, member) in family.iter().enumerate() {
        let r = space.radius_of(member)?;
        if !r.exact {
            return Err(Error::Margin(format!(
                "member {i} has radius {} which is not certified",
                r.radius
            )));
        }
        radii.push(r.radius);
        centers.push(r.center);
    }
    Ok((radii, centers))
}

/// Pushes a family through `f` and measures both sides.
pub fn pushforward_bounded_check<S, D>(
    f: &VertexMap,
    family: &[Vec<VertexId>],
    src: &S,
    dst: &D,
) -> Result<PushforwardReport>
where
    S: MetricSpace + ?Sized,
    D: MetricSpace + ?Sized,
{
    let (radii, centers) = family_in(src, family)?;
    let image: Vec<Vec<VertexId>> = family
        .iter()
        .map(|m| m.iter().map(|&v| f.apply(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let (image_radii, image_centers) = family_in(dst, &image)?;
    let whole = src.is_whole() && dst.is_whole();
    Ok(PushforwardReport {
        source: BoundedFamilyCertificate {
            alpha: radii.iter().copied().max().unwrap_or(0),
            centers,
            radii: radii.clone(),
        },
        image_alpha: image_radii.iter().copied().max().unwrap_or(0),
        source_bounded: whole || bounded_at_scale(&radii, &[]),
        image_bounded: whole || bounded_at_scale(&image_radii, &[]),
        image_radii,
        image_centers,
    })
}

/// Family of all unit balls B(v, 1) of a whole graph: uniformly bounded with
/// radius 1, the standard probe for the pushforward characterization.
pub fn unit_ball_family(t: &Truncation) -> Result<Vec<Vec<VertexId>>> {
    t.vertices()
        .iter()
        .map(|&v| t.ball(v, 1).map(|b| b.value))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedVerdict {
    pub asymorphic: bool,
    pub vertex_counts: (usize, usize),
    pub diameters: (u64, u64),
    /// The i-th vertex of one graph to the i-th of the other, canonical order.
    pub witness: Option<VertexMap>,
    pub forward_m: Option<u64>,
    pub inverse_m: Option<u64>,
}

/// Two bounded graphs are asymorphic iff they have the same number of vertices.
pub fn bounded_classification(g1: &Truncation, g2: &Truncation) -> Result<BoundedVerdict> {
    let diameters = (g1.diameter()?, g2.diameter()?);
    let vertex_counts = (g1.len(), g2.len());
    if vertex_counts.0 != vertex_counts.1 {
        return Ok(BoundedVerdict {
            asymorphic: false,
            vertex_counts,
            diameters,
            witness: None,
            forward_m: None,
            inverse_m: None,
        });
    }
    let witness = VertexMap::from_pairs(
        g1.vertices()
            .iter()
            .copied()
            .zip(g2.vertices().iter().copied()),
    )?;
    let report = check_asymorphism(&witness, g1, g2)?;
    if !report.is_asymorphism {
        return Err(Error::Consistency(
            "bijection between bounded graphs rejected".into(),
        ));
    }
    Ok(BoundedVerdict {
        asymorphic: true,
        vertex_counts,
        diameters,
        forward_m: Some(report.forward_m()),
        inverse_m: Some(report.inverse_m()),
        witness: Some(witness),
    })
}

/// Uniform radius of a family in any metric space; every member must be
/// certified.
pub fn family_certificate<S: MetricSpace + ?Sized>(
    space: &S,
    family: &[Vec<VertexId>],
) -> Result<BoundedFamilyCertificate> {
    let (radii, centers) = family_in(space, family)?;
    Ok(BoundedFamilyCertificate {
        alpha: radii.iter().copied().max().unwrap_or(0),
        centers,
        radii,
    })
}
