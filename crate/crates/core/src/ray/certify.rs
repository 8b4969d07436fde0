use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Truncation, VertexId};
use crate::morphisms::{check_asymorphism, AsymorphismReport, RayPrefix, VertexMap};
use crate::ray::{
    construct_numbering, cover_radius, degree_bound, find_arrow, sphere_uniform_radius, Arrow,
    CoverRadius, SphereRadii,
};
use crate::trend::bounded_at_scale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarginPolicy {
    Auto,
    Explicit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    /// The oracle declared every layer size and BFS confirmed them.
    Exact,
    Prefix {
        depth: usize,
        margin: usize,
    },
}

/// Per-layer values over the certified layers 0..=K.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerProfile {
    pub sizes: Vec<u64>,
    pub max_degree: Vec<u64>,
    pub cover: Vec<u64>,
    pub sphere_radius: Vec<u64>,
    pub sphere_center: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayCertificate {
    /// Cover radius: V = B(A, r).
    pub r: u64,
    /// Uniform radius of the spheres S(a₀, n).
    pub alpha: u64,
    pub forward_m: u64,
    pub inverse_m: u64,
    pub max_degree: u64,
    /// 2·forward_m.
    pub degree_bound: u64,
    /// max{m, min f(aₙ)} with m = forward_m; recorded, never used.
    pub proof_k: u64,
    pub forward_within_2alpha_plus_1: bool,
    pub inverse_within_2alpha_plus_1_times_alpha_plus_1: bool,
    pub numbering: VertexMap,
    pub scope: Scope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Per-layer max degrees, and the first vertex reaching each new maximum.
    DegreeUnbounded {
        degrees: Vec<u64>,
        witnesses: Vec<VertexId>,
    },
    SphereRadiusDiverges {
        radii: Vec<u64>,
    },
    CoverRadiusDiverges {
        radii: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub evidence: Vec<Evidence>,
    pub scope: Scope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Certificate(RayCertificate),
    Refutation(Refutation),
}

/// Everything [`certify_ray`] computed, whichever way it decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayAnalysis {
    pub arrow: Arrow,
    pub depth: usize,
    pub margin: usize,
    /// False when no margin met the max(r, alpha) + 1 rule and the largest
    /// certified prefix was used instead.
    pub margin_satisfied: bool,
    /// Last certified layer K = depth - margin.
    pub last_layer: usize,
    pub layers: LayerProfile,
    /// Nearest arrow index for each vertex on layers 0..=K, canonical order.
    pub assignment: Vec<usize>,
    pub numbering: AsymorphismReport,
    pub verdict: Verdict,
}

impl RayAnalysis {
    pub fn is_certificate(&self) -> bool {
        matches!(self.verdict, Verdict::Certificate(_))
    }

    pub fn scope(&self) -> Scope {
        match &self.verdict {
            Verdict::Certificate(c) => c.scope,
            Verdict::Refutation(r) => r.scope,
        }
    }

    /// Cover radius over the certified layers.
    pub fn r(&self) -> u64 {
        self.layers.cover.iter().copied().max().unwrap_or(0)
    }

    pub fn alpha(&self) -> u64 {
        self.layers.sphere_radius.iter().copied().max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u64 {
        self.layers.max_degree.iter().copied().max().unwrap_or(0)
    }
}

fn prefix_max(xs: &[u64], k: usize) -> u64 {
    xs[..=k].iter().copied().max().unwrap_or(0)
}

/// Picks the last certified layer K and the margin N - K.
fn choose_margin(
    t: &Truncation,
    policy: MarginPolicy,
    cover: &CoverRadius,
    spheres: &SphereRadii,
) -> Result<(usize, bool)> {
    let n = t.depth();
    let valid = (0..=n)
        .take_while(|&k| cover.exact[k] && spheres.exact[k])
        .last()
        .ok_or_else(|| Error::Margin("layer 0 is not certified".into()))?;
    let needed = |k: usize| -> usize {
        if t.distances_exact() {
            0
        } else {
            (prefix_max(&cover.per_layer, k).max(prefix_max(&spheres.radii, k)) + 1) as usize
        }
    };
    match policy {
        MarginPolicy::Explicit(m) => {
            if m >= n {
                return Err(Error::Margin(format!("margin {m} must be below depth {n}")));
            }
            let k = n - m;
            if k > valid {
                return Err(Error::Margin(format!(
                    "layer {} is not certified at depth {n}; margin {m} is too small",
                    valid + 1
                )));
            }
            if needed(k) > m {
                return Err(Error::Margin(format!(
                    "margin {m} is below max(r, alpha) + 1 = {}",
                    needed(k)
                )));
            }
            Ok((m, true))
        }
        MarginPolicy::Auto => {
            for m in 0..n {
                let k = n - m;
                if k <= valid && needed(k) <= m {
                    return Ok((m, true));
                }
            }
            Ok((n - valid, false))
        }
    }
}

/// First vertex reaching each new running maximum of the degree.
fn degree_witnesses(t: &Truncation, last_layer: usize) -> Result<Vec<VertexId>> {
    let end = t.layer_offset(last_layer + 1);
    let mut best = 0;
    let mut out = Vec::new();
    for &v in &t.vertices()[..end] {
        let d = t.degree(v)?;
        if d > best {
            best = d;
            out.push(v);
        }
    }
    Ok(out)
}

/// Relations that hold on every graph and every arrow, checked per layer:
/// c_n <= 2ρ_n, S(a₀,n) ⊆ B(aₙ, 2c_n), and the numbering maps S(a₀,n)
/// onto a contiguous block.
fn check_layer_relations(
    t: &Truncation,
    arrow: &Arrow,
    layers: &LayerProfile,
    numbering: &VertexMap,
) -> Result<()> {
    for n in 0..layers.cover.len() {
        let (c, rho) = (layers.cover[n], layers.sphere_radius[n]);
        if c > 2 * rho {
            return Err(Error::Consistency(format!(
                "layer {n}: cover distance {c} exceeds twice the sphere radius {rho}"
            )));
        }
        let a = arrow.get(n).expect("arrow reaches every certified layer");
        let ball = t.ball(a, 2 * c)?;
        if ball.exact || t.distances_exact() {
            if let Some(v) = t
                .layer(n)
                .iter()
                .find(|v| ball.value.binary_search(v).is_err())
            {
                return Err(Error::Consistency(format!(
                    "layer {n}: {v} is farther than 2·{c} from the arrow vertex {a}"
                )));
            }
        }
        let (lo, hi) = (t.layer_offset(n) as u64, t.layer_offset(n + 1) as u64);
        for &v in t.layer(n) {
            let f = numbering.get(v).map(|w| w.0);
            if !f.is_some_and(|f| (lo..hi).contains(&f)) {
                return Err(Error::Consistency(format!(
                    "numbering sends {v} outside [{lo}, {hi})"
                )));
            }
        }
    }
    Ok(())
}

/// Relations implied by a cover radius r: spheres have radius <= 2r, and
/// S(a₀,n) ∩ B(a_k, r) = ∅ whenever |k - n| > r.
fn check_cover_relations(
    t: &Truncation,
    arrow: &Arrow,
    last_layer: usize,
    r: u64,
    alpha: u64,
) -> Result<()> {
    if alpha > 2 * r {
        return Err(Error::Consistency(format!(
            "sphere radius {alpha} exceeds twice the cover radius {r}"
        )));
    }
    for k in 0..=last_layer {
        let a = arrow.get(k).expect("arrow reaches every certified layer");
        let ball = t.ball(a, r)?;
        if !ball.exact && !t.distances_exact() {
            continue;
        }
        for v in ball.value {
            let n = t.layer_of(v)?;
            if n.abs_diff(k) as u64 > r {
                return Err(Error::Consistency(format!(
                    "{v} on layer {n} lies within {r} of arrow vertex a_{k}"
                )));
            }
        }
    }
    Ok(())
}

/// Two prefix judgments that must agree in the limit disagree at this depth.
pub(crate) fn unresolved(depth: usize, what: String) -> Error {
    Error::Margin(format!(
        "depth {depth} is too shallow to decide: {what}; explore deeper"
    ))
}

/// Runs the three ray criteria on the certified layers and cross-checks them.
///
/// The verdict is a certificate iff the per-layer degree, cover and sphere
/// sequences are all bounded at scale. The numbering is always built and
/// measured. Relations that hold on every finite prefix are enforced as
/// [`Error::Consistency`]; prefix judgments that disagree (criteria against
/// each other or against the numbering) give [`Error::Margin`].
pub fn certify_ray(t: &Truncation, policy: MarginPolicy) -> Result<RayAnalysis> {
    if t.is_complete() {
        return Err(Error::Contract(
            "finite graphs are classified by vertex count, not by ray criteria".into(),
        ));
    }
    let arrow = find_arrow(t)?;
    let n = t.depth();
    let cover = cover_radius(t, &arrow, n)?;
    let spheres = sphere_uniform_radius(t, n)?;
    let (margin, margin_satisfied) = choose_margin(t, policy, &cover, &spheres)?;
    let k = n - margin;

    let mut degrees = vec![0u64; k + 1];
    for (i, &v) in t.vertices()[..t.layer_offset(k + 1)].iter().enumerate() {
        let layer = t.layer_at(i);
        degrees[layer] = degrees[layer].max(t.degree(v)? as u64);
    }
    let layers = LayerProfile {
        sizes: (0..=k).map(|j| t.layer(j).len() as u64).collect(),
        max_degree: degrees,
        cover: cover.per_layer[..=k].to_vec(),
        sphere_radius: spheres.radii[..=k].to_vec(),
        sphere_center: spheres.centers[..=k].to_vec(),
    };

    let numbering = construct_numbering(t, k);
    let ray = RayPrefix {
        len: numbering.len() as u64,
    };
    let report = check_asymorphism(&numbering, t, &ray)?;
    check_layer_relations(t, &arrow, &layers, &numbering)?;

    let degree_ok = bounded_at_scale(&layers.max_degree, &[]);
    let cover_ok = bounded_at_scale(&layers.cover, &[]);
    let sphere_ok = bounded_at_scale(&layers.sphere_radius, &[]);
    if degree_ok && cover_ok != sphere_ok {
        return Err(unresolved(
            n,
            format!(
                "cover distances look {} but sphere radii {}",
                if cover_ok { "bounded" } else { "unbounded" },
                if sphere_ok { "bounded" } else { "unbounded" },
            ),
        ));
    }

    let scope = if t.has_closed_form_layers() {
        Scope::Exact
    } else {
        Scope::Prefix { depth: n, margin }
    };
    let r = prefix_max(&layers.cover, k);
    let alpha = prefix_max(&layers.sphere_radius, k);
    let verdict = if degree_ok && cover_ok && sphere_ok {
        if !report.is_asymorphism {
            return Err(unresolved(
                n,
                "criteria hold but the numbering's Lipschitz profile is still growing".into(),
            ));
        }
        check_cover_relations(t, &arrow, k, r, alpha)?;
        let forward_m = report.forward_m();
        let inverse_m = report.inverse_m();
        let interior = t.max_degree_through(k.saturating_sub(1)) as u64;
        if interior > degree_bound(forward_m) {
            return Err(Error::Consistency(format!(
                "degree {interior} exceeds 2·{forward_m}"
            )));
        }
        Verdict::Certificate(RayCertificate {
            r,
            alpha,
            forward_m,
            inverse_m,
            max_degree: prefix_max(&layers.max_degree, k),
            degree_bound: degree_bound(forward_m),
            proof_k: forward_m,
            forward_within_2alpha_plus_1: forward_m <= 2 * alpha + 1,
            inverse_within_2alpha_plus_1_times_alpha_plus_1: inverse_m
                <= (2 * alpha + 1) * (alpha + 1),
            numbering,
            scope,
        })
    } else {
        let mut evidence = Vec::new();
        if !degree_ok {
            evidence.push(Evidence::DegreeUnbounded {
                degrees: layers.max_degree.clone(),
                witnesses: degree_witnesses(t, k)?,
            });
        }
        if !sphere_ok {
            evidence.push(Evidence::SphereRadiusDiverges {
                radii: layers.sphere_radius.clone(),
            });
        }
        if !cover_ok {
            evidence.push(Evidence::CoverRadiusDiverges {
                radii: layers.cover.clone(),
            });
        }
        Verdict::Refutation(Refutation { evidence, scope })
    };
    Ok(RayAnalysis {
        arrow,
        depth: n,
        margin,
        margin_satisfied,
        last_layer: k,
        layers,
        assignment: cover.assignment[..t.layer_offset(k + 1)].to_vec(),
        numbering: report,
        verdict,
    })
}
