use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Truncation, VertexId};
use crate::ray::certify::unresolved;
use crate::ray::{Arrow, RayAnalysis, Verdict};
use crate::trend::bounded_at_scale;

/// The pieces T(aₙ) of an explored tree once the arrow's edges are deleted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub arrow: Arrow,
    /// `components[n]` is T(aₙ), sorted.
    pub components: Vec<Vec<VertexId>>,
    pub sizes: Vec<u64>,
    /// T(aₙ) has no unexplored neighbors, so its size is final.
    pub closed: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSizeVerdict {
    /// Largest observed component.
    pub t: u64,
    /// Max degree bound used for |B(aₙ, r)| <= s^r + 1.
    pub s: u64,
    pub asymptotic_ray: bool,
}

/// A non-tree edge of the explored subgraph, if any.
fn cycle_edge(t: &Truncation) -> Result<Option<(VertexId, VertexId)>> {
    for (u, v) in t.edges() {
        if t.parent(v)? != Some(u) && t.parent(u)? != Some(v) {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// Splits an acyclic truncation along the arrow.
pub fn tree_decompose(t: &Truncation, arrow: &Arrow) -> Result<TreeDecomposition> {
    if !t.is_acyclic() {
        let (u, v) = cycle_edge(t)?.expect("a cyclic graph has a non-tree edge");
        return Err(Error::NotATree(u, v));
    }
    const NONE: usize = usize::MAX;
    let mut owner = vec![NONE; t.len()];
    let arrow_idx = arrow
        .vertices()
        .iter()
        .map(|&a| t.idx(a))
        .collect::<Result<Vec<_>>>()?;
    for (n, &i) in arrow_idx.iter().enumerate() {
        owner[i] = n;
    }
    let mut components = Vec::with_capacity(arrow_idx.len());
    let mut closed = Vec::with_capacity(arrow_idx.len());
    for (n, &root) in arrow_idx.iter().enumerate() {
        let mut members = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in t.adj_at(x) {
                if owner[y] == NONE {
                    owner[y] = n;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        let mut is_closed = true;
        for &i in &members {
            is_closed &= !t.is_frontier(t.vertex_at(i))?;
        }
        let mut ids: Vec<VertexId> = members.into_iter().map(|i| t.vertex_at(i)).collect();
        ids.sort_unstable();
        components.push(ids);
        closed.push(is_closed);
    }
    if let Some(i) = owner.iter().position(|&o| o == NONE) {
        return Err(Error::Consistency(format!(
            "{} belongs to no component",
            t.vertex_at(i)
        )));
    }
    Ok(TreeDecomposition {
        arrow: arrow.clone(),
        sizes: components.iter().map(|c| c.len() as u64).collect(),
        components,
        closed,
    })
}

/// Bounded component sizes decide the tree case. Closed components give
/// exact sizes; open ones only lower bounds.
pub fn component_size_decide(td: &TreeDecomposition, s: u64) -> ComponentSizeVerdict {
    let (exact, lower): (Vec<_>, Vec<_>) = td
        .sizes
        .iter()
        .zip(&td.closed)
        .partition(|(_, &closed)| closed);
    let exact: Vec<u64> = exact.into_iter().map(|(&x, _)| x).collect();
    let lower: Vec<u64> = lower.into_iter().map(|(&x, _)| x).collect();
    ComponentSizeVerdict {
        t: td.sizes.iter().copied().max().unwrap_or(0),
        s,
        asymptotic_ray: bounded_at_scale(&exact, &lower),
    }
}

/// The tree criterion must agree with the ray criteria, or the depth is too
/// shallow to decide. On a certificate
/// with cover radius r, every closed T(aₙ) on a certified layer sits inside
/// B(aₙ, r) and |B(aₙ, r)| <= s^r + 1.
pub fn check_tree_agreement(
    t: &Truncation,
    analysis: &RayAnalysis,
    td: &TreeDecomposition,
    verdict: &ComponentSizeVerdict,
) -> Result<()> {
    if analysis.is_certificate() != verdict.asymptotic_ray {
        return Err(unresolved(
            analysis.depth,
            format!(
                "ray criteria say {}, component sizes say {}",
                analysis.is_certificate(),
                verdict.asymptotic_ray
            ),
        ));
    }
    let Verdict::Certificate(cert) = &analysis.verdict else {
        return Ok(());
    };
    let bound = u32::try_from(cert.r)
        .ok()
        .and_then(|r| verdict.s.checked_pow(r))
        .map_or(u64::MAX, |p| p.saturating_add(1));
    for n in 0..=analysis.last_layer.min(td.arrow.end()) {
        if !td.closed[n] {
            continue;
        }
        let a = td.arrow.get(n).expect("index checked");
        let ball = t.ball(a, cert.r)?;
        if !ball.exact {
            continue;
        }
        if let Some(v) = td.components[n]
            .iter()
            .find(|v| ball.value.binary_search(v).is_err())
        {
            return Err(Error::Consistency(format!(
                "{v} in T(a_{n}) is farther than {} from {a}",
                cert.r
            )));
        }
        if ball.value.len() as u64 > bound {
            return Err(Error::Consistency(format!(
                "|B(a_{n}, {})| = {} exceeds s^r + 1 = {bound}",
                cert.r,
                ball.value.len()
            )));
        }
    }
    Ok(())
}
