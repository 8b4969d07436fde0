//! Brute-force reference computations, independent of the truncation engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use asray_core::{AdjacencyOracle, GeneratorSpec, VertexId};
use rand::Rng;

/// A finite region with all-pairs distances measured inside it.
pub struct Region {
    pub ids: Vec<u64>,
    pub layer: Vec<usize>,
    pub dist: Vec<Vec<u32>>,
    index: BTreeMap<u64, usize>,
}

impl Region {
    /// The ball of radius `radius` around the oracle's origin, ordered by
    /// (layer, id), with one BFS per vertex.
    pub fn around<O: AdjacencyOracle>(oracle: &O, radius: usize) -> Region {
        let root = oracle.origin().0;
        let mut layer_of: BTreeMap<u64, usize> = BTreeMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        let mut adj: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        while let Some(v) = queue.pop_front() {
            let d = layer_of[&v];
            let nbrs: Vec<u64> = oracle
                .neighbors(VertexId(v))
                .unwrap()
                .iter()
                .map(|w| w.0)
                .collect();
            for &w in &nbrs {
                if d < radius && !layer_of.contains_key(&w) {
                    layer_of.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
            adj.insert(v, nbrs);
        }
        let mut ids: Vec<u64> = layer_of.keys().copied().collect();
        ids.sort_by_key(|v| (layer_of[v], *v));
        let index: BTreeMap<u64, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let local: Vec<Vec<usize>> = ids
            .iter()
            .map(|v| {
                adj[v]
                    .iter()
                    .filter_map(|w| index.get(w).copied())
                    .collect()
            })
            .collect();
        let dist = (0..ids.len()).map(|s| bfs(&local, s)).collect();
        Region {
            layer: ids.iter().map(|v| layer_of[v]).collect(),
            ids,
            dist,
            index,
        }
    }

    pub fn from_edges(n: usize, edges: &[(u64, u64)]) -> Region {
        let mut local = vec![Vec::new(); n];
        for &(u, v) in edges {
            local[u as usize].push(v as usize);
            local[v as usize].push(u as usize);
        }
        let dist: Vec<Vec<u32>> = (0..n).map(|s| bfs(&local, s)).collect();
        Region {
            ids: (0..n as u64).collect(),
            layer: dist[0].iter().map(|&d| d as usize).collect(),
            index: (0..n as u64).map(|v| (v, v as usize)).collect(),
            dist,
        }
    }

    pub fn idx(&self, v: u64) -> usize {
        self.index[&v]
    }

    pub fn d(&self, u: u64, v: u64) -> u32 {
        self.dist[self.idx(u)][self.idx(v)]
    }

    pub fn sphere(&self, n: usize) -> Vec<u64> {
        self.ids
            .iter()
            .zip(&self.layer)
            .filter(|(_, &l)| l == n)
            .map(|(&v, _)| v)
            .collect()
    }

    /// min over every vertex of the region of the max distance to `set`.
    pub fn set_radius(&self, set: &[u64]) -> u32 {
        (0..self.ids.len())
            .map(|c| {
                set.iter()
                    .map(|&f| self.dist[c][self.idx(f)])
                    .max()
                    .unwrap_or(0)
            })
            .min()
            .unwrap()
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Global Lipschitz constant by all pairs: max ⌈d₂(f u, f v) / d₁(u, v)⌉.
pub fn pairwise_constant(
    domain: &[u64],
    d1: impl Fn(u64, u64) -> u32,
    d2: impl Fn(u64, u64) -> u32,
    f: impl Fn(u64) -> u64,
) -> u32 {
    let mut best = 0;
    for (i, &u) in domain.iter().enumerate() {
        for &v in &domain[i + 1..] {
            best = best.max(d2(f(u), f(v)).div_ceil(d1(u, v)));
        }
    }
    best
}

/// A random connected graph on 0..n: a random tree plus extra edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Vec<(u64, u64)> {
    let mut edges = Vec::new();
    for v in 1..n as u64 {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n as u64);
        let v = rng.gen_range(0..n as u64);
        if u != v
            && !edges.contains(&(u.min(v), u.max(v)))
            && !edges.contains(&(u.max(v), u.min(v)))
        {
            edges.push((u.min(v), u.max(v)));
        }
    }
    edges
}

pub struct Brute {
    pub r: u32,
    pub alpha: u32,
    pub forward: u32,
    pub inverse: u32,
}

/// Everything measured in a region of radius 2·depth, restricted to layers
/// 0..=depth, with the arrow rebuilt from the region's own order.
pub fn brute(spec: &str, depth: usize) -> Brute {
    let g: GeneratorSpec = spec.parse().unwrap();
    let region = Region::around(&g, 2 * depth);
    let prefix: Vec<u64> = (0..=depth).flat_map(|n| region.sphere(n)).collect();
    // arrow: least vertex on the region's last layer, then least neighbor one
    // layer up; it runs past `depth` like the engine's does
    let mut arrow = vec![region.sphere(2 * depth)[0]];
    for n in (0..2 * depth).rev() {
        let last = *arrow.last().unwrap();
        let up = region
            .sphere(n)
            .into_iter()
            .find(|&u| region.d(u, last) == 1)
            .unwrap();
        arrow.push(up);
    }
    let r = prefix
        .iter()
        .map(|&v| arrow.iter().map(|&a| region.d(v, a)).min().unwrap())
        .max()
        .unwrap();
    let alpha = (0..=depth)
        .map(|n| region.set_radius(&region.sphere(n)))
        .max()
        .unwrap();
    let f = |v: u64| prefix.iter().position(|&u| u == v).unwrap() as u64;
    let forward = pairwise_constant(
        &prefix,
        |u, v| region.d(u, v),
        |a, b| a.abs_diff(b) as u32,
        f,
    );
    let positions: Vec<u64> = (0..prefix.len() as u64).collect();
    let inverse = pairwise_constant(
        &positions,
        |a, b| a.abs_diff(b) as u32,
        |u, v| region.d(u, v),
        |i| prefix[i as usize],
    );
    Brute {
        r,
        alpha,
        forward,
        inverse,
    }
}
