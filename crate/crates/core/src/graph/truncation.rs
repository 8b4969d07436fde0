use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AdjacencyOracle, VertexId};

/// Upper bound on explored vertices for [`explore`].
pub const DEFAULT_VERTEX_BUDGET: usize = 4_000_000;

const UNREACHED: u32 = u32::MAX;

/// A value computed inside a truncation, with a flag telling whether it is
/// guaranteed to agree with the same quantity in the whole graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified<T> {
    pub value: T,
    pub exact: bool,
}

/// The explored BFS ball of radius `depth` around `root`.
///
/// Vertices are stored in canonical order: by layer, then by ascending id.
/// Neighbor lists of every explored vertex (including the deepest layer) were
/// queried, so edges among explored vertices are all known and `complete` is
/// exact.
#[derive(Debug, Clone)]
pub struct Truncation {
    root: VertexId,
    depth: usize,
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    layer_of: Vec<usize>,
    layer_start: Vec<usize>,
    adj: Vec<Vec<usize>>,
    degree: Vec<usize>,
    parent: Vec<Option<usize>>,
    frontier: Vec<bool>,
    edge_count: usize,
    complete: bool,
    tree_backed: bool,
    closed_form: bool,
}

/// Explores the ball of radius `depth` around `root` with the default budget.
pub fn explore<O: AdjacencyOracle + ?Sized>(
    oracle: &O,
    root: VertexId,
    depth: usize,
) -> Result<Truncation> {
    explore_with_budget(oracle, root, depth, DEFAULT_VERTEX_BUDGET)
}

pub fn explore_with_budget<O: AdjacencyOracle + ?Sized>(
    oracle: &O,
    root: VertexId,
    depth: usize,
    max_vertices: usize,
) -> Result<Truncation> {
    let mut lists: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    let mut seen: HashSet<VertexId> = HashSet::from([root]);
    let mut parent_of: HashMap<VertexId, VertexId> = HashMap::new();
    let mut frontier: HashSet<VertexId> = HashSet::new();
    let mut layers: Vec<Vec<VertexId>> = vec![vec![root]];

    for n in 0..=depth {
        let mut next = Vec::new();
        for &v in &layers[n] {
            let nbrs = oracle.neighbors(v)?;
            check_list(v, &nbrs)?;
            for &w in &nbrs {
                if seen.contains(&w) {
                    continue;
                }
                if n < depth {
                    seen.insert(w);
                    parent_of.insert(w, v);
                    next.push(w);
                    if seen.len() > max_vertices {
                        return Err(Error::Budget(max_vertices));
                    }
                } else {
                    frontier.insert(v);
                }
            }
            lists.insert(v, nbrs);
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        layers.push(next);
    }

    let vertices: Vec<VertexId> = layers.iter().flatten().copied().collect();
    let index: HashMap<VertexId, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut layer_of = Vec::with_capacity(vertices.len());
    let mut layer_start = vec![0];
    for (n, layer) in layers.iter().enumerate() {
        layer_of.extend(std::iter::repeat_n(n, layer.len()));
        layer_start.push(layer_start[n] + layer.len());
    }

    let mut adj = vec![Vec::new(); vertices.len()];
    let mut degree = vec![0; vertices.len()];
    let mut directed = HashSet::new();
    for (i, v) in vertices.iter().enumerate() {
        let nbrs = &lists[v];
        degree[i] = nbrs.len();
        for w in nbrs {
            if let Some(&j) = index.get(w) {
                adj[i].push(j);
                directed.insert((i, j));
            }
        }
    }
    for (i, j) in (0..vertices.len()).flat_map(|i| adj[i].iter().map(move |&j| (i, j))) {
        if !directed.contains(&(j, i)) {
            return Err(Error::OracleViolation {
                u: vertices[i],
                v: vertices[j],
                reason: "asymmetric neighbor lists",
            });
        }
        if layer_of[i].abs_diff(layer_of[j]) > 1 {
            return Err(Error::OracleViolation {
                u: vertices[i],
                v: vertices[j],
                reason: "edge skips a BFS layer",
            });
        }
    }
    let edge_count = directed.len() / 2;
    let parent: Vec<Option<usize>> = vertices
        .iter()
        .map(|v| parent_of.get(v).map(|p| index[p]))
        .collect();
    let frontier: Vec<bool> = vertices.iter().map(|v| frontier.contains(v)).collect();
    let complete = !frontier.iter().any(|&f| f);

    let tree_backed = oracle.is_tree();
    if tree_backed && edge_count + 1 != vertices.len() {
        let (i, j) = (0..vertices.len())
            .flat_map(|i| adj[i].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| parent[i] != Some(j) && parent[j] != Some(i))
            .expect("a non-tree edge exists when edges >= vertices");
        return Err(Error::OracleViolation {
            u: vertices[i],
            v: vertices[j],
            reason: "oracle declares a tree but this edge closes a cycle",
        });
    }

    // declared sizes describe spheres around the origin only
    let mut closed_form = root == oracle.origin();
    for n in 0..=layers.len().min(depth) {
        if !closed_form {
            break;
        }
        let observed = layers.get(n).map_or(0, Vec::len) as u64;
        match oracle.layer_size(n) {
            None => closed_form = false,
            Some(declared) if declared != observed => {
                return Err(Error::Consistency(format!(
                    "declared sphere size {declared} at radius {n}, BFS found {observed}"
                )))
            }
            Some(_) => {}
        }
    }

    Ok(Truncation {
        root,
        depth,
        vertices,
        index,
        layer_of,
        layer_start,
        adj,
        degree,
        parent,
        frontier,
        edge_count,
        complete,
        tree_backed,
        closed_form,
    })
}

fn check_list(v: VertexId, nbrs: &[VertexId]) -> Result<()> {
    if nbrs.contains(&v) {
        return Err(Error::OracleViolation {
            u: v,
            v,
            reason: "vertex lists itself as a neighbor",
        });
    }
    let mut sorted = nbrs.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::OracleViolation {
            u: v,
            v: w[0],
            reason: "duplicate neighbor",
        });
    }
    Ok(())
}

impl Truncation {
    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Requested exploration radius N.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// True iff no explored vertex has an unexplored neighbor.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_tree_backed(&self) -> bool {
        self.tree_backed
    }

    pub fn is_acyclic(&self) -> bool {
        self.edge_count + 1 == self.vertices.len()
    }

    /// True when the oracle declared every sphere size and BFS agreed.
    pub fn has_closed_form_layers(&self) -> bool {
        self.closed_form
    }

    /// Explored distances agree with the true metric for every pair.
    pub fn distances_exact(&self) -> bool {
        self.complete || self.tree_backed
    }

    /// Number of non-empty layers.
    pub fn layer_count(&self) -> usize {
        self.layer_start.len() - 1
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layer_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    /// Explored edges as (u, v) with u before v in canonical order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, nbrs) in self.adj.iter().enumerate() {
            let mut higher: Vec<usize> = nbrs.iter().copied().filter(|&j| j > i).collect();
            higher.sort_unstable();
            out.extend(
                higher
                    .into_iter()
                    .map(|j| (self.vertices[i], self.vertices[j])),
            );
        }
        out
    }

    pub fn sphere(&self, n: usize) -> Result<Vec<VertexId>> {
        if n > self.depth {
            return Err(Error::Range {
                requested: n,
                depth: self.depth,
            });
        }
        Ok(self.layer(n).to_vec())
    }

    /// Layer `n`, empty past exhaustion.
    pub fn layer(&self, n: usize) -> &[VertexId] {
        match (self.layer_start.get(n), self.layer_start.get(n + 1)) {
            (Some(&a), Some(&b)) => &self.vertices[a..b],
            _ => &[],
        }
    }

    /// Canonical position of layer `n`'s first vertex.
    pub fn layer_offset(&self, n: usize) -> usize {
        self.layer_start[n.min(self.layer_count())]
    }

    pub fn layer_of(&self, v: VertexId) -> Result<usize> {
        self.idx(v).map(|i| self.layer_of[i])
    }

    pub fn parent(&self, v: VertexId) -> Result<Option<VertexId>> {
        self.idx(v)
            .map(|i| self.parent[i].map(|p| self.vertices[p]))
    }

    /// Degree in the whole graph (the oracle's list length).
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.idx(v).map(|i| self.degree[i])
    }

    /// True when `v` has neighbors outside the explored ball.
    pub fn is_frontier(&self, v: VertexId) -> Result<bool> {
        self.idx(v).map(|i| self.frontier[i])
    }

    /// Explored neighbors of `v`, in oracle order.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        self.idx(v)
            .map(|i| self.adj[i].iter().map(|&j| self.vertices[j]).collect())
    }

    /// A distance `c` between vertices on layers `lu`, `lv` is exact when no
    /// path of length <= c can leave the explored ball.
    pub fn pair_exact(&self, lu: usize, lv: usize, c: u64) -> bool {
        let n = self.depth as u64;
        let (lo, hi) = (lu.min(lv) as u64, lu.max(lv) as u64);
        self.distances_exact() || hi + c.div_ceil(2) <= n || lo + c <= n
    }

    /// B(v, r) is fully explored when v's layer plus r stays within depth.
    pub fn ball_exact(&self, layer: usize, r: u64) -> bool {
        self.complete || layer as u64 + r <= self.depth as u64
    }

    /// Shortest-path length inside the explored subgraph.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Certified<u64>> {
        let (i, j) = (self.idx(u)?, self.idx(v)?);
        let value = if self.is_acyclic() {
            self.tree_distance(i, j)
        } else {
            self.bfs_until(i, j)
        };
        Ok(Certified {
            value,
            exact: self.pair_exact(self.layer_of[i], self.layer_of[j], value),
        })
    }

    /// B(v, r) as a sorted vertex list.
    pub fn ball(&self, v: VertexId, r: u64) -> Result<Certified<Vec<VertexId>>> {
        let i = self.idx(v)?;
        let mut value: Vec<VertexId> = self
            .bfs_bounded(&[i], r)
            .into_iter()
            .map(|(j, _)| self.vertices[j])
            .collect();
        value.sort_unstable();
        Ok(Certified {
            value,
            exact: self.ball_exact(self.layer_of[i], r),
        })
    }

    /// B(A, r), the union of balls around members of `set`.
    pub fn ball_of_set(&self, set: &[VertexId], r: u64) -> Result<Certified<Vec<VertexId>>> {
        let sources = set
            .iter()
            .map(|&v| self.idx(v))
            .collect::<Result<Vec<_>>>()?;
        let mut value: Vec<VertexId> = self
            .bfs_bounded(&sources, r)
            .into_iter()
            .map(|(j, _)| self.vertices[j])
            .collect();
        value.sort_unstable();
        let exact = sources
            .iter()
            .all(|&i| self.ball_exact(self.layer_of[i], r));
        Ok(Certified { value, exact })
    }

    /// Maximum degree over vertices on layers <= N-1, or over all vertices
    /// when the truncation is complete.
    pub fn max_degree(&self) -> usize {
        if self.complete {
            self.degree.iter().copied().max().unwrap_or(0)
        } else {
            self.max_degree_through(self.depth.saturating_sub(1))
        }
    }

    /// Maximum degree over layers `0..=last_layer`.
    pub fn max_degree_through(&self, last_layer: usize) -> usize {
        let end = self.layer_offset(last_layer + 1);
        self.degree[..end].iter().copied().max().unwrap_or(0)
    }

    /// Exact diameter by all-pairs BFS. Complete truncations only.
    pub fn diameter(&self) -> Result<u64> {
        if !self.complete {
            return Err(Error::Contract(
                "diameter requires a complete truncation".into(),
            ));
        }
        Ok((0..self.len())
            .map(|i| self.bfs_from(i).into_iter().max().unwrap_or(0) as u64)
            .max()
            .unwrap_or(0))
    }

    pub(crate) fn idx(&self, v: VertexId) -> Result<usize> {
        self.index.get(&v).copied().ok_or(Error::Unexplored(v))
    }

    pub(crate) fn vertex_at(&self, i: usize) -> VertexId {
        self.vertices[i]
    }

    pub(crate) fn layer_at(&self, i: usize) -> usize {
        self.layer_of[i]
    }

    pub(crate) fn adj_at(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Multi-source BFS distances over the explored subgraph.
    pub(crate) fn bfs_multi(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == UNREACHED {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub(crate) fn bfs_from(&self, source: usize) -> Vec<u32> {
        self.bfs_multi(&[source])
    }

    /// Vertices within explored distance `r` of `sources`, with distances.
    pub(crate) fn bfs_bounded(&self, sources: &[usize], r: u64) -> Vec<(usize, u32)> {
        let mut dist: HashMap<usize, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist.insert(s, 0).is_none() {
                queue.push_back(s);
            }
        }
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            out.push((x, d));
            if u64::from(d) >= r {
                continue;
            }
            for &y in &self.adj[x] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(d + 1);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    fn bfs_until(&self, source: usize, target: usize) -> u64 {
        if source == target {
            return 0;
        }
        let mut dist = vec![UNREACHED; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == UNREACHED {
                    dist[y] = dist[x] + 1;
                    if y == target {
                        return u64::from(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        unreachable!("explored subgraph is connected")
    }

    /// Distance through the BFS tree; equals the explored distance when the
    /// explored subgraph is acyclic.
    fn tree_distance(&self, mut i: usize, mut j: usize) -> u64 {
        let mut d = 0;
        while self.layer_of[i] > self.layer_of[j] {
            i = self.parent[i].expect("non-root has a parent");
            d += 1;
        }
        while self.layer_of[j] > self.layer_of[i] {
            j = self.parent[j].expect("non-root has a parent");
            d += 1;
        }
        while i != j {
            i = self.parent[i].expect("non-root has a parent");
            j = self.parent[j].expect("non-root has a parent");
            d += 2;
        }
        d
    }
}
