use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyOracle, VertexId};

/// A finite undirected graph read from `u v` lines.
///
/// Duplicate edges collapse; self-loops are rejected. The origin is the least
/// vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListGraph {
    adjacency: BTreeMap<VertexId, Vec<VertexId>>,
}

impl EdgeListGraph {
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adjacency: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::OracleViolation {
                    u,
                    v,
                    reason: "self-loop",
                });
            }
            adjacency.entry(u).or_default().push(v);
            adjacency.entry(v).or_default().push(u);
        }
        if adjacency.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "edge list contains no edges".into(),
            });
        }
        for list in adjacency.values_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(EdgeListGraph { adjacency })
    }

    /// Parses the `u v` format: `#` starts a comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [u, v] = fields.as_slice() else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected two vertex ids, found {:?}", content),
                });
            };
            let id = |s: &str| {
                s.parse::<u64>().map(VertexId).map_err(|_| Error::Parse {
                    line,
                    message: format!("{s:?} is not a non-negative integer"),
                })
            };
            let (u, v) = (id(u)?, id(v)?);
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop on {u}"),
                });
            }
            edges.push((u, v));
        }
        Self::from_edges(edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.keys().copied()
    }
}

impl AdjacencyOracle for EdgeListGraph {
    fn origin(&self) -> VertexId {
        *self
            .adjacency
            .keys()
            .next()
            .expect("non-empty by construction")
    }

    fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        self.adjacency
            .get(&v)
            .cloned()
            .ok_or(Error::UnknownVertex(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_duplicates() {
        let g = EdgeListGraph::parse("# triangle\n0 1\n\n1 2 # trailing\n2 0\n1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(
            g.neighbors(VertexId(1)).unwrap(),
            vec![VertexId(0), VertexId(2)]
        );
        assert_eq!(g.origin(), VertexId(0));
    }

    #[test]
    fn reports_line_numbers() {
        let err = EdgeListGraph::parse("0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = EdgeListGraph::parse("0 1\n\n2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = EdgeListGraph::parse("0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(EdgeListGraph::parse("# nothing\n").is_err());
    }
}
