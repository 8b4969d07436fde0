//! Built-in graph families.
//!
//! Every family is presented lazily with a documented vertex encoding and a
//! closed-form sphere size around its origin. Encodings are chosen so that
//! inside each BFS layer the "backbone" vertex (spine, rail) has the smallest
//! id, which makes the deterministic arrow follow the backbone.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyOracle, VertexId};

/// Leg length hanging from spine vertex `n` of a caterpillar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegProfile {
    Const(u64),
    Linear,
}

impl LegProfile {
    fn len_at(self, n: u64) -> u64 {
        match self {
            LegProfile::Const(c) => c,
            LegProfile::Linear => n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Vertices 0,1,2,… with edges (i, i+1).
    Ray,
    /// Vertices 0..=n, so `Path(n)` has n edges.
    Path(u64),
    Cycle(u64),
    Complete(u64),
    /// `None` is the one-sided infinite ladder. Vertex (n, side) is 2n+side.
    Ladder(Option<u64>),
    /// `None` is the infinite comb. Spine n is 2n, the tooth on spine n is 2n+3.
    Comb(Option<u64>),
    /// Full k-ary tree in heap numbering; `None` depth means infinite.
    Kary {
        k: u64,
        depth: Option<u64>,
    },
    /// Infinite spine with a leg at every spine vertex. Leg vertex j on spine
    /// n is encoded as L(L+1)/2 + j with L = n + j (j = 0 is the spine).
    Caterpillar(LegProfile),
}

/// A parsed generator string such as `comb:inf` or `kary:2:12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Result<Self> {
        let spec = GeneratorSpec { family };
        let bad = |message: &str| Error::Generator {
            spec: spec.to_string(),
            message: message.to_owned(),
        };
        match family {
            Family::Cycle(n) if n < 3 => return Err(bad("a cycle needs at least 3 vertices")),
            Family::Complete(0) => return Err(bad("complete graph needs at least 1 vertex")),
            Family::Ladder(Some(0)) | Family::Comb(Some(0)) => {
                return Err(bad("length must be at least 1"))
            }
            Family::Kary { k: 0, .. } => return Err(bad("arity must be at least 1")),
            _ => {}
        }
        Ok(spec)
    }

    /// True when the family has finitely many vertices.
    pub fn is_finite(&self) -> bool {
        match self.family {
            Family::Ray | Family::Caterpillar(_) => false,
            Family::Path(_) | Family::Cycle(_) | Family::Complete(_) => true,
            Family::Ladder(len) | Family::Comb(len) => len.is_some(),
            Family::Kary { depth, .. } => depth.is_some(),
        }
    }

    fn unknown(&self, v: VertexId) -> Error {
        Error::UnknownVertex(v)
    }
}

fn checked(v: VertexId, x: Option<u64>) -> Result<VertexId> {
    x.map(VertexId).ok_or(Error::IdOverflow(v))
}

/// Level of heap index `v` in a k-ary tree.
fn kary_level(k: u64, v: u64) -> u64 {
    if k == 1 {
        return v;
    }
    let (mut level, mut start, mut width) = (0u64, 0u64, 1u64);
    loop {
        match start.checked_add(width) {
            Some(next) if v >= next => {
                start = next;
                width = width.saturating_mul(k);
                level += 1;
            }
            _ => return level,
        }
    }
}

fn triangular(l: u64) -> Option<u64> {
    l.checked_mul(l.checked_add(1)?).map(|x| x / 2)
}

/// Inverse of the caterpillar encoding: returns (spine index, leg position).
fn caterpillar_decode(id: u64) -> (u64, u64) {
    // largest L with L(L+1)/2 <= id
    let mut l = (((8.0 * id as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while triangular(l + 1).is_some_and(|t| t <= id) {
        l += 1;
    }
    while triangular(l).is_none_or(|t| t > id) {
        l -= 1;
    }
    let j = id - triangular(l).unwrap_or(0);
    (l - j, j)
}

fn caterpillar_encode(v: VertexId, spine: u64, leg: u64) -> Result<VertexId> {
    let l = spine.checked_add(leg);
    checked(v, l.and_then(triangular).and_then(|t| t.checked_add(leg)))
}

impl AdjacencyOracle for GeneratorSpec {
    fn origin(&self) -> VertexId {
        VertexId(0)
    }

    fn neighbors(&self, vertex: VertexId) -> Result<Vec<VertexId>> {
        let v = vertex.0;
        let mut out = Vec::new();
        match self.family {
            Family::Ray => {
                if v > 0 {
                    out.push(VertexId(v - 1));
                }
                out.push(checked(vertex, v.checked_add(1))?);
            }
            Family::Path(n) => {
                if v > n {
                    return Err(self.unknown(vertex));
                }
                if v > 0 {
                    out.push(VertexId(v - 1));
                }
                if v < n {
                    out.push(VertexId(v + 1));
                }
            }
            Family::Cycle(n) => {
                if v >= n {
                    return Err(self.unknown(vertex));
                }
                out.push(VertexId((v + n - 1) % n));
                out.push(VertexId((v + 1) % n));
            }
            Family::Complete(n) => {
                if v >= n {
                    return Err(self.unknown(vertex));
                }
                out.extend((0..n).filter(|&u| u != v).map(VertexId));
            }
            Family::Ladder(len) => {
                let (rung, side) = (v / 2, v % 2);
                if len.is_some_and(|l| rung >= l) {
                    return Err(self.unknown(vertex));
                }
                out.push(VertexId(v ^ 1));
                if rung > 0 {
                    out.push(VertexId(v - 2));
                }
                if len.is_none_or(|l| rung + 1 < l) {
                    out.push(checked(
                        vertex,
                        (rung + 1).checked_mul(2).map(|x| x + side),
                    )?);
                }
            }
            Family::Comb(len) => {
                let spine = if v.is_multiple_of(2) {
                    Some(v / 2)
                } else if v >= 3 {
                    None
                } else {
                    return Err(self.unknown(vertex));
                };
                let index = spine.unwrap_or_else(|| (v - 3) / 2);
                if len.is_some_and(|l| index >= l) {
                    return Err(self.unknown(vertex));
                }
                match spine {
                    Some(n) => {
                        if n > 0 {
                            out.push(VertexId(2 * (n - 1)));
                        }
                        if len.is_none_or(|l| n + 1 < l) {
                            out.push(checked(vertex, (n + 1).checked_mul(2))?);
                        }
                        out.push(checked(vertex, v.checked_add(3))?);
                    }
                    None => out.push(VertexId(2 * index)),
                }
            }
            Family::Kary { k, depth } => {
                let level = kary_level(k, v);
                if depth.is_some_and(|d| level > d) {
                    return Err(self.unknown(vertex));
                }
                if v > 0 {
                    out.push(VertexId((v - 1) / k));
                }
                if depth.is_none_or(|d| level < d) {
                    let first = checked(vertex, v.checked_mul(k).and_then(|x| x.checked_add(1)))?;
                    for c in 0..k {
                        out.push(checked(vertex, first.0.checked_add(c))?);
                    }
                }
            }
            Family::Caterpillar(profile) => {
                let (spine, leg) = caterpillar_decode(v);
                let len = profile.len_at(spine);
                if leg > len {
                    return Err(self.unknown(vertex));
                }
                if leg == 0 {
                    if spine > 0 {
                        out.push(caterpillar_encode(vertex, spine - 1, 0)?);
                    }
                    out.push(caterpillar_encode(vertex, spine + 1, 0)?);
                    if len >= 1 {
                        out.push(caterpillar_encode(vertex, spine, 1)?);
                    }
                } else {
                    out.push(caterpillar_encode(vertex, spine, leg - 1)?);
                    if leg < len {
                        out.push(caterpillar_encode(vertex, spine, leg + 1)?);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn is_tree(&self) -> bool {
        match self.family {
            Family::Ray
            | Family::Path(_)
            | Family::Comb(_)
            | Family::Kary { .. }
            | Family::Caterpillar(_) => true,
            Family::Cycle(_) => false,
            Family::Complete(n) => n <= 2,
            Family::Ladder(len) => len == Some(1),
        }
    }

    fn layer_size(&self, n: usize) -> Option<u64> {
        let n = n as u64;
        let size = match self.family {
            Family::Ray => 1,
            Family::Path(len) => u64::from(n <= len),
            Family::Cycle(len) => match (n, 2 * n) {
                (0, _) => 1,
                (_, twice) if twice < len => 2,
                (_, twice) if twice == len => 1,
                _ => 0,
            },
            Family::Complete(len) => match n {
                0 => 1,
                1 => len - 1,
                _ => 0,
            },
            Family::Ladder(len) | Family::Comb(len) => match (n, len) {
                (0, _) => 1,
                (_, None) => 2,
                (n, Some(l)) if n < l => 2,
                (n, Some(l)) if n == l => 1,
                _ => 0,
            },
            Family::Kary { k, depth } => {
                if depth.is_some_and(|d| n > d) {
                    0
                } else {
                    k.checked_pow(u32::try_from(n).ok()?)?
                }
            }
            Family::Caterpillar(LegProfile::Const(c)) => 1 + c.min(n),
            Family::Caterpillar(LegProfile::Linear) => 1 + n / 2,
        };
        Some(size)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = |l: Option<u64>| l.map_or_else(|| "inf".to_owned(), |l| l.to_string());
        match self.family {
            Family::Ray => write!(f, "ray"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Ladder(l) => write!(f, "ladder:{}", len(l)),
            Family::Comb(l) => write!(f, "comb:{}", len(l)),
            Family::Kary { k, depth } => write!(f, "kary:{k}:{}", len(depth)),
            Family::Caterpillar(LegProfile::Const(c)) => write!(f, "caterpillar:const:{c}"),
            Family::Caterpillar(LegProfile::Linear) => write!(f, "caterpillar:linear"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::Generator {
            spec: s.to_owned(),
            message: message.to_owned(),
        };
        let int = |p: &str| {
            p.parse::<u64>()
                .map_err(|_| bad("expected a non-negative integer"))
        };
        let len = |p: &str| {
            if p == "inf" {
                Ok(None)
            } else {
                int(p).map(Some)
            }
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let family = match parts.as_slice() {
            ["ray"] => Family::Ray,
            ["path", n] => Family::Path(int(n)?),
            ["cycle", n] => Family::Cycle(int(n)?),
            ["complete", n] => Family::Complete(int(n)?),
            ["ladder", n] => Family::Ladder(len(n)?),
            ["comb", n] => Family::Comb(len(n)?),
            ["kary", k, d] => Family::Kary {
                k: int(k)?,
                depth: len(d)?,
            },
            ["caterpillar", "const", c] => Family::Caterpillar(LegProfile::Const(int(c)?)),
            ["caterpillar", "linear"] => Family::Caterpillar(LegProfile::Linear),
            _ => return Err(bad("unrecognized family")),
        };
        GeneratorSpec::new(family).map_err(|e| match e {
            Error::Generator { message, .. } => bad(&message),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> GeneratorSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_round_trips_through_display() {
        for s in [
            "ray",
            "path:5",
            "cycle:6",
            "complete:4",
            "ladder:inf",
            "ladder:3",
            "comb:inf",
            "comb:7",
            "kary:2:inf",
            "kary:3:4",
            "caterpillar:const:2",
            "caterpillar:linear",
        ] {
            assert_eq!(gen(s).to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for s in [
            "",
            "tree",
            "path",
            "path:-1",
            "cycle:2",
            "kary:0:3",
            "comb:0",
            "caterpillar:2",
        ] {
            assert!(s.parse::<GeneratorSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn caterpillar_encoding_is_a_bijection_on_small_ids() {
        for id in 0..500u64 {
            let (spine, leg) = caterpillar_decode(id);
            assert_eq!(
                caterpillar_encode(VertexId(id), spine, leg).unwrap(),
                VertexId(id)
            );
        }
    }

    #[test]
    fn comb_adjacency() {
        let comb = gen("comb:inf");
        // spine 1 = 2: spine 0, spine 2, tooth 1 = 5
        assert_eq!(
            comb.neighbors(VertexId(2)).unwrap(),
            vec![VertexId(0), VertexId(4), VertexId(5)]
        );
        assert_eq!(comb.neighbors(VertexId(5)).unwrap(), vec![VertexId(2)]);
        assert!(matches!(
            comb.neighbors(VertexId(1)),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn kary_levels() {
        assert_eq!(kary_level(2, 0), 0);
        assert_eq!(kary_level(2, 2), 1);
        assert_eq!(kary_level(2, 3), 2);
        assert_eq!(kary_level(2, 6), 2);
        assert_eq!(kary_level(2, 7), 3);
        assert_eq!(kary_level(3, 4), 2);
        assert_eq!(kary_level(1, 9), 9);
    }

    #[test]
    fn kary_overflow_is_reported() {
        let tree = gen("kary:2:inf");
        assert!(matches!(
            tree.neighbors(VertexId(u64::MAX / 2 + 7)),
            Err(Error::IdOverflow(_))
        ));
    }

    #[test]
    fn finite_families_reject_out_of_range_ids() {
        assert!(gen("path:3").neighbors(VertexId(4)).is_err());
        assert!(gen("ladder:2").neighbors(VertexId(4)).is_err());
        assert!(gen("kary:2:2").neighbors(VertexId(7)).is_err());
        assert!(gen("caterpillar:const:1").neighbors(VertexId(5)).is_err());
    }
}
