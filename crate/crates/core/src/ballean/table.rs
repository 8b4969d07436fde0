//! Ball-table files.
//!
//! ```text
//! support: 2, radii: 1
//! 0 1: 0 1
//! 1 1: 1
//! ```
//!
//! The header fixes the support to `0..n` and the number of distinct radius
//! labels. Each following line `x alpha: y1 y2 …` lists B(x, alpha). Every
//! (x, alpha) pair must appear exactly once. `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet};

use crate::ballean::FiniteBallStructure;
use crate::error::{Error, Result};
use crate::graph::VertexId;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(line: usize, s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("{s:?} is not a non-negative integer")))
}

fn header(line: usize, text: &str) -> Result<(u64, usize)> {
    let mut support = None;
    let mut radii = None;
    for part in text.split(',') {
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected header \"support: n, radii: k\""))?;
        match key.trim() {
            "support" => support = Some(number(line, value)?),
            "radii" => radii = Some(number(line, value)? as usize),
            other => return Err(parse_err(line, format!("unknown header key {other:?}"))),
        }
    }
    match (support, radii) {
        (Some(n), Some(k)) if n > 0 && k > 0 => Ok((n, k)),
        _ => Err(parse_err(
            line,
            "header needs positive \"support\" and \"radii\"",
        )),
    }
}

impl FiniteBallStructure {
    pub fn parse_ball_table(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, htext) = lines
            .next()
            .ok_or_else(|| parse_err(0, "empty ball table"))?;
        let (n, k) = header(hline, htext)?;

        let mut table: BTreeMap<(u64, u64), Vec<VertexId>> = BTreeMap::new();
        let mut labels = BTreeSet::new();
        for (line, content) in lines {
            let (key, members) = content
                .split_once(':')
                .ok_or_else(|| parse_err(line, "expected \"x alpha: y1 y2 …\""))?;
            let key: Vec<&str> = key.split_whitespace().collect();
            let [x, alpha] = key.as_slice() else {
                return Err(parse_err(line, "expected \"x alpha\" before ':'"));
            };
            let (x, alpha) = (number(line, x)?, number(line, alpha)?);
            if x >= n {
                return Err(parse_err(line, format!("{x} is outside support 0..{n}")));
            }
            let ball = members
                .split_whitespace()
                .map(|y| {
                    let y = number(line, y)?;
                    if y >= n {
                        return Err(parse_err(line, format!("{y} is outside support 0..{n}")));
                    }
                    Ok(VertexId(y))
                })
                .collect::<Result<Vec<_>>>()?;
            if !ball.contains(&VertexId(x)) {
                return Err(parse_err(
                    line,
                    format!("ball({x}, {alpha}) must contain {x}"),
                ));
            }
            if table.insert((x, alpha), ball).is_some() {
                return Err(parse_err(line, format!("ball({x}, {alpha}) given twice")));
            }
            labels.insert(alpha);
        }
        if labels.len() != k {
            return Err(parse_err(
                hline,
                format!("header declares {k} radii, table uses {}", labels.len()),
            ));
        }
        for x in 0..n {
            for &alpha in &labels {
                if !table.contains_key(&(x, alpha)) {
                    return Err(parse_err(0, format!("ball({x}, {alpha}) is missing")));
                }
            }
        }
        FiniteBallStructure::new(
            (0..n).map(VertexId).collect(),
            labels.into_iter().collect(),
            |x, alpha| table[&(x.0, alpha)].clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballean::check_axioms;

    #[test]
    fn parses_two_point_table() {
        let bs = FiniteBallStructure::parse_ball_table(
            "# asymmetric pair\nsupport: 2, radii: 1\n0 1: 0 1\n1 1: 1\n",
        )
        .unwrap();
        assert_eq!(bs.radii(), &[1]);
        assert!(!check_axioms(&bs).upper_symmetric.holds);
    }

    #[test]
    fn table_errors_carry_line_numbers() {
        let cases = [
            ("support: 2\n", 1),
            ("support: 2, radii: 1\n0 1 0 1\n", 2),
            ("support: 2, radii: 1\n0 1: 0 1\n1 1: 0\n", 3),
            ("support: 2, radii: 1\n0 1: 0 1\n0 1: 0\n", 3),
            ("support: 2, radii: 1\n0 1: 0 5\n", 2),
            ("support: 2, radii: 2\n0 1: 0\n1 1: 1\n", 1),
        ];
        for (text, line) in cases {
            match FiniteBallStructure::parse_ball_table(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(FiniteBallStructure::parse_ball_table("support: 2, radii: 1\n0 1: 0\n").is_err());
    }
}
