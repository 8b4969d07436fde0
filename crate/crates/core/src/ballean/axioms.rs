use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::ballean::FiniteBallStructure;
use crate::graph::VertexId;

/// The radii chosen for one (α, β) pair: `[α′, β′]` for the symmetry
/// properties, `[γ]` for the multiplicative ones. Always the least that work.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub alpha: u64,
    pub beta: u64,
    pub radii: Vec<u64>,
}

/// One rejected candidate radius and the least point where it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFailure {
    pub candidate: u64,
    pub x: VertexId,
}

/// An (α, β) for which no candidate satisfies conjunct `clause`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub alpha: u64,
    pub beta: u64,
    pub clause: usize,
    pub failures: Vec<CandidateFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub lower_symmetric: PropertyVerdict,
    pub upper_symmetric: PropertyVerdict,
    pub lower_multiplicative: PropertyVerdict,
    pub upper_multiplicative: PropertyVerdict,
    /// Upper symmetric and upper multiplicative.
    pub is_ballean: bool,
}

/// A conjunct of the form "∀x: lhs(candidate, x) ⊆ rhs(x)".
type Clause<'a> = Box<dyn Fn(usize, usize) -> (FixedBitSet, FixedBitSet) + 'a>;

/// Least candidate index satisfying the clause for every x, or the list of
/// per-candidate failures.
fn search(
    bs: &FiniteBallStructure,
    clause: &Clause<'_>,
) -> std::result::Result<usize, Vec<CandidateFailure>> {
    let mut failures = Vec::new();
    for c in 0..bs.radii.len() {
        let bad = (0..bs.len()).find(|&x| {
            let (lhs, rhs) = clause(c, x);
            !lhs.is_subset(&rhs)
        });
        match bad {
            None => return Ok(c),
            Some(x) => failures.push(CandidateFailure {
                candidate: bs.radii[c],
                x: bs.support[x],
            }),
        }
    }
    Err(failures)
}

/// Evaluates a property "∀α,β ∃ candidates: all clauses hold".
fn decide<'a, F>(bs: &'a FiniteBallStructure, clauses_for: F) -> PropertyVerdict
where
    F: Fn(usize, usize) -> Vec<Clause<'a>>,
{
    let mut witnesses = Vec::new();
    for a in 0..bs.radii.len() {
        for b in 0..bs.radii.len() {
            let mut radii = Vec::new();
            for (k, clause) in clauses_for(a, b).iter().enumerate() {
                match search(bs, clause) {
                    Ok(c) => radii.push(bs.radii[c]),
                    Err(failures) => {
                        return PropertyVerdict {
                            holds: false,
                            witnesses: Vec::new(),
                            counterexample: Some(Counterexample {
                                alpha: bs.radii[a],
                                beta: bs.radii[b],
                                clause: k,
                                failures,
                            }),
                        }
                    }
                }
            }
            witnesses.push(Witness {
                alpha: bs.radii[a],
                beta: bs.radii[b],
                radii,
            });
        }
    }
    PropertyVerdict {
        holds: true,
        witnesses,
        counterexample: None,
    }
}

/// Decides the four symmetry/multiplicativity properties by exhaustive search
/// over the radius set and the support.
pub fn check_axioms(bs: &FiniteBallStructure) -> AxiomReport {
    // B*(x,α′) ⊆ B(x,α) and B(x,β′) ⊆ B*(x,β)
    let lower_symmetric = decide(bs, |a, b| -> Vec<Clause<'_>> {
        vec![
            Box::new(move |c, x| (bs.star(c, x).clone(), bs.ball_at(a, x).clone())),
            Box::new(move |c, x| (bs.ball_at(c, x).clone(), bs.star(b, x).clone())),
        ]
    });
    // B(x,α) ⊆ B*(x,α′) and B*(x,β) ⊆ B(x,β′)
    let upper_symmetric = decide(bs, |a, b| -> Vec<Clause<'_>> {
        vec![
            Box::new(move |c, x| (bs.ball_at(a, x).clone(), bs.star(c, x).clone())),
            Box::new(move |c, x| (bs.star(b, x).clone(), bs.ball_at(c, x).clone())),
        ]
    });
    // B(B(x,γ),γ) ⊆ B(x,α) ∩ B(x,β)
    let lower_multiplicative = decide(bs, |a, b| -> Vec<Clause<'_>> {
        vec![Box::new(move |c, x| {
            let twice = bs.ball_of_set(c, bs.ball_at(c, x));
            let mut both = bs.ball_at(a, x).clone();
            both.intersect_with(bs.ball_at(b, x));
            (twice, both)
        })]
    });
    // B(B(x,α),β) ⊆ B(x,γ)
    let upper_multiplicative = decide(bs, |a, b| -> Vec<Clause<'_>> {
        vec![Box::new(move |c, x| {
            (
                bs.ball_of_set(b, bs.ball_at(a, x)),
                bs.ball_at(c, x).clone(),
            )
        })]
    });
    let is_ballean = upper_symmetric.holds && upper_multiplicative.holds;
    AxiomReport {
        lower_symmetric,
        upper_symmetric,
        lower_multiplicative,
        upper_multiplicative,
        is_ballean,
    }
}
