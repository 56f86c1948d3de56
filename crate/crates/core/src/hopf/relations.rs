//! The defining relations of the bicommutative Hopf PROP, instantiated with
//! all paddings up to a bound.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{EdFunctor, Edge, Generator, Word};
use crate::Result;

use Generator::{Antipode, Delta, Epsilon, Eta, Nabla, Tau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationFamily {
    Monoidality,
    SymmetryInvolution,
    Braid,
    Naturality,
    Associativity,
    Unit,
    Commutativity,
    Coassociativity,
    Counit,
    Cocommutativity,
    Antipode,
    Bialgebra,
    CounitUnit,
    CounitProduct,
    CoproductUnit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: RelationFamily,
    pub lhs: Word,
    pub rhs: Word,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} ~ {}", self.family, self.lhs, self.rhs)
    }
}

fn e(n: usize, g: Generator, m: usize) -> Edge {
    Edge::new(n, g, m)
}

fn word(edges: Vec<Edge>) -> Word {
    Word::new(edges).expect("relation words are composable")
}

/// Moves a block of `k` strands past the single strand to its right.
fn cross_block_right(n: usize, k: usize, m: usize) -> Vec<Edge> {
    (0..k).map(|i| e(n + i, Tau, m + k - 1 - i)).collect()
}

/// Moves a single strand past the block of `k` strands to its right.
fn cross_single_right(n: usize, k: usize, m: usize) -> Vec<Edge> {
    (0..k).rev().map(|i| e(n + i, Tau, m + k - 1 - i)).collect()
}

/// Builds a word whose source is forced even when `edges` is empty.
fn word_from(source: usize, edges: Vec<Edge>) -> Word {
    if edges.is_empty() {
        Word::identity(source)
    } else {
        let w = word(edges);
        assert_eq!(w.source, source, "relation word has unexpected source");
        w
    }
}

/// Every relation instance with paddings `n + m <= bound` (and `n + a + m <= bound`
/// for the interchange law).
pub fn enumerate_relations(bound: usize) -> Vec<RelationInstance> {
    use RelationFamily as F;
    let mut out = Vec::new();
    let mut push = |family, lhs, rhs| out.push(RelationInstance { family, lhs, rhs });
    for total in 0..=bound {
        for n in 0..=total {
            let m = total - n;
            push(F::SymmetryInvolution, word(vec![e(n, Tau, m), e(n, Tau, m)]), Word::identity(n + 2 + m));
            push(
                F::Braid,
                word(vec![e(n, Tau, m + 1), e(n + 1, Tau, m), e(n, Tau, m + 1)]),
                word(vec![e(n + 1, Tau, m), e(n, Tau, m + 1), e(n + 1, Tau, m)]),
            );
            for f in Generator::ALL {
                let (s, t) = (f.source(), f.target());
                let mut lhs = cross_block_right(n, t, m);
                lhs.push(e(n, f, m + 1));
                let mut rhs = vec![e(n + 1, f, m)];
                rhs.extend(cross_block_right(n, s, m));
                push(F::Naturality, word_from(n + s + 1 + m, lhs), word_from(n + s + 1 + m, rhs));
                let mut lhs = cross_single_right(n, t, m);
                lhs.push(e(n + 1, f, m));
                let mut rhs = vec![e(n, f, m + 1)];
                rhs.extend(cross_single_right(n, s, m));
                push(F::Naturality, word_from(n + 1 + s + m, lhs), word_from(n + 1 + s + m, rhs));
            }
            push(
                F::Associativity,
                word(vec![e(n, Nabla, m), e(n, Nabla, m + 1)]),
                word(vec![e(n, Nabla, m), e(n + 1, Nabla, m)]),
            );
            push(F::Unit, word(vec![e(n, Nabla, m), e(n, Eta, m + 1)]), Word::identity(n + 1 + m));
            push(F::Unit, word(vec![e(n, Nabla, m), e(n + 1, Eta, m)]), Word::identity(n + 1 + m));
            push(F::Commutativity, word(vec![e(n, Nabla, m), e(n, Tau, m)]), word(vec![e(n, Nabla, m)]));
            push(
                F::Coassociativity,
                word(vec![e(n, Delta, m + 1), e(n, Delta, m)]),
                word(vec![e(n + 1, Delta, m), e(n, Delta, m)]),
            );
            push(F::Counit, word(vec![e(n, Epsilon, m + 1), e(n, Delta, m)]), Word::identity(n + 1 + m));
            push(F::Counit, word(vec![e(n + 1, Epsilon, m), e(n, Delta, m)]), Word::identity(n + 1 + m));
            push(F::Cocommutativity, word(vec![e(n, Tau, m), e(n, Delta, m)]), word(vec![e(n, Delta, m)]));
            for side in [(n, m + 1), (n + 1, m)] {
                push(
                    F::Antipode,
                    word(vec![e(n, Nabla, m), e(side.0, Antipode, side.1), e(n, Delta, m)]),
                    word(vec![e(n, Eta, m), e(n, Epsilon, m)]),
                );
            }
            push(
                F::Bialgebra,
                word(vec![e(n, Delta, m), e(n, Nabla, m)]),
                word(vec![
                    e(n + 1, Nabla, m),
                    e(n, Nabla, m + 2),
                    e(n + 1, Tau, m + 1),
                    e(n + 2, Delta, m),
                    e(n, Delta, m + 1),
                ]),
            );
            // the same compatibility with the other order of the two Delta's and two Nabla's
            push(
                F::Bialgebra,
                word(vec![e(n, Delta, m), e(n, Nabla, m)]),
                word(vec![
                    e(n, Nabla, m + 1),
                    e(n + 2, Nabla, m),
                    e(n + 1, Tau, m + 1),
                    e(n, Delta, m + 2),
                    e(n + 1, Delta, m),
                ]),
            );
            push(F::CounitUnit, word(vec![e(n, Epsilon, m), e(n, Eta, m)]), Word::identity(n + m));
            push(
                F::CounitProduct,
                word(vec![e(n, Epsilon, m), e(n, Nabla, m)]),
                word(vec![e(n, Epsilon, m), e(n, Epsilon, m + 1)]),
            );
            push(
                F::CoproductUnit,
                word(vec![e(n, Delta, m), e(n, Eta, m)]),
                word(vec![e(n, Eta, m + 1), e(n, Eta, m)]),
            );
            for a in 0..=bound - total {
                for f1 in Generator::ALL {
                    for f2 in Generator::ALL {
                        let (s1, t1, s2, t2) = (f1.source(), f1.target(), f2.source(), f2.target());
                        push(
                            F::Monoidality,
                            word(vec![e(n, f1, a + t2 + m), e(n + s1 + a, f2, m)]),
                            word(vec![e(n + t1 + a, f2, m), e(n, f1, a + s2 + m)]),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Do both sides of the relation have the same image under `E_d`?
pub fn check_relation(functor: &EdFunctor, rel: &RelationInstance) -> Result<bool> {
    Ok(functor.word(&rel.lhs)? == functor.word(&rel.rhs)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub d: usize,
    pub p: u64,
    pub bound: usize,
    pub checked: usize,
    pub per_family: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Checks every relation instance up to the padding bound.
pub fn check_all_relations(d: usize, bound: usize) -> Result<RelationReport> {
    let functor = EdFunctor::new(d)?;
    let rels = enumerate_relations(bound);
    let outcomes: Vec<bool> = rels.par_iter().map(|r| check_relation(&functor, r)).collect::<Result<_>>()?;
    let mut per_family = BTreeMap::new();
    let mut failures = Vec::new();
    for (r, ok) in rels.iter().zip(outcomes) {
        *per_family.entry(format!("{:?}", r.family)).or_insert(0) += 1;
        if !ok {
            failures.push(r.to_string());
        }
    }
    Ok(RelationReport { d, p: functor.p, bound, checked: rels.len(), per_family, failures })
}
