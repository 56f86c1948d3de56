//! The functor `E_d` from the PROP of bicommutative Hopf algebras to
//! integer matrices, for `d = p^l`.
//!
//! On the generator `f: s -> t` it is the block matrix
//! `[[S^d(f), D_d(f)], [0, I(f)]]` acting on `S^d(Z^s) + Z^s`, where `I(f)` is
//! the linear map of the generator and `D_d` is nonzero only on the antipode
//! and the coproduct.

pub mod matrix;
pub mod relations;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::arith::{binomial_over_p, prime_power};
use crate::{Error, Result};

pub use matrix::IntMat;
pub use relations::{
    check_all_relations, check_relation, enumerate_relations, RelationFamily, RelationInstance, RelationReport,
};

/// The generating morphisms of the PROP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// symmetry `2 -> 2`
    Tau,
    /// product `2 -> 1`
    Nabla,
    /// coproduct `1 -> 2`
    Delta,
    /// counit `1 -> 0`
    Epsilon,
    /// unit `0 -> 1`
    Eta,
    /// antipode `1 -> 1`
    Antipode,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Tau,
        Generator::Nabla,
        Generator::Delta,
        Generator::Epsilon,
        Generator::Eta,
        Generator::Antipode,
    ];

    pub fn source(self) -> usize {
        match self {
            Generator::Tau | Generator::Nabla => 2,
            Generator::Delta | Generator::Epsilon | Generator::Antipode => 1,
            Generator::Eta => 0,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Generator::Tau | Generator::Delta => 2,
            Generator::Nabla | Generator::Eta | Generator::Antipode => 1,
            Generator::Epsilon => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Tau => "tau",
            Generator::Nabla => "nabla",
            Generator::Delta => "delta",
            Generator::Epsilon => "epsilon",
            Generator::Eta => "eta",
            Generator::Antipode => "antipode",
        }
    }

    pub fn parse(s: &str) -> Result<Generator> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s || (s == "S" && *g == Generator::Antipode))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {s:?}")))
    }

    /// Images of the basis vectors under `I(f)`.
    fn images(self) -> Vec<Vec<(usize, i64)>> {
        match self {
            Generator::Tau => vec![vec![(1, 1)], vec![(0, 1)]],
            Generator::Nabla => vec![vec![(0, 1)], vec![(0, 1)]],
            Generator::Delta => vec![vec![(0, 1), (1, 1)]],
            Generator::Epsilon => vec![vec![]],
            Generator::Eta => vec![],
            Generator::Antipode => vec![vec![(0, -1)]],
        }
    }
}

/// `_n[f]_m = id_n (+) f (+) id_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub gen: Generator,
    pub left: usize,
    pub right: usize,
}

impl Edge {
    pub fn new(left: usize, gen: Generator, right: usize) -> Self {
        Edge { gen, left, right }
    }

    pub fn source(&self) -> usize {
        self.left + self.gen.source() + self.right
    }

    pub fn target(&self) -> usize {
        self.left + self.gen.target() + self.right
    }

    /// `I(_n[f]_m)` as columns.
    pub fn linear(&self) -> IntMat {
        let mut cols = Vec::with_capacity(self.source());
        for i in 0..self.left {
            cols.push(vec![(i, 1)]);
        }
        for img in self.gen.images() {
            cols.push(img.into_iter().map(|(t, v)| (t + self.left, v)).collect());
        }
        let shift = self.left + self.gen.target();
        for i in 0..self.right {
            cols.push(vec![(shift + i, 1)]);
        }
        IntMat::from_columns(self.target(), cols)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]{}", self.left, self.gen.name(), self.right)
    }
}

/// A composite `e_1 o e_2 o ... o e_r`; the last edge is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub source: usize,
    pub edges: Vec<Edge>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { source: rank, edges: Vec::new() }
    }

    /// Builds a word, checking that consecutive edges compose.
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        let source = edges
            .last()
            .map(Edge::source)
            .ok_or_else(|| Error::InvalidArgument("use Word::identity for empty words".into()))?;
        let w = Word { source, edges };
        w.target()?;
        Ok(w)
    }

    pub fn target(&self) -> Result<usize> {
        let mut rank = self.source;
        for e in self.edges.iter().rev() {
            if e.source() != rank {
                return Err(Error::InvalidArgument(format!("edge {e} does not accept rank {rank}")));
            }
            rank = e.target();
        }
        Ok(rank)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "id_{}", self.source);
        }
        let parts: Vec<String> = self.edges.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" o "))
    }
}

/// Monomials of degree `d` in `n` variables, in graded-lex order
/// (`e_1^2, e_1 e_2, e_2^2` for `n = d = 2`).
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    pub n: usize,
    pub d: usize,
    monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Self {
        fn go(n: usize, rest: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if prefix.len() + 1 == n {
                prefix.push(rest as u8);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=rest).rev() {
                prefix.push(e as u8);
                go(n, rest - e, prefix, out);
                prefix.pop();
            }
        }
        let mut monomials = Vec::new();
        if n == 0 {
            if d == 0 {
                monomials.push(Vec::new());
            }
        } else {
            go(n, d, &mut Vec::new(), &mut monomials);
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { n, d, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u8>] {
        &self.monomials
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn render(&self, i: usize) -> String {
        let parts: Vec<String> = self.monomials[i]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { format!("e{}", v + 1) } else { format!("e{}^{}", v + 1, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// `E_d(f)` in block form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdMatrix {
    pub source: usize,
    pub target: usize,
    /// `S^d(f)`
    pub sym: IntMat,
    /// `D_d(f): Z^source -> S^d(Z^target)`
    pub cross: IntMat,
    /// `I(f)`
    pub lin: IntMat,
}

impl EdMatrix {
    /// `self o other`.
    pub fn compose(&self, other: &EdMatrix) -> Result<EdMatrix> {
        if self.source != other.target {
            return Err(Error::InvalidArgument("ranks do not compose".into()));
        }
        Ok(EdMatrix {
            source: other.source,
            target: self.target,
            sym: self.sym.mul(&other.sym)?,
            cross: self.sym.mul(&other.cross)?.add(&self.cross.mul(&other.lin)?)?,
            lin: self.lin.mul(&other.lin)?,
        })
    }

    pub fn sub(&self, other: &EdMatrix) -> Result<EdMatrix> {
        Ok(EdMatrix {
            source: self.source,
            target: self.target,
            sym: self.sym.sub(&other.sym)?,
            cross: self.cross.sub(&other.cross)?,
            lin: self.lin.sub(&other.lin)?,
        })
    }

    /// The full block matrix on `S^d(Z^s) + Z^s`.
    pub fn block(&self) -> Vec<Vec<i64>> {
        let (sr, sc) = (self.sym.rows, self.sym.cols);
        let mut out = vec![vec![0; sc + self.source]; sr + self.target];
        for (i, j, v) in self.sym.entries() {
            out[i][j] = v;
        }
        for (i, j, v) in self.cross.entries() {
            out[i][sc + j] = v;
        }
        for (i, j, v) in self.lin.entries() {
            out[sr + i][sc + j] = v;
        }
        out
    }
}

/// Evaluates `E_d` with memoized monomial bases and generator matrices.
#[derive(Debug)]
pub struct EdFunctor {
    pub d: usize,
    pub p: u64,
    bases: std::sync::Mutex<HashMap<usize, Arc<MonomialBasis>>>,
    edges: std::sync::Mutex<HashMap<Edge, Arc<EdMatrix>>>,
}

impl EdFunctor {
    pub fn new(d: usize) -> Result<Self> {
        let (p, _) = prime_power(d as u64).ok_or(Error::NotPrimePower(d as u64))?;
        Ok(EdFunctor { d, p, bases: Default::default(), edges: Default::default() })
    }

    pub fn basis(&self, n: usize) -> Arc<MonomialBasis> {
        let mut cache = self.bases.lock().expect("basis cache");
        cache.entry(n).or_insert_with(|| Arc::new(MonomialBasis::new(n, self.d))).clone()
    }

    /// `S^d` of a linear map given by column images.
    pub fn symmetric_power(&self, lin: &IntMat) -> Result<IntMat> {
        let src = self.basis(lin.cols);
        let dst = self.basis(lin.rows);
        let mut cols = Vec::with_capacity(src.len());
        for mono in src.monomials() {
            let mut poly: HashMap<Vec<u8>, i64> = HashMap::from([(vec![0u8; lin.rows], 1)]);
            for (var, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    poly = multiply_linear(&poly, lin.column(var))?;
                }
            }
            let mut col: Vec<(usize, i64)> = poly
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (dst.index_of(&m).expect("degree preserved"), c))
                .collect();
            col.sort_unstable();
            cols.push(col);
        }
        Ok(IntMat::from_columns(dst.len(), cols))
    }

    /// `D_d(_n[f]_m)`.
    pub fn cross_term(&self, e: &Edge) -> Result<IntMat> {
        let dst = self.basis(e.target());
        let mut cols = vec![Vec::new(); e.source()];
        let var = e.left;
        let d = self.d;
        match e.gen {
            Generator::Antipode => {
                let c = if d % 2 == 0 { 2 } else { 0 };
                if c % self.p != 0 {
                    return Err(Error::Internal("antipode correction is not integral".into()));
                }
                let c = (c / self.p) as i64;
                if c != 0 {
                    let mut exps = vec![0u8; e.target()];
                    exps[var] = d as u8;
                    cols[var].push((dst.index_of(&exps).expect("monomial"), c));
                }
            }
            Generator::Delta => {
                for k in 1..d {
                    let mut exps = vec![0u8; e.target()];
                    exps[var] = k as u8;
                    exps[var + 1] = (d - k) as u8;
                    let c = binomial_over_p(self.p, d as u64, k as u64)?
                        .to_i64()
                        .ok_or(Error::Overflow("coproduct correction"))?;
                    cols[var].push((dst.index_of(&exps).expect("monomial"), c));
                }
                cols[var].sort_unstable();
            }
            _ => {}
        }
        Ok(IntMat::from_columns(dst.len(), cols))
    }

    pub fn edge(&self, e: &Edge) -> Result<Arc<EdMatrix>> {
        if let Some(m) = self.edges.lock().expect("edge cache").get(e) {
            return Ok(m.clone());
        }
        let lin = e.linear();
        let m = Arc::new(EdMatrix {
            source: e.source(),
            target: e.target(),
            sym: self.symmetric_power(&lin)?,
            cross: self.cross_term(e)?,
            lin,
        });
        self.edges.lock().expect("edge cache").insert(*e, m.clone());
        Ok(m)
    }

    pub fn identity(&self, rank: usize) -> EdMatrix {
        let b = self.basis(rank);
        EdMatrix {
            source: rank,
            target: rank,
            sym: IntMat::identity(b.len()),
            cross: IntMat::zeros(b.len(), rank),
            lin: IntMat::identity(rank),
        }
    }

    pub fn word(&self, w: &Word) -> Result<EdMatrix> {
        w.target()?;
        let mut acc = self.identity(w.source);
        for e in w.edges.iter().rev() {
            acc = self.edge(e)?.compose(&acc)?;
        }
        Ok(acc)
    }
}

/// `E_d(_n[f]_m)` as a block matrix.
pub fn ed_matrix(d: usize, e: &Edge) -> Result<EdMatrix> {
    Ok(EdFunctor::new(d)?.edge(e)?.as_ref().clone())
}

fn multiply_linear(poly: &HashMap<Vec<u8>, i64>, lin: &[(usize, i64)]) -> Result<HashMap<Vec<u8>, i64>> {
    let mut out: HashMap<Vec<u8>, i64> = HashMap::new();
    for (m, c) in poly {
        for &(v, a) in lin {
            let mut m2 = m.clone();
            m2[v] += 1;
            let term = c.checked_mul(a).ok_or(Error::Overflow("symmetric power"))?;
            let slot = out.entry(m2).or_insert(0);
            *slot = slot.checked_add(term).ok_or(Error::Overflow("symmetric power"))?;
        }
    }
    Ok(out)
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Ratio {
        assert!(den != 0, "zero denominator");
        let g = num_integer::gcd(num, den);
        let s = if den < 0 { -1 } else { 1 };
        Ratio { num: s * num / g, den: s * den / g }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Outcome of asking for `lambda` with `E_d(Delta-bar)(lambda e^d, e) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionObstruction {
    pub d: usize,
    pub p: u64,
    /// The common solution, if the per-monomial equations agree.
    pub lambda: Option<Ratio>,
    /// `(monomial, a, b)` for each equation `a * lambda + b = 0`.
    pub equations: Vec<(String, i64, i64)>,
}

impl SectionObstruction {
    /// The obstruction holds when the only solution is not an integer.
    pub fn obstructs(&self) -> bool {
        self.lambda.map_or(true, |l| !l.is_integer())
    }
}

/// Solves `E_d(Delta - id (+) eta - eta (+) id)(lambda e^d, e) = 0` for `lambda`.
pub fn section_obstruction(d: usize) -> Result<SectionObstruction> {
    let f = EdFunctor::new(d)?;
    let delta = f.edge(&Edge::new(0, Generator::Delta, 0))?;
    let eta_right = f.edge(&Edge::new(1, Generator::Eta, 0))?;
    let eta_left = f.edge(&Edge::new(0, Generator::Eta, 1))?;
    let bar = delta.sub(&eta_right)?.sub(&eta_left)?;
    if bar.lin.entries().next().is_some() {
        return Err(Error::Internal("reduced coproduct is nonzero on Z".into()));
    }
    let target = f.basis(2);
    let mut equations = Vec::new();
    let mut lambda: Option<Ratio> = None;
    let mut consistent = true;
    for i in 0..target.len() {
        let a = bar.sym.get(i, 0);
        let b = bar.cross.get(i, 0);
        equations.push((target.render(i), a, b));
        if a == 0 {
            consistent &= b == 0;
            continue;
        }
        let sol = Ratio::new(-b, a);
        match lambda {
            None => lambda = Some(sol),
            Some(l) => consistent &= l == sol,
        }
    }
    Ok(SectionObstruction { d, p: f.p, lambda: lambda.filter(|_| consistent), equations })
}

/// Equivariance of a section under the antipode on the last strand forces
/// `a * v_d = b`; returns `(a, b)` and the solution.
pub fn equivariant_obstruction(d: usize) -> Result<(i64, i64, Option<Ratio>)> {
    let f = EdFunctor::new(d)?;
    let s = f.edge(&Edge::new(0, Generator::Antipode, 0))?;
    // s(-e) = E(S)(v e^d, e) compares -v with (-1)^d v + c
    let a = -1 - s.sym.get(0, 0);
    let b = s.cross.get(0, 0);
    let sol = (a != 0).then(|| Ratio::new(b, a));
    Ok((a, b, sol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order() {
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.monomials(), &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(MonomialBasis::new(3, 4).len(), 15);
        assert_eq!(MonomialBasis::new(0, 3).len(), 0);
    }

    #[test]
    fn coproduct_block_for_d2() {
        let m = ed_matrix(2, &Edge::new(0, Generator::Delta, 0)).unwrap();
        // S^2(Delta)(e^2) = e1^2 + 2 e1 e2 + e2^2; D_2(Delta)(e) = e1 e2
        assert_eq!(m.block(), vec![vec![1, 0], vec![2, 1], vec![1, 0], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn obstruction_for_d2() {
        let o = section_obstruction(2).unwrap();
        assert_eq!(o.lambda, Some(Ratio::new(-1, 2)));
        assert!(o.obstructs());
        let (a, b, sol) = equivariant_obstruction(2).unwrap();
        assert_eq!((a, b), (-2, 1));
        assert_eq!(sol, Some(Ratio::new(-1, 2)));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(EdFunctor::new(6).is_err());
    }
}
