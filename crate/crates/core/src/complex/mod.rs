//! The Arone complex `AC(d)`: `AC^k` is free on `<n_1 ... n_k>` with
//! `0 < n_1 < ... < n_k < d`, and the differential inserts a new mark into
//! every gap with a binomial coefficient.

mod cochain;
pub mod generators;
pub mod localized;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::arith::binomial;
use crate::homology::matrix::{ModMatrix, SparseIntMatrix};
use crate::homology::snf::{smith_normal_form, SmithForm};
use crate::{Error, Result};

pub use cochain::Cochain;
pub use generators::{
    complement_element, h1_generator, h1_modpn_generator, h2_generator, top_generator, u_cochain,
    z1_modpn_generators,
};
pub use localized::{localized_differential_matrix, phi_matrix};

/// `<n_1 ... n_k>` in `AC^k(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    d: usize,
    marks: Vec<usize>,
}

impl BasisElement {
    pub fn new(d: usize, marks: Vec<usize>) -> Result<Self> {
        let increasing = marks.windows(2).all(|w| w[0] < w[1]);
        let in_range = marks.iter().all(|&n| n > 0 && n < d);
        if d == 0 || !increasing || !in_range {
            return Err(Error::MalformedBasis(marks, d));
        }
        Ok(BasisElement { d, marks })
    }

    pub fn empty(d: usize) -> Self {
        BasisElement { d, marks: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.marks.len()
    }

    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    /// The element on `{1, ..., d-1}` minus these marks.
    pub fn complement(&self) -> BasisElement {
        let marks = (1..self.d).filter(|n| self.marks.binary_search(n).is_err()).collect();
        BasisElement { d: self.d, marks }
    }

    /// Terms of the differential of this basis element.
    pub fn differential(&self) -> Vec<(BasisElement, BigInt)> {
        let k = self.marks.len();
        let mut out = Vec::new();
        for j in 1..=k + 1 {
            let lo = if j == 1 { 0 } else { self.marks[j - 2] };
            let hi = if j == k + 1 { self.d } else { self.marks[j - 1] };
            for m in lo + 1..hi {
                let mut marks = Vec::with_capacity(k + 1);
                marks.extend_from_slice(&self.marks[..j - 1]);
                marks.push(m);
                marks.extend_from_slice(&self.marks[j - 1..]);
                let mut c = binomial((hi - lo) as u64, (m - lo) as u64);
                if j % 2 == 1 {
                    c = -c;
                }
                out.push((BasisElement { d: self.d, marks }, c));
            }
        }
        out
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.marks.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", inner.join(" "))
    }
}

/// `rank AC^k(d) = C(d-1, k)`.
pub fn dim(d: usize, k: usize) -> usize {
    if d == 0 || k > d - 1 {
        return 0;
    }
    crate::arith::binomial_u128((d - 1) as u64, k as u64)
        .and_then(|v| usize::try_from(v).ok())
        .expect("dimension fits in usize")
}

/// Basis of `AC^k(d)` in lexicographic order.
pub fn enumerate_basis(d: usize, k: usize) -> Vec<BasisElement> {
    use itertools::Itertools;
    if d == 0 || k > d - 1 {
        return Vec::new();
    }
    (1..d).combinations(k).map(|marks| BasisElement { d, marks }).collect()
}

/// A degree of `AC(d)` with its basis indexed for lookup.
#[derive(Debug, Clone)]
pub struct Basis {
    pub d: usize,
    pub k: usize,
    elements: Vec<BasisElement>,
    index: HashMap<Vec<usize>, usize>,
}

impl Basis {
    pub fn new(d: usize, k: usize) -> Self {
        let elements = enumerate_basis(d, k);
        let index = elements.iter().enumerate().map(|(i, e)| (e.marks.clone(), i)).collect();
        Basis { d, k, elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn index_of(&self, e: &BasisElement) -> Option<usize> {
        self.index.get(&e.marks).copied()
    }
}

/// Differential of a basis element, as a cochain of degree `k + 1`.
pub fn differential(e: &BasisElement) -> Cochain {
    let mut c = Cochain::zero(e.d, e.degree() + 1);
    for (t, v) in e.differential() {
        c.add_term(t, v);
    }
    c
}

/// Matrix of `delta^k : AC^k -> AC^{k+1}` in the lexicographic bases.
pub fn differential_matrix(d: usize, k: usize) -> SparseIntMatrix {
    let src = Basis::new(d, k);
    let dst = Basis::new(d, k + 1);
    let mut m = SparseIntMatrix::zeros(dst.len(), src.len());
    for (j, e) in src.elements().iter().enumerate() {
        for (t, v) in e.differential() {
            let i = dst.index_of(&t).expect("differential lands in the next degree");
            m.set(i, j, v);
        }
    }
    m
}

/// Number of nonzeros of `delta^k` without building it.
pub fn differential_nnz(d: usize, k: usize) -> u128 {
    if d == 0 || k >= d - 1 {
        return 0;
    }
    // each k-subset has d - 1 - k free positions to insert
    dim(d, k) as u128 * (d - 1 - k) as u128
}

/// Shared access to one complex `AC(d)`; matrices and Smith forms are
/// built on first use and then reused, safely across threads.
#[derive(Debug)]
pub struct ComplexHandle {
    pub d: usize,
    bases: Vec<OnceLock<Basis>>,
    matrices: Vec<OnceLock<SparseIntMatrix>>,
    smith: Vec<OnceLock<SmithForm>>,
}

impl ComplexHandle {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("d must be positive".into()));
        }
        Ok(ComplexHandle {
            d,
            bases: (0..d).map(|_| OnceLock::new()).collect(),
            matrices: (0..d).map(|_| OnceLock::new()).collect(),
            smith: (0..d).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Top degree `d - 1`.
    pub fn top(&self) -> usize {
        self.d - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        dim(self.d, k)
    }

    pub fn basis(&self, k: usize) -> &Basis {
        self.bases[k].get_or_init(|| Basis::new(self.d, k))
    }

    /// `delta^k`; `k = d - 1` gives the zero map to `AC^d = 0`.
    pub fn matrix(&self, k: usize) -> &SparseIntMatrix {
        self.matrices[k].get_or_init(|| differential_matrix(self.d, k))
    }

    /// Smith form (without transforms) of `delta^k`.
    pub fn smith(&self, k: usize) -> &SmithForm {
        self.smith[k].get_or_init(|| smith_normal_form(self.matrix(k), false))
    }

    pub fn reduced_matrix(&self, k: usize, modulus: u64) -> ModMatrix {
        self.matrix(k).reduce_mod(modulus)
    }

    pub fn to_vector(&self, c: &Cochain) -> Result<Vec<BigInt>> {
        c.to_vector(self.basis(c.k))
    }

    pub fn apply(&self, c: &Cochain) -> Result<Cochain> {
        if c.d != self.d || c.k >= self.d {
            return Err(Error::InvalidArgument("cochain does not belong to this complex".into()));
        }
        Ok(c.differential())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_differential() {
        let m = differential_matrix(4, 0);
        let col: Vec<i64> = (0..3).map(|i| i64::try_from(m.get(i, 0)).unwrap()).collect();
        assert_eq!(col, vec![-4, -6, -4]);
    }

    #[test]
    fn example_differential() {
        // d = 5: delta<2> = -C(2,1)<1 2> + C(3,1)<2 3> + C(3,2)<2 4>
        let e = BasisElement::new(5, vec![2]).unwrap();
        assert_eq!(differential(&e).to_string(), "-2*<1 2> + 3*<2 3> + 3*<2 4>");
    }

    #[test]
    fn dims_and_shapes() {
        assert_eq!(dim(5, 2), 6);
        assert_eq!(enumerate_basis(4, 2).len(), 3);
        let top = differential_matrix(4, 3);
        assert_eq!((top.rows, top.cols), (0, 1));
        assert_eq!(differential_nnz(6, 1), differential_matrix(6, 1).nnz() as u128);
    }

    #[test]
    fn malformed_elements_rejected() {
        assert!(BasisElement::new(4, vec![2, 1]).is_err());
        assert!(BasisElement::new(4, vec![4]).is_err());
        assert!(BasisElement::new(4, vec![0]).is_err());
    }

    #[test]
    fn complements() {
        let e = BasisElement::new(6, vec![2, 4]).unwrap();
        assert_eq!(e.complement().marks(), &[1, 3, 5]);
        assert_eq!(BasisElement::empty(4).complement().marks(), &[1, 2, 3]);
    }
}
