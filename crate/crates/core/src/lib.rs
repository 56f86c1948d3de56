//! Integral cohomology of the Arone complex `AC(d)`, whose degree-`i`
//! cohomology computes `Ext^i(a, S^d o a)` for the identity functor `a` on
//! free abelian groups, together with the tools needed to certify closed
//! forms against exact computation: Smith normal forms over `Z` and
//! `Z/p^N`, a Kunneth calculus for graded abelian groups, and the functor
//! `E_d` on the Hopf-algebra PROP.

pub mod arith;
pub mod complex;
pub mod error;
pub mod homology;
pub mod hopf;
pub mod kunneth;
pub mod verify;

pub use error::{Error, Result};
