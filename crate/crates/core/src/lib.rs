//! Local reduction of sl(n) Khovanov–Rozansky complexes for two-strand
//! twist tangles.
//!
//! The pipeline builds complexes of matrix factorizations and thin decorated
//! cobordisms, removes thick edges with direct sum decompositions, simplifies
//! with Gaussian elimination and reads off bigraded homology over Q.

#![allow(clippy::needless_range_loop)]

pub mod chainred;
pub mod error;
pub mod matfact;
pub mod oracle;
pub mod ring;
pub mod twist;
pub mod webcob;

pub use chainred::{BigradedDimensions, ChainComplex};
pub use error::{Error, Result};
pub use matfact::{FactorMorphism, GradedFreeModule, MatrixFactorization, PolyMatrix};
pub use ring::{exact_div, pi_polynomial, u_pair, Laurent, Mark, Monomial, Polynomial, Rational};
pub use twist::{Closure, CrossingSign, TangleWord};
pub use webcob::{Cob, FrobeniusAlgebra, Planar};
