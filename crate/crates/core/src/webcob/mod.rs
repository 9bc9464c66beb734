//! Thin decorated cobordisms for the sl(n) theory and the local direct sum
//! decompositions that remove circles and thick edges.

pub mod chi;
mod cob;
mod planar;

pub use cob::{deloop_indices, Cob, Curve, CurveSet, FrobeniusAlgebra};
pub use planar::{Closure, Piece, Planar, Traced};
