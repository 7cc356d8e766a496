//! Sparse multivariate polynomials over the rationals.

mod polynomial;
mod ring;

pub use polynomial::{product, Polynomial, RingOp};
pub use ring::{Monomial, MonomialOrder, PolyRing, RingRef, RESERVED_PREFIX};
