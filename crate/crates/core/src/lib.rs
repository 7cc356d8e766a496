//! Exact plain-chart atlases for blowups of affine space.
//!
//! The crate builds, over the rationals, explicit affine charts of the blowup
//! of an open subset of affine space along a smooth hypersurface `Z` of a
//! coordinate subvariety, each chart an open subset of affine space, together
//! with structure maps, exceptional divisors and chart-change maps. Every
//! identity the construction relies on is certified symbolically with
//! Gröbner bases.
//!
//! Modules, bottom-up:
//!
//! - [`rational`], [`poly`]: exact rationals and sparse polynomials.
//! - [`groebner`]: reduced bases, membership, elimination, unit tests on patches.
//! - [`geometry`]: principal open patches, rational maps, smoothness.
//! - [`blowup`]: the plain atlas of a blowup, and Rees-algebra charts.
//! - [`projection`]: generic linear projection of a smooth variety onto a hypersurface.
//! - [`cli`]: expression parsing, scenarios, built-in examples, JSON output.

pub mod blowup;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod poly;
pub mod projection;
pub mod rational;

pub use error::{CenterDefect, Error, ProjectionFailure, Result};
pub use poly::{MonomialOrder, PolyRing, Polynomial, RingRef};
pub use rational::Rational;
