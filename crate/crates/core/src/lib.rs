//! Exact computations with quasi-cyclic subgroups of the automorphism group of
//! the polynomial algebra `k[x1, x2]`.
//!
//! The building blocks are exact scalars in the cyclotomic tower
//! ([`arith`]), sparse bivariate polynomials ([`poly`]) and plane
//! endomorphisms with left-to-right composition ([`endo`]). On top of them:
//!
//! - [`prufer`]: the series shift `a`, the diagonal Prüfer group `G_p` and the
//!   closed form of its conjugate `G_p^a`;
//! - [`linearize`]: degree-bounded search for triangular linearizers of single
//!   elements, with obstruction certificates;
//! - [`conjclass`]: necessary conditions for `G_p^a` and `G_p^b` to be conjugate;
//! - [`parse`], [`manifest`] and [`cli`]: text syntax and the command-line front end.

pub mod arith;
pub mod cli;
pub mod conjclass;
pub mod endo;
pub mod error;
pub mod linearize;
pub mod manifest;
pub mod parse;
pub mod poly;
pub mod prufer;

pub use arith::{Cyclotomic, Rational, RootOfUnity};
pub use endo::{PlaneEndo, TriangularAffine};
pub use error::{Error, Result};
pub use poly::{Degree, Monomial, SparsePoly};
pub use prufer::{CoeffSequence, Tail};
