//! Endomorphisms of `k[x1, x2]` as pairs of images `(x1^psi, x2^psi)`.
//!
//! Maps act from the left to the right: `compose(phi, psi)` applies `phi`
//! first, so `x^(phi psi) = (x^phi)^psi`, and conjugation of `psi` by `theta`
//! is `theta^-1 psi theta`.

use std::fmt;

use crate::arith::Cyclotomic;
use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneEndo {
    pub f1: SparsePoly,
    pub f2: SparsePoly,
}

impl PlaneEndo {
    pub fn new(f1: SparsePoly, f2: SparsePoly) -> Self {
        Self { f1, f2 }
    }

    pub fn identity() -> Self {
        Self::new(SparsePoly::x1(), SparsePoly::x2())
    }

    /// `(a1 x1, a2 x2)`.
    pub fn diagonal(a1: &Cyclotomic, a2: &Cyclotomic) -> Self {
        Self::new(SparsePoly::x1().scale(a1), SparsePoly::x2().scale(a2))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Apply `self` first, then `other`.
    pub fn compose(&self, other: &PlaneEndo) -> PlaneEndo {
        PlaneEndo::new(
            self.f1.substitute(&other.f1, &other.f2),
            self.f2.substitute(&other.f1, &other.f2),
        )
    }

    pub fn pow(&self, k: u64) -> PlaneEndo {
        (0..k).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// `theta^-1 self theta`.
    pub fn conjugate(&self, theta: &TriangularAffine) -> PlaneEndo {
        theta
            .inverse()
            .to_endo()
            .compose(self)
            .compose(&theta.to_endo())
    }

    /// Smallest `k <= max_order` with `self^k = id`.
    pub fn order(&self, max_order: u64) -> Option<u64> {
        let mut power = self.clone();
        for k in 1..=max_order {
            if power.is_identity() {
                return Some(k);
            }
            if k < max_order {
                power = power.compose(self);
            }
        }
        None
    }

    /// Both components homogeneous of degree one.
    pub fn is_linear(&self) -> bool {
        self.f1.is_homogeneous_of_degree(1) && self.f2.is_homogeneous_of_degree(1)
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal_entries().is_some()
    }

    /// `(a1, a2)` when `self = (a1 x1, a2 x2)`.
    pub fn diagonal_entries(&self) -> Option<(Cyclotomic, Cyclotomic)> {
        let single = |f: &SparsePoly, m: Monomial| {
            (f.term_count() == 1)
                .then(|| f.coefficient_of(m))
                .filter(|c| !c.is_zero())
        };
        Some((
            single(&self.f1, Monomial::new(1, 0))?,
            single(&self.f2, Monomial::new(0, 1))?,
        ))
    }

    pub fn prime(&self) -> Option<u64> {
        self.f1.prime().or_else(|| self.f2.prime())
    }
}

impl fmt::Display for PlaneEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

/// The triangular automorphism `(gamma x1 + g(x2), beta x2 + beta0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularAffine {
    gamma: Cyclotomic,
    g: SparsePoly,
    beta: Cyclotomic,
    beta0: Cyclotomic,
}

impl TriangularAffine {
    pub fn new(
        gamma: Cyclotomic,
        g: SparsePoly,
        beta: Cyclotomic,
        beta0: Cyclotomic,
    ) -> Result<Self> {
        if gamma.is_zero() || beta.is_zero() {
            return Err(Error::InvalidArgument(
                "gamma and beta must be nonzero".into(),
            ));
        }
        if g.involves_x1() {
            return Err(Error::InvalidArgument("g must not involve x1".into()));
        }
        Ok(Self {
            gamma,
            g,
            beta,
            beta0,
        })
    }

    pub fn identity() -> Self {
        Self::shift(SparsePoly::zero())
    }

    /// `(x1 + g(x2), x2)`. Panics if `g` involves `x1`.
    pub fn shift(g: SparsePoly) -> Self {
        Self::new(Cyclotomic::one(), g, Cyclotomic::one(), Cyclotomic::zero())
            .expect("shift polynomial must be in x2 only")
    }

    /// `(gamma x1, beta x2)`.
    pub fn scaling(gamma: Cyclotomic, beta: Cyclotomic) -> Result<Self> {
        Self::new(gamma, SparsePoly::zero(), beta, Cyclotomic::zero())
    }

    /// Recognize an endomorphism of triangular-affine shape.
    pub fn from_endo(e: &PlaneEndo) -> Option<Self> {
        if e.f2.involves_x1() || !matches!(e.f2.degree(), crate::poly::Degree::Finite(1)) {
            return None;
        }
        let beta = e.f2.coefficient_of(Monomial::new(0, 1));
        let beta0 = e.f2.coefficient_of(Monomial::ONE);
        let gamma = e.f1.coefficient_of(Monomial::new(1, 0));
        let g = &e.f1 - &SparsePoly::x1().scale(&gamma);
        Self::new(gamma, g, beta, beta0).ok()
    }

    pub fn gamma(&self) -> &Cyclotomic {
        &self.gamma
    }

    pub fn g(&self) -> &SparsePoly {
        &self.g
    }

    pub fn beta(&self) -> &Cyclotomic {
        &self.beta
    }

    pub fn beta0(&self) -> &Cyclotomic {
        &self.beta0
    }

    pub fn to_endo(&self) -> PlaneEndo {
        let f1 = &SparsePoly::x1().scale(&self.gamma) + &self.g;
        let f2 = &SparsePoly::x2().scale(&self.beta) + &SparsePoly::constant(self.beta0.clone());
        PlaneEndo::new(f1, f2)
    }

    /// Closed form: `((x1 - g((x2 - beta0)/beta)) / gamma, (x2 - beta0)/beta)`.
    pub fn inverse(&self) -> TriangularAffine {
        let gamma_inv = self.gamma.inverse().expect("gamma is nonzero");
        let beta_inv = self.beta.inverse().expect("beta is nonzero");
        let x2_pre =
            &SparsePoly::x2().scale(&beta_inv) + &SparsePoly::constant(-(&self.beta0 * &beta_inv));
        let g = self
            .g
            .substitute(&SparsePoly::x1(), &x2_pre)
            .scale(&-&gamma_inv);
        TriangularAffine {
            gamma: gamma_inv,
            g,
            beta: beta_inv.clone(),
            beta0: -(&self.beta0 * &beta_inv),
        }
    }
}

impl fmt::Display for TriangularAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_endo().fmt(f)
    }
}
