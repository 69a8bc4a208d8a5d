//! The series shift `a = (x1 + sum_k a_k w_k, x2)` with `w_k = x2^(p^k + 1)`,
//! the diagonal Prüfer group `G_p = {(alpha x1, alpha x2)}`, and its conjugate
//! `G_p^a = a^-1 G_p a`.
//!
//! For `alpha` of order `p^n` the conjugate is
//! `(alpha x1 + alpha sum_k a_k (1 - alpha^(p^k)) w_k, alpha x2)`, and every
//! term with `k >= n` vanishes, so only finitely many coefficients are ever read
//! even when the sequence itself never terminates.

use std::fmt;

use crate::arith::{is_prime, Cyclotomic, RootOfUnity};
use crate::endo::{PlaneEndo, TriangularAffine};
use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly};

/// Exponent `p^k + 1` of `w_k`. Panics when it does not fit in `u32`.
pub fn w_exponent(p: u64, k: usize) -> u32 {
    u32::try_from(k)
        .ok()
        .and_then(|k| p.checked_pow(k))
        .and_then(|v| u32::try_from(v).ok())
        .and_then(|v| v.checked_add(1))
        .unwrap_or_else(|| panic!("w_{k} exponent overflows for p = {p}"))
}

/// How a coefficient sequence continues past its explicit prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// All remaining coefficients vanish: `a` is a polynomial automorphism.
    Zero,
    /// `a_k = block[(k - L) mod P]` for `k >= L`.
    Periodic(Vec<Cyclotomic>),
    /// `a_k = block[(k - L) mod P] * scale^(p^k + 1)` for `k >= L`. This is the
    /// image of a periodic tail under `a_k -> beta^(p^k + 1) a_k`.
    Twisted {
        block: Vec<Cyclotomic>,
        scale: Cyclotomic,
    },
}

impl Tail {
    /// Block and scale with the convention `Zero = ([0], 1)`, `Periodic = (block, 1)`.
    pub fn pattern(&self) -> (Vec<Cyclotomic>, Cyclotomic) {
        match self {
            Tail::Zero => (vec![Cyclotomic::zero()], Cyclotomic::one()),
            Tail::Periodic(block) => (block.clone(), Cyclotomic::one()),
            Tail::Twisted { block, scale } => (block.clone(), scale.clone()),
        }
    }

    pub fn period(&self) -> usize {
        match self {
            Tail::Zero => 1,
            Tail::Periodic(block) | Tail::Twisted { block, .. } => block.len(),
        }
    }
}

/// The coefficients `a_0, a_1, ...` of the series shift: an explicit prefix
/// followed by an eventually periodic (possibly twisted) tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSequence {
    prime: u64,
    prefix: Vec<Cyclotomic>,
    tail: Tail,
}

fn check_domain(p: u64, c: &Cyclotomic) -> Result<()> {
    match c.prime() {
        Some(q) if q != p => Err(Error::DomainMismatch(p, q)),
        _ => Ok(()),
    }
}

impl CoeffSequence {
    pub fn new(prime: u64, prefix: Vec<Cyclotomic>, tail: Tail) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        for c in &prefix {
            check_domain(prime, c)?;
        }
        let tail = match tail {
            Tail::Zero => Tail::Zero,
            Tail::Periodic(block) | Tail::Twisted { block, .. } if block.is_empty() => {
                return Err(Error::InvalidArgument("tail block must be nonempty".into()))
            }
            Tail::Periodic(block) => {
                for c in &block {
                    check_domain(prime, c)?;
                }
                if block.iter().all(Cyclotomic::is_zero) {
                    Tail::Zero
                } else {
                    Tail::Periodic(block)
                }
            }
            Tail::Twisted { block, scale } => {
                for c in block.iter().chain(std::iter::once(&scale)) {
                    check_domain(prime, c)?;
                }
                if scale.is_zero() || block.iter().all(Cyclotomic::is_zero) {
                    Tail::Zero
                } else if scale.is_one() {
                    Tail::Periodic(block)
                } else {
                    Tail::Twisted { block, scale }
                }
            }
        };
        Ok(Self {
            prime,
            prefix,
            tail,
        })
    }

    /// A finitely supported sequence.
    pub fn finite(prime: u64, prefix: Vec<Cyclotomic>) -> Result<Self> {
        Self::new(prime, prefix, Tail::Zero)
    }

    /// `prefix` followed by the repeating `block`.
    pub fn periodic(prime: u64, prefix: Vec<Cyclotomic>, block: Vec<Cyclotomic>) -> Result<Self> {
        Self::new(prime, prefix, Tail::Periodic(block))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn prefix(&self) -> &[Cyclotomic] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Whether only finitely many coefficients are nonzero, i.e. whether the
    /// shift `a` is an automorphism of the polynomial algebra itself.
    pub fn is_polynomial(&self) -> bool {
        self.tail == Tail::Zero
    }

    pub fn coeff(&self, k: usize) -> Cyclotomic {
        if let Some(c) = self.prefix.get(k) {
            return c.clone();
        }
        let offset = k - self.prefix.len();
        match &self.tail {
            Tail::Zero => Cyclotomic::zero(),
            Tail::Periodic(block) => block[offset % block.len()].clone(),
            Tail::Twisted { block, scale } => {
                let c = &block[offset % block.len()];
                if c.is_zero() {
                    c.clone()
                } else {
                    c * &scale.pow(w_exponent(self.prime, k) as u64)
                }
            }
        }
    }

    /// `b_k = a_k * beta^(p^k + 1) / gamma`, the sequence whose group is the
    /// conjugate of this one's by `(gamma x1, beta x2)`.
    pub fn twist(&self, beta: &Cyclotomic, gamma: &Cyclotomic) -> Result<Self> {
        let gamma_inv = gamma.inverse()?;
        if beta.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let prefix = (0..self.prefix.len())
            .map(|k| {
                self.coeff(k)
                    .checked_mul(&beta.pow(w_exponent(self.prime, k) as u64))
            })
            .map(|c| c.and_then(|c| c.checked_mul(&gamma_inv)))
            .collect::<Result<Vec<_>>>()?;
        let tail = match &self.tail {
            Tail::Zero => Tail::Zero,
            Tail::Periodic(block) => Tail::Twisted {
                block: block.iter().map(|c| c * &gamma_inv).collect(),
                scale: beta.clone(),
            },
            Tail::Twisted { block, scale } => Tail::Twisted {
                block: block.iter().map(|c| c * &gamma_inv).collect(),
                scale: scale.checked_mul(beta)?,
            },
        };
        Self::new(self.prime, prefix, tail)
    }

    /// Every coefficient multiplied by `c`.
    pub fn scaled(&self, c: &Cyclotomic) -> Result<Self> {
        let mul = |xs: &[Cyclotomic]| {
            xs.iter()
                .map(|x| x.checked_mul(c))
                .collect::<Result<Vec<_>>>()
        };
        let tail = match &self.tail {
            Tail::Zero => Tail::Zero,
            Tail::Periodic(block) => Tail::Periodic(mul(block)?),
            Tail::Twisted { block, scale } => Tail::Twisted {
                block: mul(block)?,
                scale: scale.clone(),
            },
        };
        Self::new(self.prime, mul(&self.prefix)?, tail)
    }
}

impl fmt::Display for CoeffSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[Cyclotomic]| {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "p = {}, prefix [{}], tail ",
            self.prime,
            list(&self.prefix)
        )?;
        match &self.tail {
            Tail::Zero => f.write_str("zero"),
            Tail::Periodic(block) => write!(f, "[{}]", list(block)),
            Tail::Twisted { block, scale } => {
                write!(f, "[{}] twisted by {}", list(block), scale)
            }
        }
    }
}

/// The element `a^-1 (alpha x1, alpha x2) a` of `G_p^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruferConjugate {
    pub sequence: CoeffSequence,
    pub alpha: RootOfUnity,
}

impl PruferConjugate {
    pub fn to_endo(&self) -> PlaneEndo {
        conj_closed_form(&self.sequence, &self.alpha)
    }
}

/// `(alpha x1, alpha x2)`.
pub fn diag(alpha: &RootOfUnity) -> PlaneEndo {
    let a = alpha.to_field();
    PlaneEndo::diagonal(&a, &a)
}

/// `(x1 + sum_{k <= n} a_k w_k, x2)`.
pub fn series_truncation(s: &CoeffSequence, n: usize) -> TriangularAffine {
    let g = SparsePoly::from_terms(
        (0..=n).map(|k| (Monomial::new(0, w_exponent(s.prime, k)), s.coeff(k))),
    );
    TriangularAffine::shift(g)
}

/// The conjugate `a^-1 (alpha x1, alpha x2) a`, built term by term from the
/// closed form. Only `k < level(alpha)` contributes.
pub fn conj_closed_form(s: &CoeffSequence, alpha: &RootOfUnity) -> PlaneEndo {
    assert_eq!(
        s.prime,
        alpha.prime(),
        "sequence and root over different primes"
    );
    let a = alpha.to_field();
    let one = Cyclotomic::one();
    let tail_terms = (0..alpha.level() as usize).map(|k| {
        let vanish = &one - &alpha.pow(s.prime.pow(k as u32)).to_field();
        let c = &(&a * &s.coeff(k)) * &vanish;
        (Monomial::new(0, w_exponent(s.prime, k)), c)
    });
    let f1 =
        SparsePoly::from_terms(std::iter::once((Monomial::new(1, 0), a.clone())).chain(tail_terms));
    PlaneEndo::new(f1, SparsePoly::x2().scale(&a))
}

/// Coefficient of `w_k` in the first component of `e`.
pub fn w_coefficient(e: &PlaneEndo, p: u64, k: usize) -> Cyclotomic {
    e.f1.coefficient_of(Monomial::new(0, w_exponent(p, k)))
}

/// Compare the closed form against brute-force conjugation by every truncation
/// `series_truncation(s, N)` with `level(alpha) <= N <= max(level(alpha), max_truncation)`.
pub fn verify_formula(s: &CoeffSequence, alpha: &RootOfUnity, max_truncation: usize) -> bool {
    let closed = conj_closed_form(s, alpha);
    let d = diag(alpha);
    let lo = alpha.level() as usize;
    (lo..=lo.max(max_truncation)).all(|n| d.conjugate(&series_truncation(s, n)) == closed)
}

/// Check that `alpha -> a^-1 diag(alpha) a` respects the product of `alpha`
/// and `beta`, and that the image of `alpha` has order exactly `|alpha|`.
pub fn embedding_check(s: &CoeffSequence, alpha: &RootOfUnity, beta: &RootOfUnity) -> Result<bool> {
    if s.prime != alpha.prime() || s.prime != beta.prime() {
        return Err(Error::DomainMismatch(alpha.prime(), beta.prime()));
    }
    let product = alpha.mul(beta)?;
    let lhs = conj_closed_form(s, &product);
    let rhs = conj_closed_form(s, alpha).compose(&conj_closed_form(s, beta));
    if lhs != rhs {
        return Ok(false);
    }
    let order = alpha.order();
    Ok(conj_closed_form(s, alpha).order(order) == Some(order))
}
