//! Sparse polynomials in `x1, x2` over the cyclotomic tower.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::Cyclotomic;

/// `x1^deg_x1 * x2^deg_x2`, ordered graded-lexicographically with `x1 > x2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub deg_x1: u32,
    pub deg_x2: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial::new(0, 0);

    pub const fn new(deg_x1: u32, deg_x2: u32) -> Self {
        Self { deg_x1, deg_x2 }
    }

    pub fn total_degree(&self) -> u32 {
        self.deg_x1 + self.deg_x2
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.deg_x1.cmp(&other.deg_x1))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.deg_x1 + rhs.deg_x1, self.deg_x2 + rhs.deg_x2)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |name: &str, d: u32| match d {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{d}")),
        };
        let parts: Vec<String> = [var("x1", self.deg_x1), var("x2", self.deg_x2)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Total degree with `-inf` for the zero polynomial, so that
/// `deg(fg) = deg f + deg g` holds without exceptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `x1, x2`; no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: Cyclotomic, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn x1() -> Self {
        Self::term(Cyclotomic::one(), Monomial::new(1, 0))
    }

    pub fn x2() -> Self {
        Self::term(Cyclotomic::one(), Monomial::new(0, 1))
    }

    /// `c * x2^d`.
    pub fn x2_power(c: Cyclotomic, d: u32) -> Self {
        Self::term(c, Monomial::new(0, d))
    }

    /// Sum of the given terms; repeated monomials are combined.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Cyclotomic)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.total_degree()))
    }

    pub fn coefficient_of(&self, m: Monomial) -> Cyclotomic {
        self.terms.get(&m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn involves_x1(&self) -> bool {
        self.terms.keys().any(|m| m.deg_x1 > 0)
    }

    /// Whether every term has total degree exactly `d` (false for zero).
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// The single prime of the tower the coefficients live in, if any.
    pub fn prime(&self) -> Option<u64> {
        self.terms.values().find_map(Cyclotomic::prime)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x * c)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        if let Some((m, c)) = self.single_term() {
            let mono = Monomial::new(m.deg_x1 * e, m.deg_x2 * e);
            return Self::term(c.pow(e as u64), mono);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn single_term(&self) -> Option<(&Monomial, &Cyclotomic)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// `f(s1, s2)`. Powers of `s1` and `s2` are computed once per distinct
    /// exponent occurring in `f`.
    pub fn substitute(&self, s1: &SparsePoly, s2: &SparsePoly) -> SparsePoly {
        let mut pow1: HashMap<u32, SparsePoly> = HashMap::new();
        let mut pow2: HashMap<u32, SparsePoly> = HashMap::new();
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let a = pow1
                .entry(m.deg_x1)
                .or_insert_with(|| s1.pow(m.deg_x1))
                .clone();
            let b = pow2.entry(m.deg_x2).or_insert_with(|| s2.pow(m.deg_x2));
            for (mp, cp) in (&a * &*b).terms {
                out.add_term(mp, &(&cp * c));
            }
        }
        out
    }
}

impl From<Cyclotomic> for SparsePoly {
    fn from(c: Cyclotomic) -> Self {
        Self::constant(c)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &-rhs
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, &(ca * cb));
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl fmt::Display for SparsePoly {
    /// Canonical form: ascending graded-lex order joined by ` + `, e.g.
    /// `x1 + -2*x2^2`. Multi-term scalars are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else if (-c).is_one() {
                write!(f, "-{m}")?;
            } else if c.term_count() == 1 {
                write!(f, "{c}*{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}
