use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::upoly;
use super::{prime_power, totient, Rational, RootOfUnity};
use crate::error::{Error, Result};

/// An exact element of `Q(zeta_{p^n})`.
///
/// The value is `sum coeffs[i] * zeta^i` over the power basis
/// `1, zeta, ..., zeta^{phi(p^n) - 1}` of `zeta = zeta_{p^n} = e^{2 pi i / p^n}`.
/// Arithmetic results are always stored at the smallest level containing them;
/// a rational number has level 0 and no prime attached. [`Cyclotomic::raise`]
/// is the one way to obtain a representation above the minimal level, and
/// equality compares values, not representations.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    prime: Option<u64>,
    level: u32,
    coeffs: Vec<Rational>,
}

fn common_prime(a: Option<u64>, b: Option<u64>) -> Result<Option<u64>> {
    match (a, b) {
        (Some(p), Some(q)) if p != q => Err(Error::DomainMismatch(p, q)),
        (Some(p), _) | (_, Some(p)) => Ok(Some(p)),
        (None, None) => Ok(None),
    }
}

/// Fold a vector indexed by exponents `0..p^n` into the power basis, using
/// `zeta^{(p-1)q + r} = -sum_{t < p-1} zeta^{tq + r}` with `q = p^{n-1}`.
fn reduce_exponents(p: u64, n: u32, mut acc: Vec<Rational>) -> Vec<Rational> {
    debug_assert!(n >= 1);
    let q = p.pow(n - 1) as usize;
    let phi = totient(p, n);
    let high = acc.split_off(phi);
    for (r, c) in high.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for t in 0..(p as usize - 1) {
            acc[t * q + r] -= &c;
        }
    }
    acc
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self {
            prime: None,
            level: 0,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `num / den` as a scalar. Panics if `den == 0`.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }

    /// Build from power-basis coordinates at level `n`; `coeffs.len()` must be `phi(p^n)`.
    pub fn from_coeffs(p: u64, n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if !super::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if prime_power(p, n).is_none() {
            return Err(Error::InvalidArgument(format!("{p}^{n} overflows")));
        }
        let phi = totient(p, n);
        if coeffs.len() != phi {
            return Err(Error::Malformed(format!(
                "expected {phi} coefficients at level {n}, got {}",
                coeffs.len()
            )));
        }
        if n == 0 {
            return Ok(Self::from_rational(coeffs.into_iter().next().unwrap()));
        }
        Ok(Self {
            prime: Some(p),
            level: n,
            coeffs,
        }
        .normalize())
    }

    /// `zeta_{p^n}^j`; the caller guarantees `p` prime and `p^n` representable.
    pub(crate) fn zeta_power(p: u64, n: u32, j: u64) -> Self {
        if n == 0 {
            return Self::one();
        }
        let m = p.pow(n);
        let mut acc = vec![Rational::zero(); m as usize];
        acc[(j % m) as usize] = Rational::one();
        Self {
            prime: Some(p),
            level: n,
            coeffs: reduce_exponents(p, n, acc),
        }
        .normalize()
    }

    /// The primitive root `zeta_{p^n}`.
    pub fn zeta(p: u64, n: u32) -> Result<Self> {
        Ok(RootOfUnity::new(p, n, 1)?.to_field())
    }

    /// The prime of the tower this value lives in; `None` for rationals.
    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `p^n`, the order of the root of unity generating the current level.
    pub fn modulus(&self) -> u64 {
        match self.prime {
            Some(p) => p.pow(self.level),
            None => 1,
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        let n = self.normalized();
        (n.level == 0).then(|| n.coeffs[0].clone())
    }

    /// Number of nonzero power-basis coordinates.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Canonical embedding into level `target` of the `p`-tower,
    /// `zeta_{p^m} -> zeta_{p^n}^{p^{n-m}}`. The result is not re-normalized.
    pub fn raise(&self, p: u64, target: u32) -> Result<Self> {
        if let Some(q) = self.prime {
            if q != p {
                return Err(Error::DomainMismatch(q, p));
            }
        }
        if target < self.level {
            return Err(Error::LevelBelowCurrent {
                current: self.level,
                target,
            });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        if !super::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if prime_power(p, target).is_none() {
            return Err(Error::InvalidArgument(format!("{p}^{target} overflows")));
        }
        let mut coeffs = vec![Rational::zero(); totient(p, target)];
        let stride = if self.level == 0 {
            0
        } else {
            p.pow(target - self.level) as usize
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * stride] = c.clone();
        }
        Ok(Self {
            prime: Some(p),
            level: target,
            coeffs,
        })
    }

    /// Drop to the smallest level whose field contains the value.
    fn normalize(mut self) -> Self {
        loop {
            match self.level {
                0 => {
                    self.prime = None;
                    return self;
                }
                1 => {
                    if self.coeffs[1..].iter().all(Zero::is_zero) {
                        self.coeffs.truncate(1);
                        self.level = 0;
                        self.prime = None;
                    }
                    return self;
                }
                _ => {
                    let p = self.prime.expect("leveled value without prime") as usize;
                    let lowerable = self
                        .coeffs
                        .iter()
                        .enumerate()
                        .all(|(i, c)| i % p == 0 || c.is_zero());
                    if !lowerable {
                        return self;
                    }
                    self.coeffs = self.coeffs.into_iter().step_by(p).collect();
                    self.level -= 1;
                }
            }
        }
    }

    fn normalized(&self) -> Cow<'_, Self> {
        let minimal = match self.level {
            0 => true,
            1 => self.coeffs[1..].iter().any(|c| !c.is_zero()),
            _ => {
                let p = self.prime.unwrap() as usize;
                self.coeffs
                    .iter()
                    .enumerate()
                    .any(|(i, c)| i % p != 0 && !c.is_zero())
            }
        };
        if minimal {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.clone().normalize())
        }
    }

    /// Bring both operands to a shared level of a shared tower.
    fn aligned(&self, other: &Self) -> Result<(Option<u64>, u32, Cow<'_, Self>, Self)> {
        let prime = common_prime(self.prime, other.prime)?;
        let level = self.level.max(other.level);
        match prime {
            None => Ok((None, 0, Cow::Borrowed(self), other.clone())),
            Some(p) => {
                let a = if self.level == level {
                    Cow::Borrowed(self)
                } else {
                    Cow::Owned(self.raise(p, level)?)
                };
                let b = if other.level == level {
                    other.clone()
                } else {
                    other.raise(p, level)?
                };
                Ok((prime, level, a, b))
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (prime, level, a, mut b) = self.aligned(other)?;
        for (x, y) in b.coeffs.iter_mut().zip(a.coeffs.iter()) {
            *x += y;
        }
        b.prime = prime;
        b.level = level;
        Ok(b.normalize())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (prime, level, a, b) = self.aligned(other)?;
        let Some(p) = prime else {
            return Ok(Self::from_rational(&a.coeffs[0] * &b.coeffs[0]));
        };
        if a.is_zero() || b.is_zero() {
            return Ok(Self::zero());
        }
        let m = p.pow(level) as usize;
        let mut acc = vec![Rational::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % m] += x * y;
            }
        }
        Ok(Self {
            prime,
            level,
            coeffs: reduce_exponents(p, level, acc),
        }
        .normalize())
    }

    /// Multiplicative inverse via extended Euclid against `Phi_{p^n}`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(p) = self.prime else {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        };
        let n = self.level;
        let q = p.pow(n - 1) as usize;
        // Phi_{p^n}(x) = sum_{t < p} x^{t q}
        let mut cyclo = vec![Rational::zero(); (p as usize - 1) * q + 1];
        for t in 0..p as usize {
            cyclo[t * q] = Rational::one();
        }
        let mut inv = upoly::inverse_mod(&self.coeffs, &cyclo)
            .ok_or_else(|| Error::Internal("cyclotomic element not invertible".into()))?;
        inv.resize(totient(p, n), Rational::zero());
        Ok(Self {
            prime: Some(p),
            level: n,
            coeffs: inv,
        }
        .normalize())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
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

    /// Recognize `p`-power roots of unity, returning their abstract form.
    pub fn as_root_of_unity(&self, p: u64) -> Option<RootOfUnity> {
        let v = self.normalized();
        if v.level == 0 {
            let r = &v.coeffs[0];
            if r.is_one() {
                return RootOfUnity::new(p, 0, 0).ok();
            }
            if p == 2 && *r == -Rational::one() {
                return RootOfUnity::new(2, 1, 1).ok();
            }
            return None;
        }
        if v.prime != Some(p) {
            return None;
        }
        let n = v.level;
        let q = p.pow(n - 1) as usize;
        let phi = totient(p, n);
        let nonzero: Vec<usize> = (0..phi).filter(|&i| !v.coeffs[i].is_zero()).collect();
        if nonzero.len() == 1 && v.coeffs[nonzero[0]].is_one() {
            return RootOfUnity::new(p, n, nonzero[0] as u64).ok();
        }
        // zeta^{phi + r} = -(zeta^r + zeta^{q + r} + ... + zeta^{(p-2)q + r})
        let minus_one = -Rational::one();
        if nonzero.len() == p as usize - 1 {
            let r = nonzero[0];
            let matches = r < q
                && nonzero
                    .iter()
                    .enumerate()
                    .all(|(t, &i)| i == t * q + r && v.coeffs[i] == minus_one);
            if matches {
                return RootOfUnity::new(p, n, (phi + r) as u64).ok();
            }
        }
        None
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.level == b.level && a.prime == b.prime && a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            prime: self.prime,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

// Operator forms panic on mixed primes; use the `checked_*` methods on
// untrusted input.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl fmt::Display for Cyclotomic {
    /// Terms in increasing power of `z(m)`, zero terms omitted, e.g. `1 + -3/2*z(8)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.normalized();
        if v.level == 0 {
            return write!(f, "{}", v.coeffs[0]);
        }
        let m = v.modulus();
        let mut first = true;
        for (i, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
                continue;
            }
            let root = if i == 1 {
                format!("z({m})")
            } else {
                format!("z({m})^{i}")
            };
            if c.is_one() {
                f.write_str(&root)?;
            } else if c.is_negative() && c.abs().is_one() {
                write!(f, "-{root}")?;
            } else {
                write!(f, "{c}*{root}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: u32) -> Cyclotomic {
        Cyclotomic::zeta(p, n).unwrap()
    }

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn imaginary_parts_cancel() {
        let i = z(2, 2);
        assert_eq!((int(1) + &i) + (int(1) - &i), int(2));
        assert_eq!(&i + &Cyclotomic::zero(), i);
    }

    #[test]
    fn zeta8_plus_zeta8_cubed_squares_to_minus_two() {
        let w = z(2, 3);
        let s = &w + &w.pow(3);
        assert_eq!(&s * &s, int(-2));
    }

    #[test]
    fn products() {
        let i = z(2, 2);
        assert_eq!((int(1) + &i) * (int(1) - &i), int(2));
        let w = z(2, 3);
        assert_eq!(&(&w * &w) * &(&w * &w), int(-1));
        let t = z(3, 1);
        assert_eq!(&t * &(&t * &t), int(1));
    }

    #[test]
    fn inverses() {
        assert_eq!(int(2).inverse().unwrap(), Cyclotomic::from_fraction(1, 2));
        let i = z(2, 2);
        assert_eq!(i.inverse().unwrap(), -&i);
        assert_eq!(i.inverse().unwrap(), i.pow(3));
        let u = int(1) + &i;
        let inv = u.inverse().unwrap();
        assert_eq!(inv, (int(1) - &i) * Cyclotomic::from_fraction(1, 2));
        assert!((&u * &inv).is_one());
        assert_eq!(Cyclotomic::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_at_higher_levels() {
        for (p, n) in [(3, 2), (5, 1), (2, 4), (5, 2)] {
            let w = z(p, n);
            let u = int(2) + &w + &(w.pow(3) * Cyclotomic::from_fraction(-1, 3));
            let inv = u.inverse().unwrap();
            assert!((&u * &inv).is_one(), "p={p} n={n}");
        }
    }

    #[test]
    fn raising_levels() {
        let minus_one = RootOfUnity::new(2, 1, 1).unwrap().to_field();
        let raised = minus_one.raise(2, 2).unwrap();
        assert_eq!(raised.level(), 2);
        assert_eq!(raised, z(2, 2).pow(2));

        let three = int(3).raise(5, 2).unwrap();
        assert_eq!(three.coeffs().len(), 20);
        assert_eq!(three, int(3));

        let w3 = z(3, 1).raise(3, 2).unwrap();
        assert_eq!(w3, z(3, 2).pow(3));
        assert_eq!(w3.coeffs()[3], Rational::one());

        assert_eq!(
            z(3, 2).raise(3, 1),
            Err(Error::LevelBelowCurrent {
                current: 2,
                target: 1
            })
        );
        assert_eq!(z(3, 1).raise(2, 3), Err(Error::DomainMismatch(3, 2)));
    }

    #[test]
    fn mixed_primes_rejected() {
        assert_eq!(
            z(2, 2).checked_add(&z(3, 1)),
            Err(Error::DomainMismatch(2, 3))
        );
        assert_eq!(
            z(5, 1).checked_mul(&z(3, 1)),
            Err(Error::DomainMismatch(5, 3))
        );
        // rationals mix with every tower
        assert_eq!(int(2).checked_mul(&z(3, 1)).unwrap(), &z(3, 1) + &z(3, 1));
    }

    #[test]
    fn recognizes_roots_of_unity() {
        for (p, n) in [(2u64, 3u32), (3, 2), (5, 1)] {
            let m = p.pow(n);
            for j in 0..m {
                let root = RootOfUnity::new(p, n, j).unwrap();
                assert_eq!(root.to_field().as_root_of_unity(p), Some(root));
            }
        }
        assert_eq!(int(2).as_root_of_unity(3), None);
        assert_eq!(int(-1).as_root_of_unity(3), None);
        assert_eq!((int(1) + z(2, 2)).as_root_of_unity(2), None);
        assert_eq!((-z(3, 1)).as_root_of_unity(3), None);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(int(0).to_string(), "0");
        assert_eq!(Cyclotomic::from_fraction(-3, 6).to_string(), "-1/2");
        assert_eq!(z(2, 2).to_string(), "z(4)");
        assert_eq!((-z(2, 2)).to_string(), "-z(4)");
        assert_eq!((int(1) - z(2, 2)).to_string(), "1 + -z(4)");
        let x = z(2, 3).pow(3) * Cyclotomic::from_fraction(3, 2);
        assert_eq!(x.to_string(), "3/2*z(8)^3");
        // z(9)^3 is z(3): printed at its minimal level
        assert_eq!(z(3, 2).pow(3).to_string(), "z(3)");
        // z(3)^2 = -1 - z(3)
        assert_eq!(z(3, 1).pow(2).to_string(), "-1 + -z(3)");
    }
}
