use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{is_prime, prime_power, Cyclotomic};
use crate::error::{Error, Result};

/// An element of the Prüfer group `C_{p^inf}`, stored as the exponent
/// `j / p^n` in `Z[1/p] / Z`.
///
/// Normalized so that either `(n, j) = (0, 0)` (the identity) or `p` does not
/// divide `j`; then `p^n` is exactly the order of the element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    prime: u64,
    level: u32,
    exponent: u64,
}

impl RootOfUnity {
    /// `zeta_{p^n}^j`, reduced to lowest terms.
    pub fn new(p: u64, n: u32, j: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = prime_power(p, n)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{n} overflows")))?;
        Ok(Self::normalized(p, n, j % m))
    }

    fn normalized(p: u64, mut n: u32, mut j: u64) -> Self {
        if j == 0 {
            n = 0;
        }
        while n > 0 && j.is_multiple_of(p) {
            j /= p;
            n -= 1;
        }
        Self {
            prime: p,
            level: n,
            exponent: j,
        }
    }

    pub fn one(p: u64) -> Result<Self> {
        Self::new(p, 0, 0)
    }

    /// The generator `zeta_{p^n}` of the level-`n` subgroup.
    pub fn primitive(p: u64, n: u32) -> Result<Self> {
        Self::new(p, n, 1)
    }

    /// Parse the exponent fraction `num/den`; `den` must be a power of `p`.
    pub fn from_fraction(p: u64, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let den_u = den
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("denominator {den} too large")))?;
        let (q, n) = match super::prime_power_decomposition(den_u) {
            Some((_, 0)) => (p, 0),
            Some(d) => d,
            None => (0, 0),
        };
        if q != p {
            return Err(Error::InvalidArgument(format!(
                "exponent denominator {den} is not a power of {p}"
            )));
        }
        let j = num.mod_floor(&den).to_u64().unwrap();
        Self::new(p, n, j)
    }

    /// Every element of order dividing `p^n`, in increasing exponent.
    pub fn all_up_to_level(p: u64, n: u32) -> Result<Vec<Self>> {
        let m = prime_power(p, n)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{n} overflows")))?;
        (0..m).map(|j| Self::new(p, n, j)).collect()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Exact order exponent: the order is `p^level`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.prime.pow(self.level)
    }

    pub fn is_one(&self) -> bool {
        self.level == 0
    }

    /// Group operation: add exponents in `Z[1/p] / Z`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::DomainMismatch(self.prime, other.prime));
        }
        let p = self.prime;
        let n = self.level.max(other.level);
        let m = p.pow(n) as u128;
        let lift = |r: &Self| r.exponent as u128 * p.pow(n - r.level) as u128;
        let j = (lift(self) + lift(other)) % m;
        Ok(Self::normalized(p, n, j as u64))
    }

    pub fn inverse(&self) -> Self {
        let m = self.order();
        Self::normalized(self.prime, self.level, (m - self.exponent) % m)
    }

    pub fn pow(&self, e: u64) -> Self {
        let m = self.order() as u128;
        let j = (self.exponent as u128 * (e as u128 % m)) % m;
        Self::normalized(self.prime, self.level, j as u64)
    }

    /// Realize as the scalar `zeta_{p^n}^j` in the cyclotomic tower.
    pub fn to_field(&self) -> Cyclotomic {
        Cyclotomic::zeta_power(self.prime, self.level, self.exponent)
    }
}

impl fmt::Display for RootOfUnity {
    /// The exponent fraction `j/p^n`, or `0` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.exponent, self.order())
        }
    }
}
