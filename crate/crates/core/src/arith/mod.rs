//! Exact scalars: rationals, elements of the cyclotomic tower `Q(zeta_{p^n})`,
//! and the abstract Prüfer group of `p`-power roots of unity.

mod cyclotomic;
mod root;
mod upoly;

pub use cyclotomic::Cyclotomic;
pub use root::RootOfUnity;

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `p^n`, or `None` on overflow.
pub(crate) fn prime_power(p: u64, n: u32) -> Option<u64> {
    p.checked_pow(n)
}

/// Euler totient of `p^n`; 1 for `n = 0`.
pub(crate) fn totient(p: u64, n: u32) -> usize {
    if n == 0 {
        1
    } else {
        ((p - 1) * p.pow(n - 1)) as usize
    }
}

/// Factor `m = p^n` with `p` prime. Returns `(p, n)`, with `(0, 0)` for `m = 1`.
pub fn prime_power_decomposition(m: u64) -> Option<(u64, u32)> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some((0, 0));
    }
    let mut p = 2u64;
    while !m.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = m;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}
