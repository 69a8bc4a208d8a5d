//! Dense univariate polynomials over `Q`, just enough for inverting modulo a
//! cyclotomic polynomial by the extended Euclidean algorithm.

use num_traits::{One, Zero};

use super::Rational;

/// Coefficients in ascending degree; trailing zeros trimmed.
type Dense = Vec<Rational>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn sub(a: &[Rational], b: &[Rational]) -> Dense {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(out)
}

fn mul(a: &[Rational], b: &[Rational]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn div_rem(a: &[Rational], b: &[Rational]) -> (Dense, Dense) {
    let lead = b.last().expect("division by zero polynomial");
    let mut rem: Dense = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &factor * c;
        }
        quot[shift] = factor;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Inverse of `u` modulo `m`, provided `gcd(u, m) = 1`.
pub(crate) fn inverse_mod(u: &[Rational], m: &[Rational]) -> Option<Dense> {
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(u.to_vec());
    let mut s0: Dense = Vec::new();
    let mut s1: Dense = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; only a nonzero constant makes u invertible.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let (_, s) = div_rem(&s0, m);
    Some(s.into_iter().map(|x| x / &c).collect())
}
