//! Necessary conditions for `G_p^a` and `G_p^b` to be conjugate, exact
//! verification of candidate conjugators, and eventually periodic binary
//! sequences compared up to finitely many differences.
//!
//! A triangular conjugator `(gamma x1 + g(x2), beta x2 + beta0)` between the
//! two groups forces `a_k beta^(p^k + 1) = gamma b_k` for all large `k`. On
//! eventually periodic (or twisted periodic) tails this is decidable: the
//! eventual supports must agree, and the ratios `b_k / a_k`, once the twists
//! are divided out, must be constant.

use std::fmt;

use num_integer::Integer;

use crate::arith::{Cyclotomic, RootOfUnity};
use crate::endo::TriangularAffine;
use crate::error::{Error, Result};
use crate::prufer::{conj_closed_form, w_exponent, CoeffSequence};

/// An eventually periodic 0/1 sequence `prefix, tail, tail, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    prefix: Vec<bool>,
    tail: Vec<bool>,
}

impl BinarySequence {
    pub fn new(prefix: Vec<bool>, tail: Vec<bool>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::InvalidArgument(
                "tail period must be at least 1".into(),
            ));
        }
        Ok(Self { prefix, tail })
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn tail(&self) -> &[bool] {
        &self.tail
    }

    pub fn period(&self) -> usize {
        self.tail.len()
    }

    pub fn bit(&self, k: usize) -> bool {
        match self.prefix.get(k) {
            Some(&b) => b,
            None => self.tail[(k - self.prefix.len()) % self.tail.len()],
        }
    }

    /// The sequence as coefficients `a_k in {0, 1}`.
    pub fn to_coeff_sequence(&self, p: u64) -> Result<CoeffSequence> {
        let conv = |bits: &[bool]| {
            bits.iter()
                .map(|&b| Cyclotomic::from_integer(b as i64))
                .collect::<Vec<_>>()
        };
        CoeffSequence::periodic(p, conv(&self.prefix), conv(&self.tail))
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[bool]| {
            v.iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>()
        };
        write!(f, "{}({})", bits(&self.prefix), bits(&self.tail))
    }
}

/// Whether the sequences disagree at infinitely many indices. Past both
/// prefixes the pair repeats with the lcm of the periods, so one such window
/// decides it.
pub fn differ_infinitely(lambda: &BinarySequence, mu: &BinarySequence) -> bool {
    let start = lambda.prefix.len().max(mu.prefix.len());
    let window = lambda.period().lcm(&mu.period());
    (start..start + window).any(|k| lambda.bit(k) != mu.bit(k))
}

/// `count` sequences that pairwise differ infinitely often: sequence `i` is
/// periodic with a single one followed by `i + 1` zeros.
pub fn omega0_family(count: usize) -> Result<Vec<BinarySequence>> {
    if count < 2 {
        return Err(Error::InvalidArgument(
            "family needs at least 2 sequences".into(),
        ));
    }
    (0..count)
        .map(|i| {
            let mut tail = vec![false; i + 2];
            tail[0] = true;
            BinarySequence::new(Vec::new(), tail)
        })
        .collect()
}

/// Scalars satisfying `a_k beta^(p^k + 1) = gamma b_k` for all `k >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub beta: Cyclotomic,
    pub gamma: Cyclotomic,
    /// Both tails are eventually nonzero, which pins `beta0 = 0`; otherwise
    /// `beta0` is unconstrained by the tails.
    pub beta0_forced_zero: bool,
    pub valid_from: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateReason {
    /// Exactly one of `a_k`, `b_k` vanishes on the listed residues.
    SupportMismatch,
    /// The twist-corrected ratio `b_k / a_k` is not constant: it differs
    /// between the first listed residue and each of the others.
    RatioMismatch,
}

/// Failure set `{preamble + offset + t * period : t >= 0, offset in offsets}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub reason: CertificateReason,
    pub preamble: usize,
    pub period: usize,
    pub offsets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjObstructionReport {
    Satisfiable(Witness),
    NonConjugate(Certificate),
}

impl ConjObstructionReport {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, ConjObstructionReport::Satisfiable(_))
    }
}

/// Candidate class searched for `beta`: nonzero elements of the cyclotomic
/// tower of the common prime. `gamma` ranges over the same field.
pub const SEARCH_CLASS: &str = "beta, gamma in Q(zeta_{p^inf})^*";

fn holds_at(
    a: &CoeffSequence,
    b: &CoeffSequence,
    beta: &Cyclotomic,
    gamma: &Cyclotomic,
    k: usize,
) -> bool {
    let e = w_exponent(a.prime(), k) as u64;
    &a.coeff(k) * &beta.pow(e) == gamma * &b.coeff(k)
}

/// Decide whether some `beta, gamma` satisfy `a_k beta^(p^k + 1) = gamma b_k`
/// for all large `k`, starting the search at `k0`.
///
/// A certificate means every candidate fails on infinitely many indices. A
/// witness reports the first index `valid_from >= k0` from which it works;
/// failures below it lie in the finite prefixes.
pub fn necessary_condition(
    a: &CoeffSequence,
    b: &CoeffSequence,
    k0: usize,
) -> Result<ConjObstructionReport> {
    if a.prime() != b.prime() {
        return Err(Error::DomainMismatch(a.prime(), b.prime()));
    }
    let (la, lb) = (a.prefix().len(), b.prefix().len());
    let (block_a, scale_a) = a.tail().pattern();
    let (block_b, scale_b) = b.tail().pattern();
    let preamble = la.max(lb);
    let period = block_a.len().lcm(&block_b.len());
    let entry = |block: &[Cyclotomic], len: usize, r: usize| {
        block[(preamble + r - len) % block.len()].clone()
    };

    let mut support = Vec::new();
    let mut mismatched = Vec::new();
    for r in 0..period {
        let (x, y) = (entry(&block_a, la, r), entry(&block_b, lb, r));
        match (x.is_zero(), y.is_zero()) {
            (false, false) => support.push((r, x, y)),
            (true, true) => {}
            _ => mismatched.push(r),
        }
    }
    if !mismatched.is_empty() {
        return Ok(ConjObstructionReport::NonConjugate(Certificate {
            reason: CertificateReason::SupportMismatch,
            preamble,
            period,
            offsets: mismatched,
        }));
    }

    let (beta, gamma, forced) = match support.first() {
        None => (Cyclotomic::one(), Cyclotomic::one(), false),
        Some((r0, x0, y0)) => {
            let ratio0 = y0.checked_div(x0)?;
            let differing: Vec<usize> = support
                .iter()
                .filter(|(_, x, y)| y.checked_div(x).map_or(true, |q| q != ratio0))
                .map(|(r, _, _)| *r)
                .collect();
            if !differing.is_empty() {
                let offsets = std::iter::once(*r0).chain(differing).collect();
                return Ok(ConjObstructionReport::NonConjugate(Certificate {
                    reason: CertificateReason::RatioMismatch,
                    preamble,
                    period,
                    offsets,
                }));
            }
            // beta = scale_b / scale_a makes the twists agree; gamma absorbs the ratio
            let beta = scale_b.checked_div(&scale_a)?;
            let gamma = ratio0.inverse()?;
            (beta, gamma, true)
        }
    };

    let valid_from = (k0..preamble)
        .rev()
        .find(|&k| !holds_at(a, b, &beta, &gamma, k))
        .map_or(k0, |k| k + 1);
    Ok(ConjObstructionReport::Satisfiable(Witness {
        beta,
        gamma,
        beta0_forced_zero: forced,
        valid_from,
    }))
}

/// Check `(a^-1 phi a) theta = theta (b^-1 phi b)` for the generator `phi` of
/// every level `1..=levels`, which covers every element of those levels.
pub fn verify_subgroup_conjugator(
    a: &CoeffSequence,
    b: &CoeffSequence,
    theta: &TriangularAffine,
    levels: u32,
) -> Result<bool> {
    if a.prime() != b.prime() {
        return Err(Error::DomainMismatch(a.prime(), b.prime()));
    }
    if levels < 1 {
        return Err(Error::InvalidArgument("levels must be at least 1".into()));
    }
    let t = theta.to_endo();
    for n in 1..=levels {
        let alpha = RootOfUnity::primitive(a.prime(), n)?;
        let lhs = conj_closed_form(a, &alpha).compose(&t);
        let rhs = t.compose(&conj_closed_form(b, &alpha));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
