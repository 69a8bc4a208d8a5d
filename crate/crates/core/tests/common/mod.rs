//! Random generators shared by the integration tests.
#![allow(dead_code)]

use prufer_aut::conjclass::BinarySequence;
use prufer_aut::poly::{Monomial, SparsePoly};
use prufer_aut::prufer::{CoeffSequence, Tail};
use prufer_aut::{Cyclotomic, RootOfUnity};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 3] = [2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational<R: Rng>(rng: &mut R) -> Cyclotomic {
    Cyclotomic::from_fraction(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Cyclotomic {
    loop {
        let c = rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random element of `Q(zeta_{p^level})` with up to four nonzero terms.
pub fn cyclotomic<R: Rng>(rng: &mut R, p: u64, level: u32) -> Cyclotomic {
    if level == 0 {
        return rational(rng);
    }
    let z = Cyclotomic::zeta(p, level).unwrap();
    let m = p.pow(level);
    let terms = rng.gen_range(0..=4);
    (0..terms).fold(Cyclotomic::zero(), |acc, _| {
        acc + rational(rng) * z.pow(rng.gen_range(0..m))
    })
}

/// Mostly rational coefficients, sometimes from the first level of the tower.
pub fn coefficient<R: Rng>(rng: &mut R, p: u64) -> Cyclotomic {
    if rng.gen_bool(0.25) {
        cyclotomic(rng, p, 1)
    } else {
        rational(rng)
    }
}

pub fn coefficients<R: Rng>(rng: &mut R, p: u64, len: usize) -> Vec<Cyclotomic> {
    (0..len).map(|_| coefficient(rng, p)).collect()
}

/// A random sequence with a prefix of length `1..=max_prefix` and a zero,
/// periodic or twisted tail.
pub fn sequence<R: Rng>(rng: &mut R, p: u64, max_prefix: usize) -> CoeffSequence {
    let len = rng.gen_range(1..=max_prefix);
    let prefix = coefficients(rng, p, len);
    let tail = match rng.gen_range(0..3) {
        0 => Tail::Zero,
        1 => Tail::Periodic(nonzero_block(rng, p)),
        _ => Tail::Twisted {
            block: nonzero_block(rng, p),
            scale: nonzero_rational(rng),
        },
    };
    CoeffSequence::new(p, prefix, tail).unwrap()
}

pub fn nonzero_block<R: Rng>(rng: &mut R, p: u64) -> Vec<Cyclotomic> {
    let len = rng.gen_range(1..=3);
    let mut block = coefficients(rng, p, len);
    if block.iter().all(Cyclotomic::is_zero) {
        block[0] = nonzero_rational(rng);
    }
    block
}

/// A random root of unity with level in `lo..=hi`.
pub fn root<R: Rng>(rng: &mut R, p: u64, lo: u32, hi: u32) -> RootOfUnity {
    let n = rng.gen_range(lo..=hi);
    let all = RootOfUnity::all_up_to_level(p, n).unwrap();
    let eligible: Vec<RootOfUnity> = all.into_iter().filter(|r| r.level() >= lo).collect();
    *eligible.choose(rng).unwrap()
}

/// A random polynomial with up to `max_terms` terms of total degree at most `max_deg`.
pub fn poly<R: Rng>(rng: &mut R, p: u64, level: u32, max_terms: usize, max_deg: u32) -> SparsePoly {
    let terms = rng.gen_range(0..=max_terms);
    SparsePoly::from_terms((0..terms).map(|_| {
        let i = rng.gen_range(0..=max_deg);
        let j = rng.gen_range(0..=max_deg - i);
        (Monomial::new(i, j), cyclotomic(rng, p, level))
    }))
}

pub fn bits<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Vec<bool> {
    (0..rng.gen_range(lo..=hi))
        .map(|_| rng.gen_bool(0.5))
        .collect()
}

pub fn binary_sequence<R: Rng>(rng: &mut R) -> BinarySequence {
    BinarySequence::new(bits(rng, 0, 5), bits(rng, 1, 4)).unwrap()
}
