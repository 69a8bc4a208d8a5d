mod common;

use proptest::prelude::*;
use prufer_aut::conjclass::{necessary_condition, omega0_family, verify_subgroup_conjugator};
use prufer_aut::linearize::{
    solve_linearization, LinearizationProblem, LinearizationResult, Obstruction,
};
use prufer_aut::manifest::Manifest;
use prufer_aut::parse::{parse_endo, parse_poly, parse_scalar};
use prufer_aut::poly::Monomial;
use prufer_aut::prufer::{conj_closed_form, diag};
use prufer_aut::{CoeffSequence, Cyclotomic, PlaneEndo, RootOfUnity, SparsePoly, TriangularAffine};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(common::PRIMES.to_vec())
}

fn rational() -> impl Strategy<Value = Cyclotomic> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Cyclotomic::from_fraction(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Cyclotomic> {
    rational().prop_filter("nonzero", |c| !c.is_zero())
}

/// Sums of rational multiples of powers of `zeta_{p^n}`.
fn element(p: u64, n: u32) -> impl Strategy<Value = Cyclotomic> {
    let m = p.pow(n);
    prop::collection::vec((rational(), 0..m), 0..=4).prop_map(move |terms| {
        let z = if n == 0 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zeta(p, n).unwrap()
        };
        terms
            .into_iter()
            .fold(Cyclotomic::zero(), |acc, (c, j)| acc + c * z.pow(j))
    })
}

fn max_level(p: u64) -> u32 {
    if p == 5 {
        2
    } else {
        3
    }
}

/// A prime with two elements at independent levels of its tower.
fn element_pair() -> impl Strategy<Value = (u64, Cyclotomic, Cyclotomic)> {
    prime().prop_flat_map(|p| {
        let top = max_level(p);
        (
            Just(p),
            (0..=top).prop_flat_map(move |n| element(p, n)),
            (0..=top).prop_flat_map(move |n| element(p, n)),
        )
    })
}

fn root(p: u64) -> impl Strategy<Value = RootOfUnity> {
    (1..=max_level(p))
        .prop_flat_map(move |n| (0..p.pow(n)).prop_map(move |j| RootOfUnity::new(p, n, j).unwrap()))
}

fn poly(p: u64, max_terms: usize, max_deg: u32) -> impl Strategy<Value = SparsePoly> {
    let term = (0..=max_deg, 0..=max_deg, element(p, 1));
    prop::collection::vec(term, 0..=max_terms).prop_map(move |ts| {
        SparsePoly::from_terms(
            ts.into_iter()
                .filter(|(i, j, _)| i + j <= max_deg)
                .map(|(i, j, c)| (Monomial::new(i, j), c)),
        )
    })
}

fn poly_in_x2(max_deg: u32) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((1..=max_deg, rational()), 0..=3).prop_map(|ts| {
        SparsePoly::from_terms(ts.into_iter().map(|(d, c)| (Monomial::new(0, d), c)))
    })
}

fn triangular(max_deg: u32) -> impl Strategy<Value = TriangularAffine> {
    (
        nonzero_rational(),
        poly_in_x2(max_deg),
        nonzero_rational(),
        rational(),
    )
        .prop_map(|(gamma, g, beta, beta0)| TriangularAffine::new(gamma, g, beta, beta0).unwrap())
}

fn endo(p: u64) -> impl Strategy<Value = PlaneEndo> {
    (poly(p, 3, 2), poly(p, 3, 2)).prop_map(|(f1, f2)| PlaneEndo::new(f1, f2))
}

/// Sequences from the shared random generator, keyed by a proptest seed.
fn sequence(p: u64, max_prefix: usize) -> impl Strategy<Value = CoeffSequence> {
    any::<u64>().prop_map(move |seed| common::sequence(&mut common::rng(seed), p, max_prefix))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_laws((_p, a, b) in element_pair()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert!((&b * &b.inverse().unwrap()).is_one());
        } else {
            prop_assert!(a.checked_div(&b).is_err());
        }
    }

    #[test]
    fn raising_is_a_homomorphism((p, a, b) in element_pair(), extra in 1u32..=2) {
        let n = a.level().max(b.level()) + extra;
        let (ra, rb) = (a.raise(p, n).unwrap(), b.raise(p, n).unwrap());
        prop_assert_eq!(&ra, &a);
        prop_assert_eq!(&ra + &rb, &a + &b);
        prop_assert_eq!(&ra * &rb, &a * &b);
        if n > 0 && a.level() > 0 {
            prop_assert!(a.raise(p, a.level() - 1).is_err());
        }
    }

    #[test]
    fn roots_map_homomorphically((r, s) in prime().prop_flat_map(|p| (root(p), root(p)))) {
        let product = r.mul(&s).unwrap();
        prop_assert_eq!(product.to_field(), &r.to_field() * &s.to_field());
        prop_assert!((&r.to_field() * &r.inverse().to_field()).is_one());
        prop_assert_eq!(r.to_field().pow(r.order()), Cyclotomic::one());
        prop_assert_eq!(r.to_field().as_root_of_unity(r.prime()), Some(r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substitution_is_a_ring_homomorphism(
        (f, g, s1, s2) in prime().prop_flat_map(|p| (poly(p, 3, 3), poly(p, 3, 3), poly(p, 2, 2), poly(p, 2, 2)))
    ) {
        let sub = |q: &SparsePoly| q.substitute(&s1, &s2);
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
        prop_assert_eq!(sub(&(&f - &g)), &sub(&f) - &sub(&g));
        prop_assert_eq!(sub(&SparsePoly::one()), SparsePoly::one());
    }

    #[test]
    fn substitution_is_associative(
        (f, g1, g2, h1, h2) in prime().prop_flat_map(|p| (poly(p, 3, 2), poly(p, 2, 2), poly(p, 2, 2), poly(p, 2, 2), poly(p, 2, 2)))
    ) {
        let lhs = f.substitute(&g1, &g2).substitute(&h1, &h2);
        let rhs = f.substitute(&g1.substitute(&h1, &h2), &g2.substitute(&h1, &h2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative((f, g, h) in prime().prop_flat_map(|p| (endo(p), endo(p), endo(p)))) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(f.compose(&PlaneEndo::identity()), f.clone());
        prop_assert_eq!(PlaneEndo::identity().compose(&f), f);
    }

    #[test]
    fn triangular_inverse(t in triangular(4)) {
        let (e, inv) = (t.to_endo(), t.inverse().to_endo());
        prop_assert!(e.compose(&inv).is_identity());
        prop_assert!(inv.compose(&e).is_identity());
    }

    #[test]
    fn conjugation_respects_products_and_orders(
        (alpha, beta) in prime().prop_flat_map(|p| (root(p), root(p))),
        theta in triangular(3),
    ) {
        let (f, g) = (diag(&alpha), diag(&beta));
        prop_assert_eq!(f.compose(&g).conjugate(&theta), f.conjugate(&theta).compose(&g.conjugate(&theta)));
        prop_assert_eq!(f.conjugate(&theta).order(200), Some(alpha.order()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polynomials_round_trip(f in prime().prop_flat_map(|p| poly(p, 5, 4))) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn scalars_round_trip((_p, a, _b) in element_pair()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn endos_round_trip(e in prime().prop_flat_map(endo)) {
        prop_assert_eq!(parse_endo(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn manifests_round_trip(
        (p, seqs, alphas) in prime().prop_flat_map(|p| (
            Just(p),
            prop::collection::vec(sequence(p, 3), 0..=3),
            prop::collection::vec(root(p), 0..=3),
        )),
        max_degree in prop::option::of(1u32..40),
        levels in prop::option::of(1u32..6),
        k0 in prop::option::of(0usize..5),
    ) {
        let mut m = Manifest::new(p);
        m.sequences = seqs;
        m.alphas = alphas;
        m.max_degree = max_degree;
        m.levels = levels;
        m.k0 = k0;
        let text = m.print();
        prop_assert_eq!(Manifest::parse(&text).unwrap(), m);
        prop_assert_eq!(Manifest::parse(&text).unwrap().print(), text);
    }
}

fn closed_form_target() -> impl Strategy<Value = (CoeffSequence, RootOfUnity)> {
    prime().prop_flat_map(|p| (sequence(p, 4), root(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearizer_is_monotone_in_the_bound((s, alpha) in closed_form_target(), d in 1u32..30) {
        let target = conj_closed_form(&s, &alpha);
        let solve = |d| solve_linearization(&LinearizationProblem::new(target.clone(), d).unwrap()).unwrap();
        let (lo, hi) = (solve(d), solve(d + 1));
        if lo.is_found() {
            prop_assert_eq!(lo, hi);
        } else if let (
            LinearizationResult::Obstructed(Obstruction::DegreeBound { required, .. }),
            LinearizationResult::Obstructed(Obstruction::DegreeBound { required: r2, .. }),
        ) = (&lo, &hi) {
            prop_assert_eq!(required, r2);
        }
    }

    #[test]
    fn obstruction_admits_no_small_conjugator(
        (s, alpha) in closed_form_target(),
        seed in any::<u64>(),
    ) {
        let target = conj_closed_form(&s, &alpha);
        let prob = LinearizationProblem::new(target.clone(), 1).unwrap();
        let LinearizationResult::Obstructed(Obstruction::DegreeBound { required, .. }) =
            solve_linearization(&prob).unwrap()
        else {
            return Ok(());
        };
        let mut rng = common::rng(seed);
        for bound in 1..required {
            for _ in 0..4 {
                let g = SparsePoly::from_terms(
                    (0..=bound).map(|d| (Monomial::new(0, d), common::rational(&mut rng))),
                );
                let theta = TriangularAffine::new(
                    common::nonzero_rational(&mut rng),
                    g,
                    common::nonzero_rational(&mut rng),
                    common::rational(&mut rng),
                ).unwrap();
                prop_assert!(!target.conjugate(&theta).is_linear(), "{} linearizes under {}", target, theta);
            }
        }
    }

    #[test]
    fn twisted_pairs_are_conjugate(
        a in sequence(2, 3),
        beta in nonzero_rational(),
        gamma in nonzero_rational(),
    ) {
        let b = a.twist(&beta, &gamma).unwrap();
        prop_assert!(necessary_condition(&a, &b, 0).unwrap().is_satisfiable());
        let theta = TriangularAffine::scaling(gamma, beta).unwrap();
        prop_assert!(verify_subgroup_conjugator(&a, &b, &theta, 3).unwrap());
    }

    #[test]
    fn certified_pairs_resist_random_conjugators(
        (i, j) in (0usize..5, 0usize..5).prop_filter("distinct", |(i, j)| i != j),
        theta in triangular(3),
    ) {
        // the family agrees on the first few indices, so low levels cannot separate it
        let family = omega0_family(5).unwrap();
        let a = family[i].to_coeff_sequence(2).unwrap();
        let b = family[j].to_coeff_sequence(2).unwrap();
        prop_assert!(!necessary_condition(&a, &b, 0).unwrap().is_satisfiable());
        prop_assert!(!verify_subgroup_conjugator(&a, &b, &theta, 6).unwrap());
    }
}
