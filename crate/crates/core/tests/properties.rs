use fgl_core::buchstaber::{fgl_bc, theta_values_by, GenusParams, ThetaMethod};
use fgl_core::exactcore::{MultiPoly, Rational, RelationRing, Ring, RingRef, Weight};
use fgl_core::genera::{genus_eval, ThetaPolynomial};
use fgl_core::series::Series1;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn ring() -> RingRef {
    Ring::with_vars(&[("a", 1), ("b", 2)]).unwrap()
}

fn weierstrass_ring() -> RingRef {
    Ring::with_vars(&[("u", 2), ("v", 3), ("g2", 4), ("g3", 6)]).unwrap()
}

fn poly_in(r: RingRef, max_exp: u16) -> impl Strategy<Value = MultiPoly> {
    let arity = r.arity();
    prop::collection::vec((prop::collection::vec(0..=max_exp, arity), rat()), 0..5)
        .prop_map(move |terms| MultiPoly::from_terms(&r, terms))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(ring(), 3)
}

/// Series over `Q[a, b]` with the given leading coefficients fixed.
fn series(order: usize, head: &'static [i64]) -> impl Strategy<Value = Series1> {
    prop::collection::vec(poly_in(ring(), 1), order + 1 - head.len()).prop_map(move |tail| {
        let r = ring();
        let mut coeffs: Vec<MultiPoly> = head.iter().map(|&c| MultiPoly::constant(&r, c)).collect();
        coeffs.extend(tail);
        Series1::from_coeffs(&r, coeffs)
    })
}

fn theta_poly() -> impl Strategy<Value = ThetaPolynomial> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(1u32..=3, 1..=2)), 0..4).prop_map(|terms| {
        terms
            .iter()
            .fold(ThetaPolynomial::zero(), |acc, (c, idx)| acc.add(&ThetaPolynomial::monomial(idx, *c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MultiPoly::one(p.ring()), p.clone());
    }

    #[test]
    fn weight_is_additive(c in rat(), d in rat(), i in 0u16..4, j in 0u16..3, k in 0u16..4, l in 0u16..3) {
        prop_assume!(!c.is_zero() && !d.is_zero());
        let r = ring();
        let p = MultiPoly::from_terms(&r, [(vec![i, j], c)]);
        let q = MultiPoly::from_terms(&r, [(vec![k, l], d)]);
        let (Weight::Homogeneous(wp), Weight::Homogeneous(wq)) = (p.weight(), q.weight()) else {
            panic!("monomials are homogeneous");
        };
        prop_assert_eq!((&p * &q).weight(), Weight::Homogeneous(wp + wq));
    }

    #[test]
    fn relation_reduction_is_a_ring_map(p in poly_in(weierstrass_ring(), 4), q in poly_in(weierstrass_ring(), 4)) {
        let rel = RelationRing::weierstrass(&weierstrass_ring()).unwrap();
        let rp = rel.reduce(&p).unwrap();
        prop_assert!(rel.is_normal(&rp));
        prop_assert_eq!(rel.reduce(&rp).unwrap(), rp.clone());
        let rq = rel.reduce(&q).unwrap();
        prop_assert_eq!(rel.reduce(&(&p * &q)).unwrap(), rel.reduce(&(&rp * &rq)).unwrap());
        prop_assert_eq!(rel.reduce(&(&p + &q)).unwrap(), &rp + &rq);
    }

    #[test]
    fn reversion_round_trips(s in series(7, &[0, 1])) {
        let r = s.revert().unwrap();
        prop_assert_eq!(r.revert().unwrap(), s.clone());
        prop_assert_eq!(s.compose(&r).unwrap(), Series1::x(s.ring(), 7));
        prop_assert_eq!(r.compose(&s).unwrap(), Series1::x(s.ring(), 7));
    }

    #[test]
    fn sqrt_exp_log_inverses(s in series(7, &[1]), t in series(7, &[0])) {
        let root = s.sqrt().unwrap();
        prop_assert_eq!(&root * &root, s.clone());
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s.clone());
        prop_assert_eq!(t.exp().unwrap().log().unwrap(), t.clone());
        prop_assert_eq!(&s.inv().unwrap() * &s, Series1::one(s.ring(), 7));
    }

    #[test]
    fn truncation_commutes_with_arithmetic(a in series(6, &[]), b in series(6, &[]), k in 1usize..=6) {
        prop_assert_eq!((&a * &b).truncate(k), &a.truncate(k) * &b.truncate(k));
        prop_assert_eq!((&a + &b).truncate(k), &a.truncate(k) + &b.truncate(k));
        prop_assert_eq!(a.diff().truncate(k - 1), a.truncate(k).diff());
    }

    #[test]
    fn genus_is_multiplicative(p in theta_poly(), q in theta_poly()) {
        let table = theta_values_by(&GenusParams::symbolic(), 6, ThetaMethod::Recurrence);
        let left = genus_eval(&p.mul(&q), &table).unwrap();
        let right = &genus_eval(&p, &table).unwrap() * &genus_eval(&q, &table).unwrap();
        prop_assert_eq!(left, right);
        let sum = genus_eval(&p.add(&q), &table).unwrap();
        prop_assert_eq!(sum, &genus_eval(&p, &table).unwrap() + &genus_eval(&q, &table).unwrap());
    }

    #[test]
    fn numeric_laws_are_commutative_with_unit(a1 in rat(), a2 in rat(), a3 in rat()) {
        let fgl = fgl_bc(&GenusParams::numeric(a1, a2, a3), 7);
        prop_assert!(fgl.check_unit().is_ok());
        prop_assert!(fgl.check_commutativity().is_ok());
        prop_assert!(fgl.check_inverse().is_ok());
    }
}
