use fgl_core::buchstaber::*;
use fgl_core::exactcore::{MultiPoly, Rational, Weight};
use fgl_core::report::Outcome;
use fgl_core::series::{Series1, Series2};

fn a(p: &GenusParams, i: usize) -> MultiPoly {
    MultiPoly::var_at(p.ring(), i)
}

#[test]
fn law_for_a1_equal_one_matches_horner_composition() {
    let p = GenusParams::numeric(1.into(), 0.into(), 0.into());
    let n = 5;
    let fgl = fgl_bc(&p, n);
    // oracle: f(g(u) + g(v)) by plain Horner evaluation of the bivariate sum
    let g = log_bc(&p, n);
    let f = g.revert().unwrap();
    let sum = &Series2::from_u(&g, n) + &Series2::from_v(&g, n);
    let horner = Series2::compose_univariate(&f, &sum).unwrap();
    assert_eq!(fgl.law, horner);
    // odd logarithm, so no even total degree
    for (i, j, c) in fgl.law.entries() {
        if (i + j) % 2 == 0 {
            assert!(c.is_zero(), "u^{i} v^{j}");
        }
    }
}

#[test]
fn inverse_is_negation() {
    let fgl = fgl_bc(&GenusParams::symbolic(), 11);
    assert!(fgl.check_inverse().is_ok());
}

#[test]
fn theta_eight_agrees_between_methods() {
    let p = GenusParams::symbolic();
    let rev = theta_values_by(&p, 8, ThetaMethod::Reversion);
    let rec = theta_values_by(&p, 8, ThetaMethod::Recurrence);
    assert_eq!(rev.value(8).unwrap(), rec.value(8).unwrap());
    assert!(rev.value(8).unwrap().is_integral());
    assert!(!rev.value(8).unwrap().is_zero());
}

#[test]
fn grading_of_theta_values() {
    let p = GenusParams::symbolic();
    let t = theta_values(&p, 12, ThetaMethod::Recurrence).unwrap();
    for n in (2..=12).step_by(2) {
        assert_eq!(t.value(n).unwrap().weight(), Weight::Homogeneous(n as u32), "Theta_{n}");
    }
}

#[test]
fn two_valued_log_second_coefficient() {
    let p = GenusParams::symbolic();
    let tvl = two_valued_log(&p, 4).unwrap();
    // I(s) = s - a1 s^3/6 + ..., so I^2 = s^2 - a1 s^4/3 + ...
    assert_eq!(*tvl.b.coeff(2), a(&p, 0).scale(&Rational::new(-1, 3)));
    assert_eq!(tvl.phi1[1], a(&p, 0).scale(&4.into()));
    assert_eq!(tvl.phi2[4], a(&p, 2).scale(&16.into()));
}

#[test]
fn elliptic_invariants_from_parameters() {
    let p = GenusParams::numeric(3.into(), 1.into(), 2.into());
    let e = EllipticParams::from_a(&p);
    // g2 = 4(9/3 - 1) = 8, g3 = 4(3/3 - 2*27/27 - 2) = -12
    assert_eq!(e.g2.as_constant().unwrap(), Rational::from(8));
    assert_eq!(e.g3.as_constant().unwrap(), Rational::from(-12));
    assert_eq!(e.negated_g3().g3.as_constant().unwrap(), Rational::from(12));
}

#[test]
fn ochanine_subcase_and_obstruction() {
    assert!(verify_ochanine_ode(&GenusParams::without_a3(), 20).is_ok());
    assert!(verify_closed_form(&GenusParams::without_a3(), 12).unwrap().is_ok());
    let v = verify_ochanine_ode(&GenusParams::symbolic(), 8);
    let Outcome::Fails { at, .. } = v.outcome else {
        panic!("a3 must obstruct the two-parameter equation");
    };
    assert_eq!(at, "x^6");
}

#[test]
fn specialized_parameters_keep_identities() {
    let p = GenusParams::numeric(Rational::new(1, 2), Rational::from(-3), Rational::new(2, 7));
    assert!(verify_closed_form(&p, 12).unwrap().is_ok());
    assert!(verify_uniformization(&p, 12).unwrap().holds());
    assert!(fgl_bc(&p, 9).check_axioms(9).unwrap().holds());
    let tvl = two_valued_log(&p, 14).unwrap();
    assert!(verify_tv_ode(&tvl, 12).unwrap().holds());
}

#[test]
fn fault_shows_up_as_first_divergent_coefficient() {
    let p = GenusParams::symbolic().with_injected_q_sign_fault();
    let r = verify_uniformization(&p, 8).unwrap();
    let failure = r.first_failure().expect("fault must be detected");
    assert!(failure.check.contains("B(-u^2)"));
    let cp = cp_values(&p, 2);
    assert_eq!(*cp.value(2).unwrap(), a(&p, 0).scale(&Rational::new(-1, 2)));
}

#[test]
fn hurwitz_recurrence_of_sine() {
    // f'' = -f gives sin
    let p = GenusParams::symbolic();
    let zero = MultiPoly::zero(p.ring());
    let sol = solve_hurwitz_ode(&MultiPoly::constant(p.ring(), -1), &zero, &zero, 9);
    let expect = [0, 1, 0, -1, 0, 1, 0, -1, 0, 1];
    for (h, e) in sol.f.iter().zip(expect) {
        assert_eq!(h.as_constant().unwrap(), Rational::from(e));
    }
    let s = Series1::from_coeffs(
        p.ring(),
        sol.f
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&Rational::factorial(k as u32).recip().unwrap()))
            .collect(),
    );
    assert!(s.is_odd());
}
