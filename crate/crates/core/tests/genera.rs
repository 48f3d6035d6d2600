use fgl_core::buchstaber::{exp_bc, solve_hurwitz_ode, theta_values, GenusParams, ThetaMethod};
use fgl_core::exactcore::{MultiPoly, Rational, RelationRing};
use fgl_core::genera::*;
use fgl_core::report::Outcome;

fn kr_var(name: &str) -> MultiPoly {
    MultiPoly::var(&krichever_ring(), name).unwrap()
}

/// `4u^3 - g2 u - g3 - v^2`
fn weierstrass_residual() -> MultiPoly {
    let (u, v, g2, g3) = (kr_var("u"), kr_var("v"), kr_var("g2"), kr_var("g3"));
    &(&(&u.pow(3).scale(&4.into()) - &(&g2 * &u)) - &g3) - &v.pow(2)
}

#[test]
fn eliminated_table_is_the_printed_table() {
    let t = krichever_table(6, KricheverForm::Eliminated);
    let printed = printed_krichever_values();
    for n in 1..=6 {
        assert_eq!(*t.value(n).unwrap(), printed[n], "Kr(Theta_{n})");
    }
}

#[test]
fn reduced_table_is_the_reduced_printed_table() {
    let ring = krichever_ring();
    let rel = RelationRing::weierstrass(&ring).unwrap();
    let t = krichever_table(6, KricheverForm::Reduced);
    let printed = printed_krichever_values();
    for n in 1..=6 {
        assert_eq!(*t.value(n).unwrap(), rel.reduce(&printed[n]).unwrap(), "Kr(Theta_{n})");
    }
    // every form agrees modulo the relation
    for form in [KricheverForm::Raw, KricheverForm::PreReduction, KricheverForm::Eliminated] {
        let other = krichever_table(6, form);
        for n in 1..=6 {
            assert_eq!(rel.reduce(other.value(n).unwrap()).unwrap(), *t.value(n).unwrap());
        }
    }
}

#[test]
fn separating_element() {
    let (k, l) = special_elements();
    let bc = theta_values(&GenusParams::symbolic(), 6, ThetaMethod::Reversion).unwrap();
    let a3 = MultiPoly::var(bc.ring(), "a3").unwrap();
    assert_eq!(genus_eval(&k, &bc).unwrap(), a3.scale(&(-360).into()));

    let pre = krichever_table(6, KricheverForm::PreReduction);
    assert_eq!(genus_eval(&k, &pre).unwrap(), weierstrass_residual().scale(&90.into()));

    let rel = RelationRing::weierstrass(&krichever_ring()).unwrap();
    let red = krichever_table(6, KricheverForm::Reduced);
    assert!(genus_eval_reduced(&k, &red, &rel).unwrap().is_zero());
    assert!(genus_eval_reduced(&l, &red, &rel).unwrap().is_zero());
    let elim = krichever_table(6, KricheverForm::Eliminated);
    assert!(genus_eval(&k, &elim).unwrap().is_zero());
    assert!(genus_eval(&l, &elim).unwrap().is_zero());
}

#[test]
fn kernel_dimensions() {
    let (k, l) = special_elements();
    let six = kernel_basis(6).unwrap();
    assert_eq!(six.monomials.len(), 11);
    assert_eq!(six.dimension(), 2);
    assert!(six.contains(&k));
    assert!(six.contains(&l));
    assert!(!six.contains(&ThetaPolynomial::theta(6)));
    let five = kernel_basis(5).unwrap();
    assert_eq!(five.dimension(), 1);
    for d in 1..=4 {
        assert_eq!(kernel_basis(d).unwrap().dimension(), 0);
    }
}

#[test]
fn invariant_recurrence_and_its_sums() {
    assert!(verify_invariant_recurrence(25).holds());
    let p = buchstaber_over_invariants();
    let ring = p.ring().clone();
    let g2 = MultiPoly::var(&ring, "g2").unwrap();
    let g3 = MultiPoly::var(&ring, "g3").unwrap();
    let n = 9;
    let sol = solve_hurwitz_ode(
        &MultiPoly::zero(&ring),
        &g2.scale(&Rational::new(-1, 2)),
        &g3.scale(&Rational::new(3, 4)),
        n,
    );
    assert_eq!(sol.f[5], g2.scale(&(-3).into()));
    assert_eq!(sol.f[7], g3.scale(&90.into()));
    // C_k as an explicit multinomial sum
    let b = &sol.f;
    let fact = |k: usize| Rational::factorial(k as u32);
    for k in 0..=n {
        let mut c = MultiPoly::zero(&ring);
        for i in 0..=k {
            for j in 0..=k - i {
                let l = k - i - j;
                let m = &fact(k) / &(&(&fact(i) * &fact(j)) * &fact(l));
                c = &c + &(&(&b[i] * &b[j]) * &b[l]).scale(&m);
            }
        }
        assert_eq!(c, sol.cube[k], "C_{k}");
    }
}

#[test]
fn hurwitz_targets() {
    let f = exp_bc(&buchstaber_over_invariants(), 24);
    let z = [HurwitzGenerator::new("g2", 1.into()), HurwitzGenerator::new("g3", 1.into())];
    assert!(hurwitz_membership(&f, &z, 24).unwrap().is_ok());

    let w = witten_exp(22);
    let two = [
        HurwitzGenerator::new("g2", Rational::new(1, 2)),
        HurwitzGenerator::new("g3", 2.into()),
    ];
    assert!(hurwitz_membership(&w, &two, 22).unwrap().is_ok());
    // a generator set that is too small must be caught
    let too_small = [HurwitzGenerator::new("g2", 1.into()), HurwitzGenerator::new("g3", 1.into())];
    assert!(hurwitz_membership(&w, &too_small, 22).unwrap().is_failure());
}

#[test]
fn printed_lines() {
    let f = exp_bc(&buchstaber_over_invariants(), 13);
    let r = compare_printed_line("Bc", &f, &printed_bc_line());
    assert!(r.holds());
    assert!(r.checks.iter().all(|v| matches!(v.outcome, Outcome::Holds)));
    let w = witten_exp(13);
    assert!(compare_printed_line("Wt", &w, &printed_wt_line()).holds());
}

#[test]
fn buchstaber_coefficients_over_invariants_form_a_triangle() {
    let via_a = bc_theta_over_invariants(12).unwrap();
    let f = exp_bc(&buchstaber_over_invariants(), 13);
    let direct = hurwitz_coefficients(&f, 12);
    assert_eq!(via_a, direct);
}

#[test]
fn ochanine_specialization() {
    let r = verify_ochanine_specialization(12).unwrap();
    assert!(r.holds(), "{:?}", r.first_failure());
}

#[test]
fn witten_table_is_odd() {
    let t = witten_table(10);
    for n in (1..=10).step_by(2) {
        assert!(t.value(n).unwrap().is_zero());
    }
}
