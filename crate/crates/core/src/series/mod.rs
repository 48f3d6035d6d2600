//! Truncated univariate and bivariate power series over polynomial
//! coefficients.

mod bivariate;
mod univariate;

pub use bivariate::Series2;
pub use univariate::{Series1, SeriesRecord};


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{MultiPoly, Rational, Ring, RingRef};
    use crate::Error;

    fn q_ring() -> RingRef {
        Ring::with_vars(&[("a1", 2), ("a2", 4), ("a3", 6)]).unwrap()
    }

    fn rat_series(ring: &RingRef, cs: &[i64], order: usize) -> Series1 {
        let coeffs: Vec<MultiPoly> = cs.iter().map(|&c| MultiPoly::constant(ring, c)).collect();
        Series1::from_poly_coeffs(ring, &coeffs, order)
    }

    fn var(ring: &RingRef, name: &str) -> MultiPoly {
        MultiPoly::var(ring, name).unwrap()
    }

    /// Q(t) = 1 - a1 t^2 + a2 t^4 - a3 t^6
    fn q_series(ring: &RingRef, order: usize) -> Series1 {
        let zero = MultiPoly::zero(ring);
        let coeffs = vec![
            MultiPoly::one(ring),
            zero.clone(),
            -&var(ring, "a1"),
            zero.clone(),
            var(ring, "a2"),
            zero,
            -&var(ring, "a3"),
        ];
        Series1::from_poly_coeffs(ring, &coeffs, order)
    }

    #[test]
    fn product_of_binomials() {
        let r = q_ring();
        let p = &rat_series(&r, &[1, 1], 5) * &rat_series(&r, &[1, -1], 5);
        assert_eq!(p, rat_series(&r, &[1, 0, -1], 5));
    }

    #[test]
    fn geometric_series() {
        let r = q_ring();
        let inv = rat_series(&r, &[1, -1], 9).inv().unwrap();
        assert_eq!(inv, rat_series(&r, &[1; 10], 9));
        assert!(matches!(
            rat_series(&r, &[0, 1], 4).inv(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn q_times_backsubstituted_inverse_is_one() {
        let r = q_ring();
        let n = 12;
        let q = q_series(&r, n);
        // oracle: b_0 = 1, b_m = -sum_{k=1..m} q_k b_{m-k}
        let mut b: Vec<MultiPoly> = vec![MultiPoly::one(&r)];
        for m in 1..=n {
            let mut acc = MultiPoly::zero(&r);
            for k in 1..=m.min(6) {
                acc = &acc - &(q.coeff(k) * &b[m - k]);
            }
            b.push(acc);
        }
        let oracle = Series1::from_coeffs(&r, b);
        assert_eq!(&q * &oracle, Series1::one(&r, n));
        assert_eq!(q.inv().unwrap(), oracle);
    }

    #[test]
    fn sqrt_of_squares() {
        let r = q_ring();
        assert_eq!(
            rat_series(&r, &[1, 2, 1], 8).sqrt().unwrap(),
            rat_series(&r, &[1, 1], 8)
        );
        assert_eq!(
            rat_series(&r, &[1, -2, 1], 8).sqrt().unwrap(),
            rat_series(&r, &[1, -1], 8)
        );
        assert!(rat_series(&r, &[4, 1], 3).sqrt().is_err());
    }

    #[test]
    fn sqrt_q_matches_binomial_expansion() {
        let r = q_ring();
        let n = 6;
        let q = q_series(&r, n);
        // oracle: sum_k binom(1/2, k) w^k with w = Q - 1
        let w = &q - &Series1::one(&r, n);
        let mut oracle = Series1::zero(&r, n);
        let mut wk = Series1::one(&r, n);
        let mut binom = Rational::one();
        for k in 0..=3u32 {
            oracle = &oracle + &wk.scale(&binom);
            wk = &wk * &w;
            binom = &binom * &(&Rational::new(1, 2) - &Rational::from(k)) / Rational::from(k + 1);
        }
        let s = q.sqrt().unwrap();
        assert_eq!(s, oracle);
        assert_eq!(&s * &s, q);
        let a1 = var(&r, "a1");
        let a2 = var(&r, "a2");
        assert_eq!(*s.coeff(2), a1.scale(&Rational::new(-1, 2)));
        assert_eq!(
            *s.coeff(4),
            (&a2.scale(&4.into()) - &a1.pow(2)).scale(&Rational::new(1, 8))
        );
    }

    #[test]
    fn compose_identities() {
        let r = q_ring();
        let n = 10;
        let f = q_series(&r, n);
        assert_eq!(f.compose(&Series1::x(&r, n)).unwrap(), f);
        let x = Series1::x(&r, n);
        let exp_minus_one = &x.exp().unwrap() - &Series1::one(&r, n);
        let log1p = (&Series1::one(&r, n) + &x).log().unwrap();
        assert_eq!(exp_minus_one.compose(&log1p).unwrap(), x);
        assert!(f.compose(&f).is_err());
    }

    /// Lagrange inversion: `[x^n] a^{-1} = (1/n) [x^{n-1}] (x / a)^n`.
    fn lagrange_revert(a: &Series1) -> Series1 {
        let n = a.order();
        let r = a.ring();
        let ratio = a.div_x_pow(1).unwrap().inv().unwrap();
        let mut coeffs = vec![MultiPoly::zero(r)];
        for m in 1..=n {
            let p = ratio.pow(m as u32);
            coeffs.push(p.coeff(m - 1).scale(&Rational::new(1, m as i64)));
        }
        Series1::from_coeffs(r, coeffs)
    }

    #[test]
    fn revert_catalan() {
        let r = q_ring();
        let a = rat_series(&r, &[0, 1, 1], 8);
        let b = a.revert().unwrap();
        assert_eq!(b, rat_series(&r, &[0, 1, -1, 2, -5, 14, -42, 132, -429], 8));
        assert_eq!(b, lagrange_revert(&a));
        assert_eq!(a.compose(&b).unwrap(), Series1::x(&r, 8));
        let x = Series1::x(&r, 6);
        assert_eq!(x.revert().unwrap(), x);
        assert!(rat_series(&r, &[0, 2], 4).revert().is_err());
    }

    #[test]
    fn revert_symbolic_matches_lagrange() {
        let r = q_ring();
        let third = rat_series(&r, &[0, 0, 1], 11).scale(&Rational::new(1, 3));
        let a = &q_series(&r, 11).mul_x_pow(1) + &third;
        assert_eq!(a.revert().unwrap(), lagrange_revert(&a));
    }

    #[test]
    fn exp_and_log_examples() {
        let r = Ring::with_vars(&[("alpha", 1)]).unwrap();
        let alpha = var(&r, "alpha");
        let zero = Series1::zero(&r, 5);
        assert_eq!(zero.exp().unwrap(), Series1::one(&r, 5));
        let ax = Series1::x(&r, 3).mul_poly(&alpha);
        let e = ax.exp().unwrap();
        assert_eq!(*e.coeff(2), alpha.pow(2).scale(&Rational::new(1, 2)));
        assert_eq!(*e.coeff(3), alpha.pow(3).scale(&Rational::new(1, 6)));
        let geo = rat_series(&r, &[1, -1], 7).inv().unwrap();
        let l = geo.log().unwrap();
        for k in 1..=7 {
            assert_eq!(l.coeff(k).as_constant().unwrap(), Rational::new(1, k as i64));
        }
        assert!(Series1::one(&r, 3).exp().is_err());
        assert!(zero.log().is_err());
    }

    #[test]
    fn calculus_examples() {
        let r = q_ring();
        let one = Series1::one(&r, 4);
        assert_eq!(one.integrate(), Series1::x(&r, 5));
        let x3 = rat_series(&r, &[0, 0, 0, 1], 5);
        assert_eq!(x3.diff(), rat_series(&r, &[0, 0, 3], 4));
        let q = q_series(&r, 8);
        assert_eq!(q.integrate().diff(), q);
    }

    #[test]
    fn parity_and_reading_off_squares() {
        let r = q_ring();
        let s = rat_series(&r, &[0, 1, 0, 3, 0, 5], 5);
        assert!(s.is_odd() && !s.is_even());
        let sq = &s * &s;
        assert!(sq.is_even());
        let d = sq.deflate(2).unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d, rat_series(&r, &[0, 1, 6], 2));
        assert!(matches!(s.deflate(2), Err(Error::ParityLeak { degree: 1, .. })));
        let back = d.substitute_monomial(&Rational::one(), 2);
        assert_eq!(back.order(), 5);
        assert_eq!(back.truncate(4), sq.truncate(4));
    }

    fn bivariate_ring() -> RingRef {
        Ring::with_vars(&[("a1", 2)]).unwrap()
    }

    #[test]
    fn div_exact_difference_of_squares() {
        let r = bivariate_ring();
        let one = MultiPoly::one(&r);
        let num = Series2::from_terms(&r, 6, [(2, 0, one.clone()), (0, 2, -&one)]);
        let den = Series2::from_terms(&r, 6, [(1, 0, one.clone()), (0, 1, one.clone())]);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q.order(), 5);
        assert_eq!(q, Series2::from_terms(&r, 5, [(1, 0, one.clone()), (0, 1, -&one)]));
        let odd = Series2::from_terms(&r, 6, [(2, 0, one.clone()), (0, 2, one.clone())]);
        assert!(matches!(odd.div_exact(&den), Err(Error::InexactDivision { degree: 2 })));
    }

    #[test]
    fn bivariate_inverse_and_products() {
        let r = bivariate_ring();
        let one = MultiPoly::one(&r);
        let a1 = var(&r, "a1");
        let c = Series2::from_terms(&r, 8, [(0, 0, one.clone()), (1, 1, -&a1), (2, 0, one.clone())]);
        assert_eq!(&c * &c.inv().unwrap(), Series2::one(&r, 8));
        assert!(c.swap().swap() == c);
        assert!(!c.is_symmetric());
    }

    #[test]
    fn compose_sum_agrees_with_horner() {
        let r = q_ring();
        let n = 9;
        let f = q_series(&r, n).mul_x_pow(1).revert().unwrap();
        let a = q_series(&r, n).mul_x_pow(1);
        let b = rat_series(&r, &[0, 1, 2, -1], n);
        let direct = Series2::compose_sum(&f, &a, &b).unwrap();
        let sum = &Series2::from_u(&a, n) + &Series2::from_v(&b, n);
        let horner = Series2::compose_univariate(&f, &sum).unwrap();
        assert_eq!(direct, horner);
    }

    #[test]
    fn substitute_along_a_line() {
        let r = q_ring();
        let n = 7;
        let a = q_series(&r, n).mul_x_pow(1);
        let sum = &Series2::from_u(&a, n) + &Series2::from_v(&a, n);
        let big = r.extended(&[("s", 0)]).unwrap();
        let t = Series1::x(&big, n);
        let a_big = a.map_ring(&big, |c| c.embed(&big)).unwrap();
        let on_axis = sum.substitute(&t, &Series1::zero(&big, n)).unwrap();
        assert_eq!(on_axis, a_big);
        let s = MultiPoly::var(&big, "s").unwrap();
        let st = t.mul_poly(&s);
        let line = sum.substitute(&t, &st).unwrap();
        let expect = &a_big + &a_big.compose(&st).unwrap();
        assert_eq!(line, expect);
    }
}
