//! Formal expansions of the Weierstrass functions with symbolic invariants.
//!
//! `wp(x) = 1/x^2 + S(x)` is stored through its pole-cleared form
//! `P(x) = x^2 wp(x) = 1 + x^2 S(x)`. The coefficients of `P` are solved
//! order by order from the differential equation
//! `wp'^2 = 4 wp^3 - g2 wp - g3`, which after multiplying by `x^6` reads
//! `(x P' - 2P)^2 - 4 P^3 + g2 x^4 P + g3 x^6 = 0`.

use crate::exactcore::{Derivation, MultiPoly, Rational, RelationRing, Ring, RingRef};
use crate::series::Series1;
use crate::Result;

/// The expansion of `wp(x; g2, g3)` around its pole.
#[derive(Debug, Clone)]
pub struct WpSeries {
    order: usize,
    g2: MultiPoly,
    g3: MultiPoly,
    pole_cleared: Series1,
}

impl WpSeries {
    /// Expands `wp` with the given invariants; the tail `S` is known through
    /// `x^order`.
    pub fn new(g2: &MultiPoly, g3: &MultiPoly, order: usize) -> Self {
        let ring = g2.ring().clone();
        assert!(
            crate::exactcore::same_ring(&ring, g3.ring()),
            "invariants must share a ring"
        );
        let m = order + 2;
        let zero = MultiPoly::zero(&ring);
        let mut p = vec![zero.clone(); m + 1];
        let mut d = vec![zero.clone(); m + 1]; // coefficients of x P' - 2P
        let mut p2 = vec![zero.clone(); m + 1]; // coefficients of P^2
        p[0] = MultiPoly::one(&ring);
        d[0] = MultiPoly::constant(&ring, -2);
        p2[0] = MultiPoly::one(&ring);
        for n in 1..=m {
            // residual coefficient at x^n with P_n = 0
            let mut p2n = zero.clone();
            for i in 1..n {
                if !p[i].is_zero() && !p[n - i].is_zero() {
                    p2n.add_product(&p[i], &p[n - i]);
                }
            }
            let mut r = zero.clone();
            for i in 1..n {
                if !d[i].is_zero() && !d[n - i].is_zero() {
                    r.add_product(&d[i], &d[n - i]);
                }
            }
            let mut cube = zero.clone();
            for i in 0..=n {
                let a = if i == n { &p2n } else { &p2[i] };
                if i < n && !a.is_zero() && !p[n - i].is_zero() {
                    cube.add_product(a, &p[n - i]);
                } else if i == n && !a.is_zero() {
                    cube.add_assign_ref(a);
                }
            }
            r = &r - &cube.scale(&Rational::from(4));
            if n >= 4 && !p[n - 4].is_zero() {
                r.add_product(g2, &p[n - 4]);
            }
            if n == 6 {
                r.add_assign_ref(g3);
            }
            // the unknown P_n enters linearly with coefficient -4(n+1)
            let c = r.scale(&Rational::new(1, 4 * (n as i64 + 1)));
            d[n] = c.scale(&Rational::from(n as i64 - 2));
            p2[n] = &p2n + &c.scale(&Rational::from(2));
            p[n] = c;
        }
        WpSeries {
            order,
            g2: g2.clone(),
            g3: g3.clone(),
            pole_cleared: Series1::from_coeffs(&ring, p),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self) -> &RingRef {
        self.pole_cleared.ring()
    }

    pub fn g2(&self) -> &MultiPoly {
        &self.g2
    }

    pub fn g3(&self) -> &MultiPoly {
        &self.g3
    }

    /// `x^2 wp(x)`, known through `x^{order + 2}`.
    pub fn pole_cleared(&self) -> &Series1 {
        &self.pole_cleared
    }

    /// `S(x) = wp(x) - 1/x^2`, known through `x^order`.
    pub fn tail(&self) -> Series1 {
        let one = Series1::one(self.ring(), self.pole_cleared.order());
        (&self.pole_cleared - &one)
            .div_x_pow(2)
            .expect("P = 1 + O(x^2)")
    }

    /// `c_k`, the coefficient of `x^{2k-2}` in `wp`, for `k >= 2`.
    pub fn coefficient(&self, k: usize) -> &MultiPoly {
        assert!(k >= 2 && 2 * k - 2 <= self.order, "coefficient out of range");
        self.pole_cleared.coeff(2 * k)
    }

    /// `x^6 (wp'^2 - 4 wp^3 + g2 wp + g3)` recomputed from the stored
    /// expansion with series arithmetic; vanishes identically when the
    /// expansion is correct.
    pub fn ode_residual(&self) -> Series1 {
        let p = &self.pole_cleared;
        let n = p.order();
        let ring = p.ring();
        let xdp = p.diff().mul_x_pow(1);
        let xdp = Series1::from_poly_coeffs(ring, xdp.coeffs(), n);
        let xdp = {
            let mut s = xdp;
            // x * P' is known through x^n
            s.set_coeff(n, p.coeff(n).scale(&Rational::from(n)));
            s
        };
        let d = &xdp - &p.scale(&Rational::from(2));
        let mut res = &(&d * &d) - &p.pow(3).scale(&Rational::from(4));
        res = &res + &p.mul_poly(&self.g2).mul_x_pow(4);
        if n >= 6 {
            let mut g3term = Series1::zero(ring, n);
            g3term.set_coeff(6, self.g3.clone());
            res = &res + &g3term;
        }
        res
    }
}

/// The Weierstrass sigma function `sigma(x) = x + O(x^5)`, odd.
#[derive(Debug, Clone)]
pub struct SigmaSeries {
    series: Series1,
    log_regular: Series1,
}

impl SigmaSeries {
    /// Integrates `-(wp - 1/x^2)` twice with zero constants and
    /// exponentiates, so that `(log sigma)'' = -wp`. Known through
    /// `x^{wp.order() + 3}`.
    pub fn from_wp(wp: &WpSeries) -> Self {
        let log_regular = (-&wp.tail()).integrate().integrate();
        let exp_h = log_regular.exp().expect("log(sigma/x) vanishes at 0");
        let mut coeffs = vec![MultiPoly::zero(exp_h.ring())];
        coeffs.extend(exp_h.coeffs().iter().cloned());
        SigmaSeries {
            series: Series1::from_coeffs(exp_h.ring(), coeffs),
            log_regular,
        }
    }

    pub fn new(g2: &MultiPoly, g3: &MultiPoly, order: usize) -> Self {
        let wp_order = order.saturating_sub(3);
        Self::from_wp(&WpSeries::new(g2, g3, wp_order))
    }

    pub fn series(&self) -> &Series1 {
        &self.series
    }

    /// `log(sigma(x)/x)`.
    pub fn log_regular(&self) -> &Series1 {
        &self.log_regular
    }

    /// `zeta(x) - 1/x = (log(sigma/x))'`.
    pub fn zeta_regular(&self) -> Series1 {
        self.log_regular.diff()
    }
}

/// The derivation `d/dz` on `Q[u, v, g2, g3]` with `u = wp(z)`, `v = wp'(z)`.
#[derive(Debug, Clone)]
pub struct WpDerivatives {
    relation: RelationRing,
    derivation: Derivation,
}

impl WpDerivatives {
    /// `ring` must declare `u`, `v`, `g2`, `g3`; other variables are
    /// treated as constants.
    pub fn new(ring: &RingRef) -> Result<Self> {
        let relation = RelationRing::weierstrass(ring)?;
        let u = MultiPoly::var(ring, "u")?;
        let g2 = MultiPoly::var(ring, "g2")?;
        let mut images = vec![MultiPoly::zero(ring); ring.arity()];
        images[ring.require("u")?] = MultiPoly::var(ring, "v")?;
        images[ring.require("v")?] =
            &u.pow(2).scale(&Rational::from(6)) - &g2.scale(&Rational::new(1, 2));
        Ok(WpDerivatives {
            relation,
            derivation: Derivation::new(images),
        })
    }

    /// The default ring `{u:2, v:3, g2:4, g3:6}`.
    pub fn standard() -> Self {
        let ring = Ring::with_vars(&[("u", 2), ("v", 3), ("g2", 4), ("g3", 6)])
            .expect("distinct names");
        Self::new(&ring).expect("ring declares u, v, g2, g3")
    }

    pub fn ring(&self) -> &RingRef {
        self.relation.ring()
    }

    pub fn relation(&self) -> &RelationRing {
        &self.relation
    }

    /// `wp^{(k)}(z)` in normal form (`v`-exponent at most 1).
    pub fn nth(&self, k: usize) -> MultiPoly {
        self.sequence(k, true).pop().unwrap()
    }

    /// `wp^{(0)}, ..., wp^{(k)}`; with `reduced == false` the derivation is
    /// applied without rewriting `v^2`.
    pub fn sequence(&self, k: usize, reduced: bool) -> Vec<MultiPoly> {
        let ring = self.ring();
        let mut out = vec![MultiPoly::var(ring, "u").expect("declared")];
        for _ in 0..k {
            let mut next = self.derivation.apply(out.last().unwrap());
            if reduced {
                next = self.relation.reduce(&next).expect("same ring");
            }
            out.push(next);
        }
        out
    }

    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        self.relation.reduce(p)
    }
}

/// The invariants as free symbols in the ring `{g2:4, g3:6}`.
pub fn symbolic_invariants() -> (MultiPoly, MultiPoly) {
    let ring = Ring::with_vars(&[("g2", 4), ("g3", 6)]).expect("distinct names");
    (
        MultiPoly::var(&ring, "g2").unwrap(),
        MultiPoly::var(&ring, "g3").unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Weight;

    #[test]
    fn degenerate_cusp_is_pure_pole() {
        let ring = Ring::with_vars(&[("g2", 4), ("g3", 6)]).unwrap();
        let zero = MultiPoly::zero(&ring);
        let wp = WpSeries::new(&zero, &zero, 20);
        assert!(wp.tail().is_zero());
        let sigma = SigmaSeries::from_wp(&wp);
        assert_eq!(*sigma.series(), Series1::x(&ring, 23));
    }

    /// Solves the residual for c_2, c_3 directly: with P = 1 + c2 x^4 + c3 x^6,
    /// the x^4 and x^6 coefficients of the cleared equation are
    /// -20 c2 + g2 and -28 c3 + g3.
    #[test]
    fn leading_coefficients() {
        let (g2, g3) = symbolic_invariants();
        let wp = WpSeries::new(&g2, &g3, 10);
        assert_eq!(*wp.coefficient(2), g2.scale(&Rational::new(1, 20)));
        assert_eq!(*wp.coefficient(3), g3.scale(&Rational::new(1, 28)));
        // classical c4 = c2^2 / 3
        assert_eq!(
            *wp.coefficient(4),
            g2.pow(2).scale(&Rational::new(1, 1200))
        );
    }

    #[test]
    fn ode_residual_vanishes_at_order_20() {
        let (g2, g3) = symbolic_invariants();
        let wp = WpSeries::new(&g2, &g3, 20);
        assert!(wp.ode_residual().is_zero());
        assert!(wp.tail().is_even());
        for k in 2..=11 {
            assert_eq!(wp.coefficient(k).weight(), Weight::Homogeneous(2 * k as u32));
        }
    }

    #[test]
    fn sigma_low_coefficients() {
        let (g2, g3) = symbolic_invariants();
        let sigma = SigmaSeries::new(&g2, &g3, 13);
        let s = sigma.series();
        assert!(s.is_odd());
        assert_eq!(*s.coeff(1), MultiPoly::one(g2.ring()));
        assert_eq!(*s.coeff(5), g2.scale(&Rational::new(-1, 240)));
        assert_eq!(*s.coeff(7), g3.scale(&Rational::new(-1, 840)));
    }

    #[test]
    fn zeta_derivative_is_minus_wp() {
        let (g2, g3) = symbolic_invariants();
        let wp = WpSeries::new(&g2, &g3, 16);
        let sigma = SigmaSeries::from_wp(&wp);
        let zeta = sigma.zeta_regular();
        assert!(zeta.is_odd());
        assert_eq!(zeta.diff(), -&wp.tail());
    }

    #[test]
    fn z_derivatives_of_wp() {
        let d = WpDerivatives::standard();
        let r = d.ring().clone();
        let var = |n: &str| MultiPoly::var(&r, n).unwrap();
        let (u, v, g2, g3) = (var("u"), var("v"), var("g2"), var("g3"));
        assert_eq!(d.nth(0), u);
        assert_eq!(d.nth(1), v);
        assert_eq!(
            d.nth(2),
            &u.pow(2).scale(&6.into()) - &g2.scale(&Rational::new(1, 2))
        );
        let k4 = &(&u.pow(3).scale(&120.into()) - &(&g2 * &u).scale(&18.into()))
            - &g3.scale(&12.into());
        assert_eq!(d.nth(4), k4);
        for k in 0..10 {
            let p = d.nth(k);
            assert!(d.relation().is_normal(&p));
            assert_eq!(p.weight(), Weight::Homogeneous(2 + k as u32));
        }
        // raw and reduced agree modulo the relation
        let raw = d.sequence(7, false);
        let red = d.sequence(7, true);
        for (a, b) in raw.iter().zip(&red) {
            assert_eq!(d.reduce(a).unwrap(), *b);
        }
    }
}
