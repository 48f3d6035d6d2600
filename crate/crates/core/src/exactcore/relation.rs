//! A polynomial ring modulo a single monomial rewrite rule.

use super::{Monomial, MultiPoly, RingRef};
use crate::{Error, Result};

/// `var^power -> replacement`, applied until every term has
/// `var`-exponent below `power`.
#[derive(Debug, Clone)]
pub struct RelationRing {
    ring: RingRef,
    var: usize,
    power: u16,
    replacement: MultiPoly,
}

impl RelationRing {
    pub fn new(var: &str, power: u16, replacement: MultiPoly) -> Result<Self> {
        let ring = replacement.ring().clone();
        let idx = ring.require(var)?;
        if power == 0 || replacement.degree_in(idx) >= power {
            return Err(Error::NonTerminatingRule(var.to_owned()));
        }
        Ok(RelationRing {
            ring,
            var: idx,
            power,
            replacement,
        })
    }

    /// The Weierstrass rule `v^2 -> 4u^3 - g2*u - g3` over a ring declaring
    /// `u`, `v`, `g2`, `g3`.
    pub fn weierstrass(ring: &RingRef) -> Result<Self> {
        let u = MultiPoly::var(ring, "u")?;
        let g2 = MultiPoly::var(ring, "g2")?;
        let g3 = MultiPoly::var(ring, "g3")?;
        let rhs = &(&u.pow(3).scale(&4.into()) - &(&g2 * &u)) - &g3;
        RelationRing::new("v", 2, rhs)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rewritten_var(&self) -> usize {
        self.var
    }

    pub fn replacement(&self) -> &MultiPoly {
        &self.replacement
    }

    /// Normal form of `p`.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if !super::poly::same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut powers = vec![MultiPoly::one(&self.ring)];
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in p.terms() {
            let e = m.exponents()[self.var];
            if e < self.power {
                out.add_assign_ref(&MultiPoly::monomial(&self.ring, m.clone(), c.clone()));
                continue;
            }
            let (q, r) = (e / self.power, e % self.power);
            while powers.len() <= q as usize {
                let next = powers.last().unwrap() * &self.replacement;
                powers.push(next);
            }
            let mut exps = m.exponents().to_vec();
            exps[self.var] = r;
            let rest = MultiPoly::monomial(&self.ring, Monomial::from_exponents(&exps), c.clone());
            out.add_assign_ref(&(&rest * &powers[q as usize]));
        }
        Ok(out)
    }

    pub fn is_normal(&self, p: &MultiPoly) -> bool {
        p.degree_in(self.var) < self.power
    }
}

/// A derivation given by the images of the ring's generators.
#[derive(Debug, Clone)]
pub struct Derivation {
    images: Vec<MultiPoly>,
}

impl Derivation {
    /// `images[i]` is the derivative of variable `i`.
    pub fn new(images: Vec<MultiPoly>) -> Self {
        Derivation { images }
    }

    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        assert_eq!(self.images.len(), p.ring().arity(), "derivation arity");
        let mut out = MultiPoly::zero(p.ring());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = p.partial(i);
            if !d.is_zero() {
                out.add_product(&d, img);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{Rational, Ring};

    fn kr_ring() -> RingRef {
        Ring::with_vars(&[("u", 2), ("v", 3), ("g2", 4), ("g3", 6)]).unwrap()
    }

    #[test]
    fn reduces_v_squared_and_cubed() {
        let r = kr_ring();
        let rel = RelationRing::weierstrass(&r).unwrap();
        let v = MultiPoly::var(&r, "v").unwrap();
        let rhs = rel.replacement().clone();
        assert_eq!(rel.reduce(&v.pow(2)).unwrap(), rhs);
        assert_eq!(rel.reduce(&v.pow(3)).unwrap(), &rhs * &v);
        assert!(rel.is_normal(&rel.reduce(&v.pow(7)).unwrap()));
    }

    #[test]
    fn weierstrass_cubic_reduces_to_zero() {
        let r = kr_ring();
        let rel = RelationRing::weierstrass(&r).unwrap();
        let v = MultiPoly::var(&r, "v").unwrap();
        let p = (&rel.replacement().clone() - &v.pow(2)).scale(&Rational::from(90));
        assert!(rel.reduce(&p).unwrap().is_zero());
    }

    #[test]
    fn missing_variable() {
        let r = Ring::with_vars(&[("u", 2), ("g2", 4), ("g3", 6)]).unwrap();
        assert!(matches!(
            RelationRing::weierstrass(&r),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn rule_must_lower_exponent() {
        let r = kr_ring();
        let v = MultiPoly::var(&r, "v").unwrap();
        assert!(matches!(
            RelationRing::new("v", 2, v.pow(3)),
            Err(Error::NonTerminatingRule(_))
        ));
    }
}
