use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exactcore::{same_ring, MultiPoly, PolyRecord, Rational, RingRef, VarSpec};
use crate::{Error, Result};

/// A truncated power series `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})` with
/// polynomial coefficients. Coefficients `0..=order` are stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct Series1 {
    ring: RingRef,
    coeffs: Vec<MultiPoly>,
}

impl Series1 {
    pub fn zero(ring: &RingRef, order: usize) -> Self {
        Series1 {
            ring: ring.clone(),
            coeffs: vec![MultiPoly::zero(ring); order + 1],
        }
    }

    pub fn one(ring: &RingRef, order: usize) -> Self {
        Self::constant(&MultiPoly::one(ring), order)
    }

    pub fn constant(c: &MultiPoly, order: usize) -> Self {
        let mut s = Self::zero(c.ring(), order);
        s.coeffs[0] = c.clone();
        s
    }

    /// The series variable itself.
    pub fn x(ring: &RingRef, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if order >= 1 {
            s.coeffs[1] = MultiPoly::one(ring);
        }
        s
    }

    /// `coeffs[k]` becomes the coefficient of `x^k`; the order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(ring: &RingRef, coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least one coefficient");
        assert!(
            coeffs.iter().all(|c| same_ring(c.ring(), ring)),
            "coefficient ring mismatch"
        );
        Series1 {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// A polynomial in `x` carried at the given truncation order; terms
    /// above the order are dropped.
    pub fn from_poly_coeffs(ring: &RingRef, coeffs: &[MultiPoly], order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        for (k, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: MultiPoly) {
        assert!(same_ring(c.ring(), &self.ring), "coefficient ring mismatch");
        self.coeffs[k] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise truncation order");
        Series1 {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(MultiPoly::is_zero)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(MultiPoly::is_zero)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(usize, &MultiPoly) -> MultiPoly) -> Self {
        let coeffs: Vec<MultiPoly> = self.coeffs.iter().enumerate().map(|(k, c)| f(k, c)).collect();
        let ring = coeffs[0].ring().clone();
        Series1 { ring, coeffs }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map_coeffs(|_, c| c.scale(k))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        self.map_coeffs(|_, c| c * p)
    }

    fn check(&self, other: &Series1) -> Result<usize> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.order().min(other.order()))
    }

    pub fn checked_add(&self, other: &Series1) -> Result<Series1> {
        let n = self.check(other)?;
        Ok(Series1 {
            ring: self.ring.clone(),
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Series1) -> Result<Series1> {
        let n = self.check(other)?;
        Ok(Series1 {
            ring: self.ring.clone(),
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Series1) -> Result<Series1> {
        let n = self.check(other)?;
        let mut out = Series1::zero(&self.ring, n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j].add_product(a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u32) -> Series1 {
        let mut base = self.clone();
        let mut acc = Series1::one(&self.ring, self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn unit_constant(&self) -> Result<Rational> {
        match self.coeffs[0].as_constant() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(Error::Precondition(
                "constant term must be a nonzero rational".into(),
            )),
        }
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inv(&self) -> Result<Series1> {
        let c0 = self.unit_constant()?;
        let c0inv = c0.recip().unwrap();
        let n = self.order();
        let mut out = Series1::zero(&self.ring, n);
        out.coeffs[0] = MultiPoly::constant(&self.ring, c0inv.clone());
        for m in 1..=n {
            let mut acc = MultiPoly::zero(&self.ring);
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc.add_product(&self.coeffs[k], &out.coeffs[m - k]);
                }
            }
            out.coeffs[m] = acc.scale(&-&c0inv);
        }
        Ok(out)
    }

    pub fn checked_div(&self, other: &Series1) -> Result<Series1> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    fn require_unit_one(&self, what: &str) -> Result<()> {
        if self.coeffs[0].as_constant().is_some_and(|c| c.is_one()) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} requires constant term 1")))
        }
    }

    fn require_zero_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} requires constant term 0")))
        }
    }

    /// Square root on the branch with constant term 1.
    pub fn sqrt(&self) -> Result<Series1> {
        self.require_unit_one("sqrt")?;
        let n = self.order();
        let half = Rational::new(1, 2);
        let mut out = Series1::one(&self.ring, n);
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                if !out.coeffs[k].is_zero() && !out.coeffs[m - k].is_zero() {
                    acc.add_product(&-&out.coeffs[k], &out.coeffs[m - k]);
                }
            }
            out.coeffs[m] = acc.scale(&half);
        }
        Ok(out)
    }

    /// `self^r` for rational `r`, on the branch with constant term 1.
    pub fn pow_rational(&self, r: &Rational) -> Result<Series1> {
        self.require_unit_one("rational power")?;
        let n = self.order();
        let mut out = Series1::one(&self.ring, n);
        for m in 1..=n {
            let mut acc = MultiPoly::zero(&self.ring);
            for k in 1..=m {
                if self.coeffs[k].is_zero() || out.coeffs[m - k].is_zero() {
                    continue;
                }
                let w = &(r * &Rational::from(k)) - &Rational::from(m - k);
                if !w.is_zero() {
                    acc.add_product(&self.coeffs[k].scale(&w), &out.coeffs[m - k]);
                }
            }
            out.coeffs[m] = acc.scale(&Rational::new(1, m as i64));
        }
        Ok(out)
    }

    pub fn exp(&self) -> Result<Series1> {
        self.require_zero_constant("exp")?;
        let n = self.order();
        let mut out = Series1::one(&self.ring, n);
        for m in 1..=n {
            let mut acc = MultiPoly::zero(&self.ring);
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !out.coeffs[m - k].is_zero() {
                    acc.add_product(&self.coeffs[k].scale(&Rational::from(k)), &out.coeffs[m - k]);
                }
            }
            out.coeffs[m] = acc.scale(&Rational::new(1, m as i64));
        }
        Ok(out)
    }

    pub fn log(&self) -> Result<Series1> {
        self.require_unit_one("log")?;
        let n = self.order();
        let mut out = Series1::zero(&self.ring, n);
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&Rational::from(m));
            for k in 1..m {
                if !out.coeffs[k].is_zero() && !self.coeffs[m - k].is_zero() {
                    acc.add_product(&out.coeffs[k].scale(&Rational::from(-(k as i64))), &self.coeffs[m - k]);
                }
            }
            out.coeffs[m] = acc.scale(&Rational::new(1, m as i64));
        }
        Ok(out)
    }

    /// Termwise derivative. The result is known to one order less; an
    /// order-0 input yields the zero series of order 0.
    pub fn diff(&self) -> Series1 {
        let n = self.order();
        if n == 0 {
            return Series1::zero(&self.ring, 0);
        }
        Series1 {
            ring: self.ring.clone(),
            coeffs: (1..=n)
                .map(|k| self.coeffs[k].scale(&Rational::from(k)))
                .collect(),
        }
    }

    /// Termwise antiderivative with zero constant term, one order higher.
    pub fn integrate(&self) -> Series1 {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(MultiPoly::zero(&self.ring));
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(1, k as i64 + 1)));
        }
        Series1 {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// `outer(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series1) -> Result<Series1> {
        let n = self.check(inner)?;
        inner.require_zero_constant("composition inner series")?;
        let inner = inner.truncate(n);
        let mut acc = Series1::constant(&self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0].add_assign_ref(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse, solved order by order: with `P[k][m]` the
    /// coefficient of `x^m` in `b^k`, the unknown `b_m` enters `a(b)` only
    /// through `a_1 P[1][m]`.
    pub fn revert(&self) -> Result<Series1> {
        let n = self.order();
        let linear_one = n >= 1 && self.coeffs[1].as_constant().is_some_and(|c| c.is_one());
        if !self.coeffs[0].is_zero() || !linear_one {
            return Err(Error::Precondition(
                "reversion requires the form x + O(x^2)".into(),
            ));
        }
        let zero = MultiPoly::zero(&self.ring);
        let mut b = vec![zero.clone(); n + 1];
        b[1] = MultiPoly::one(&self.ring);
        // powers[k][m]; row 0 unused
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![zero.clone(); n + 1]; n + 1];
        powers[1][1] = b[1].clone();
        for m in 2..=n {
            for k in 2..=m {
                let mut acc = zero.clone();
                for j in 1..=(m - k + 1) {
                    if !b[j].is_zero() && !powers[k - 1][m - j].is_zero() {
                        acc.add_product(&b[j], &powers[k - 1][m - j]);
                    }
                }
                powers[k][m] = acc;
            }
            let mut bm = zero.clone();
            for k in 2..=m {
                if !self.coeffs[k].is_zero() && !powers[k][m].is_zero() {
                    bm.add_product(&self.coeffs[k], &powers[k][m]);
                }
            }
            b[m] = -bm;
            powers[1][m] = b[m].clone();
        }
        Ok(Series1 {
            ring: self.ring.clone(),
            coeffs: b,
        })
    }

    /// `self(c * x^k)`. Known through degree `k * order + k - 1`.
    pub fn substitute_monomial(&self, c: &Rational, k: usize) -> Series1 {
        assert!(k >= 1);
        let n = k * self.order() + k - 1;
        let mut out = Series1::zero(&self.ring, n);
        let mut cp = Rational::one();
        for (m, a) in self.coeffs.iter().enumerate() {
            out.coeffs[k * m] = a.scale(&cp);
            cp = &cp * c;
        }
        out
    }

    /// Reads a series in `x = s^k` off a series in `s` whose nonzero terms
    /// all have degree divisible by `k`.
    pub fn deflate(&self, k: usize) -> Result<Series1> {
        assert!(k >= 1);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m % k != 0 && !c.is_zero() {
                return Err(Error::ParityLeak {
                    degree: m,
                    coefficient: c.to_text(),
                });
            }
        }
        let n = self.order() / k;
        Ok(Series1 {
            ring: self.ring.clone(),
            coeffs: (0..=n).map(|m| self.coeffs[k * m].clone()).collect(),
        })
    }

    /// `self / x^k`, requiring the first `k` coefficients to vanish.
    pub fn div_x_pow(&self, k: usize) -> Result<Series1> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Precondition(format!("not divisible by x^{k}")));
        }
        Ok(Series1 {
            ring: self.ring.clone(),
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `self * x^k` at the same order.
    pub fn mul_x_pow(&self, k: usize) -> Series1 {
        let n = self.order();
        let mut out = Series1::zero(&self.ring, n);
        for m in 0..=n.saturating_sub(k) {
            if m + k <= n {
                out.coeffs[m + k] = self.coeffs[m].clone();
            }
        }
        out
    }

    /// Re-expresses every coefficient in `target`.
    pub fn map_ring(&self, target: &RingRef, mut f: impl FnMut(&MultiPoly) -> Result<MultiPoly>) -> Result<Series1> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        if coeffs.iter().any(|c| !same_ring(c.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        Ok(Series1 {
            ring: target.clone(),
            coeffs,
        })
    }

    /// The first index where two series differ, up to the smaller order.
    pub fn first_difference(&self, other: &Series1) -> Option<(usize, MultiPoly, MultiPoly)> {
        let n = self.order().min(other.order());
        (0..=n)
            .find(|&k| self.coeffs[k] != other.coeffs[k])
            .map(|k| (k, self.coeffs[k].clone(), other.coeffs[k].clone()))
    }

    pub fn to_text(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let monomial = match k {
                0 => String::new(),
                1 => var.to_owned(),
                _ => format!("{var}^{k}"),
            };
            let body = if c.len() > 1 {
                format!("({c})")
            } else {
                c.to_text()
            };
            parts.push(match (k, body.as_str()) {
                (0, _) => body,
                (_, "1") => monomial,
                (_, "-1") => format!("-{monomial}"),
                _ => format!("{body}*{monomial}"),
            });
        }
        parts.push(format!("O({var}^{})", self.order() + 1));
        parts.join(" + ")
    }
}

impl std::fmt::Debug for Series1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Series1[{}]", self.to_text("x"))
    }
}

impl Add for &Series1 {
    type Output = Series1;
    fn add(self, rhs: &Series1) -> Series1 {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Series1 {
    type Output = Series1;
    fn sub(self, rhs: &Series1) -> Series1 {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Series1 {
    type Output = Series1;
    fn mul(self, rhs: &Series1) -> Series1 {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        self.map_coeffs(|_, c| -c)
    }
}

/// Serialized form of a [`Series1`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub vars: Vec<VarSpec>,
    pub order: usize,
    pub coeffs: Vec<Vec<(Vec<u16>, Rational)>>,
}

impl From<&Series1> for SeriesRecord {
    fn from(s: &Series1) -> Self {
        SeriesRecord {
            vars: s.ring.vars().to_vec(),
            order: s.order(),
            coeffs: s
                .coeffs
                .iter()
                .map(|c| PolyRecord::from(c).terms)
                .collect(),
        }
    }
}

impl Series1 {
    pub fn from_record(ring: &RingRef, rec: &SeriesRecord) -> Result<Series1> {
        if rec.coeffs.len() != rec.order + 1 {
            return Err(Error::Parse("coefficient count does not match order".into()));
        }
        let coeffs = rec
            .coeffs
            .iter()
            .map(|terms| {
                MultiPoly::from_record(
                    ring,
                    &PolyRecord {
                        vars: rec.vars.clone(),
                        terms: terms.clone(),
                    },
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Series1::from_coeffs(ring, coeffs))
    }
}
