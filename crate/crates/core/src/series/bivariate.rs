use std::ops::{Add, Mul, Neg, Sub};

use crate::exactcore::{same_ring, MultiPoly, Rational, RingRef};
use crate::series::Series1;
use crate::{Error, Result};

/// A power series in two formal variables `u`, `v`, truncated by total
/// degree: `coeffs[i][j]` is the coefficient of `u^i v^j` for `i + j <= order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series2 {
    ring: RingRef,
    order: usize,
    coeffs: Vec<Vec<MultiPoly>>,
}

impl Series2 {
    pub fn zero(ring: &RingRef, order: usize) -> Self {
        let zero = MultiPoly::zero(ring);
        Series2 {
            ring: ring.clone(),
            order,
            coeffs: (0..=order).map(|i| vec![zero.clone(); order - i + 1]).collect(),
        }
    }

    pub fn one(ring: &RingRef, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0][0] = MultiPoly::one(ring);
        s
    }

    /// Builds a series from `(i, j, coefficient)` entries; entries beyond the
    /// truncation are dropped and repeated entries add up.
    pub fn from_terms<I>(ring: &RingRef, order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, MultiPoly)>,
    {
        let mut s = Self::zero(ring, order);
        for (i, j, c) in terms {
            if i + j <= order {
                s.coeffs[i][j].add_assign_ref(&c);
            }
        }
        s
    }

    /// The univariate series `s(u)`, embedded along the `u` axis.
    pub fn from_u(s: &Series1, order: usize) -> Self {
        let mut out = Self::zero(s.ring(), order);
        for i in 0..=order.min(s.order()) {
            out.coeffs[i][0] = s.coeff(i).clone();
        }
        out
    }

    /// The univariate series `s(v)`, embedded along the `v` axis.
    pub fn from_v(s: &Series1, order: usize) -> Self {
        Self::from_u(s, order).swap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The coefficient of `u^i v^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &MultiPoly {
        &self.coeffs[i][j]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: MultiPoly) {
        assert!(same_ring(c.ring(), &self.ring), "coefficient ring mismatch");
        self.coeffs[i][j] = c;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &MultiPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i, j, c)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot raise truncation order");
        Series2 {
            ring: self.ring.clone(),
            order,
            coeffs: (0..=order)
                .map(|i| self.coeffs[i][..=order - i].to_vec())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|(_, _, c)| c.is_zero())
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (0..=self.order).find(|&n| (0..=n).any(|i| !self.coeffs[i][n - i].is_zero()))
    }

    /// `s(v, u)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(&self.ring, self.order);
        for (i, j, c) in self.entries() {
            out.coeffs[j][i] = c.clone();
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries().all(|(i, j, c)| *c == self.coeffs[j][i])
    }

    /// `s(c_u u, c_v v)`.
    pub fn rescale(&self, cu: &Rational, cv: &Rational) -> Self {
        let mut out = self.clone();
        for (i, row) in out.coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                if !c.is_zero() {
                    *c = c.scale(&(&cu.pow(i as i32) * &cv.pow(j as i32)));
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(k))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&MultiPoly) -> MultiPoly) -> Self {
        Series2 {
            ring: self.ring.clone(),
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(&mut f).collect())
                .collect(),
        }
    }

    fn check(&self, other: &Series2) -> Result<usize> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.order.min(other.order))
    }

    pub fn checked_add(&self, other: &Series2) -> Result<Series2> {
        let n = self.check(other)?;
        let mut out = self.truncate(n);
        for (i, row) in out.coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                c.add_assign_ref(&other.coeffs[i][j]);
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Series2) -> Result<Series2> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Series2) -> Result<Series2> {
        let n = self.check(other)?;
        let mut out = Series2::zero(&self.ring, n);
        for (i1, j1, a) in self.entries() {
            if a.is_zero() || i1 + j1 > n {
                continue;
            }
            let rest = n - i1 - j1;
            for i2 in 0..=rest {
                for j2 in 0..=(rest - i2) {
                    let b = &other.coeffs[i2][j2];
                    if !b.is_zero() {
                        out.coeffs[i1 + i2][j1 + j2].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a series whose constant term is a nonzero rational.
    pub fn inv(&self) -> Result<Series2> {
        let c0 = match self.coeffs[0][0].as_constant() {
            Some(c) if !c.is_zero() => c,
            _ => {
                return Err(Error::Precondition(
                    "constant term must be a nonzero rational".into(),
                ))
            }
        };
        let neg_inv = -&c0.recip().unwrap();
        let n = self.order;
        let mut out = Series2::zero(&self.ring, n);
        out.coeffs[0][0] = MultiPoly::constant(&self.ring, c0.recip().unwrap());
        for total in 1..=n {
            for i in 0..=total {
                let j = total - i;
                let mut acc = MultiPoly::zero(&self.ring);
                for k in 0..=i {
                    for l in 0..=j {
                        if k + l == 0 {
                            continue;
                        }
                        let a = &self.coeffs[k][l];
                        if !a.is_zero() {
                            acc.add_product(a, &out.coeffs[i - k][j - l]);
                        }
                    }
                }
                out.coeffs[i][j] = acc.scale(&neg_inv);
            }
        }
        Ok(out)
    }

    /// Division by a series with invertible constant term.
    pub fn checked_div(&self, other: &Series2) -> Result<Series2> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    fn homogeneous(&self, n: usize) -> Vec<MultiPoly> {
        (0..=n).map(|i| self.coeffs[i][n - i].clone()).collect()
    }

    /// Exact quotient `self / divisor` where the divisor may have positive
    /// valuation `d`. The quotient is determined through total degree
    /// `min(orders) - d`; every degree is checked for a zero remainder.
    pub fn div_exact(&self, divisor: &Series2) -> Result<Series2> {
        let n = self.check(divisor)?;
        let d = divisor
            .valuation()
            .ok_or_else(|| Error::Precondition("division by the zero series".into()))?;
        if let Some(v) = self.valuation() {
            if v < d {
                return Err(Error::InexactDivision { degree: v });
            }
        }
        let lead = divisor.homogeneous(d);
        let pivot = lead.iter().position(|c| !c.is_zero()).unwrap();
        let pivot_inv = lead[pivot].as_constant().and_then(|c| c.recip()).ok_or_else(|| {
            Error::Precondition("leading form has a non-constant pivot coefficient".into())
        })?;
        let qn = n.saturating_sub(d);
        if n < d {
            return Ok(Series2::zero(&self.ring, 0));
        }
        let mut q = Series2::zero(&self.ring, qn);
        for m in 0..=qn {
            // remainder of degree m + d after removing known quotient parts
            let mut rem = self.homogeneous(m + d);
            for k in 0..m {
                let dk = m + d - k;
                for i1 in 0..=k {
                    let a = &q.coeffs[i1][k - i1];
                    if a.is_zero() {
                        continue;
                    }
                    for i2 in 0..=dk {
                        let b = &divisor.coeffs[i2][dk - i2];
                        if !b.is_zero() {
                            rem[i1 + i2].add_product(&-a, b);
                        }
                    }
                }
            }
            for i in 0..=m {
                let c = rem[i + pivot].scale(&pivot_inv);
                if c.is_zero() {
                    continue;
                }
                for (l, b) in lead.iter().enumerate() {
                    if !b.is_zero() {
                        rem[i + l].add_product(&-&c, b);
                    }
                }
                q.coeffs[i][m - i] = c;
            }
            if rem.iter().any(|c| !c.is_zero()) {
                return Err(Error::InexactDivision { degree: m + d });
            }
        }
        Ok(q)
    }

    /// `outer(inner(u, v))`, with `inner` vanishing at the origin.
    pub fn compose_univariate(outer: &Series1, inner: &Series2) -> Result<Series2> {
        if !same_ring(outer.ring(), &inner.ring) {
            return Err(Error::RingMismatch);
        }
        if !inner.coeffs[0][0].is_zero() {
            return Err(Error::Precondition(
                "composition inner series requires constant term 0".into(),
            ));
        }
        let n = outer.order().min(inner.order);
        let inner = inner.truncate(n);
        let mut acc = Series2::zero(&inner.ring, n);
        acc.coeffs[0][0] = outer.coeff(n).clone();
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0][0].add_assign_ref(outer.coeff(k));
        }
        Ok(acc)
    }

    /// `outer(a(u) + b(v))` for univariate `a`, `b` vanishing at 0.
    ///
    /// Expands `outer` by Taylor's formula around `a(u)`, so that
    /// `[u^i v^j] = sum_{m,k} f_{m+k} C(m+k, k) [u^i] a^m [v^j] b^k`; the
    /// double sum is evaluated as two staged triangular matrix products.
    pub fn compose_sum(outer: &Series1, a: &Series1, b: &Series1) -> Result<Series2> {
        let ring = outer.ring();
        if !same_ring(ring, a.ring()) || !same_ring(ring, b.ring()) {
            return Err(Error::RingMismatch);
        }
        if !a.coeff(0).is_zero() || !b.coeff(0).is_zero() {
            return Err(Error::Precondition(
                "composition inner series requires constant term 0".into(),
            ));
        }
        let n = outer.order().min(a.order()).min(b.order());
        let pa = power_table(&a.truncate(n));
        let pb = power_table(&b.truncate(n));
        let zero = MultiPoly::zero(ring);
        // t[m][j] = sum_k f_{m+k} C(m+k,k) [v^j] b^k, over m + j <= n
        let mut t: Vec<Vec<MultiPoly>> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut row = vec![zero.clone(); n - m + 1];
            for (j, slot) in row.iter_mut().enumerate() {
                for k in 0..=j {
                    let f = outer.coeff(m + k);
                    let p = &pb[k][j];
                    if f.is_zero() || p.is_zero() {
                        continue;
                    }
                    let c = Rational::binomial((m + k) as u32, k as u32);
                    slot.add_product(&f.scale(&c), p);
                }
            }
            t.push(row);
        }
        let mut out = Series2::zero(ring, n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                let mut acc = zero.clone();
                for m in 0..=i {
                    let p = &pa[m][i];
                    let q = &t[m][j];
                    if !p.is_zero() && !q.is_zero() {
                        acc.add_product(p, q);
                    }
                }
                out.coeffs[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// `self(x(t), y(t))` as a series in `t`. The coefficients of `self`
    /// are embedded by name into the ring of `x` and `y`.
    pub fn substitute(&self, x: &Series1, y: &Series1) -> Result<Series1> {
        let target = x.ring();
        if !same_ring(target, y.ring()) {
            return Err(Error::RingMismatch);
        }
        if !x.coeff(0).is_zero() || !y.coeff(0).is_zero() {
            return Err(Error::Precondition(
                "substituted series must vanish at 0".into(),
            ));
        }
        let n = self.order.min(x.order()).min(y.order());
        let x = x.truncate(n);
        let y = y.truncate(n);
        let mut ypow = vec![Series1::one(target, n)];
        for j in 1..=n {
            let next = &ypow[j - 1] * &y;
            ypow.push(next);
        }
        // Horner in x over rows h_i(t) = sum_j c_ij y^j
        let mut acc = Series1::zero(target, n);
        for i in (0..=n).rev() {
            acc = &acc * &x;
            let mut row = Series1::zero(target, n);
            for j in 0..=(n - i) {
                let c = self.coeffs[i][j].embed(target)?;
                if c.is_zero() {
                    continue;
                }
                row = &row + &ypow[j].mul_poly(&c);
            }
            acc = &acc + &row;
        }
        Ok(acc)
    }

    /// Reads a series in `(x, y)` off one whose nonzero terms have even `u`
    /// and even `v` exponents, using `u^2 = cu * x` and `v^2 = cv * y`.
    pub fn deflate_squares(&self, cu: &Rational, cv: &Rational) -> Result<Series2> {
        for (i, j, c) in self.entries() {
            if (i % 2 == 1 || j % 2 == 1) && !c.is_zero() {
                return Err(Error::ParityLeak {
                    degree: i + j,
                    coefficient: format!("u^{i} v^{j}: {c}"),
                });
            }
        }
        let n = self.order / 2;
        let mut out = Series2::zero(&self.ring, n);
        for a in 0..=n {
            for b in 0..=(n - a) {
                let k = &cu.pow(a as i32) * &cv.pow(b as i32);
                out.coeffs[a][b] = self.coeffs[2 * a][2 * b].scale(&k);
            }
        }
        Ok(out)
    }

    /// `self(s^2, t^2)`; known through total degree `2 * order + 1`.
    pub fn inflate_squares(&self) -> Series2 {
        let n = 2 * self.order + 1;
        let mut out = Series2::zero(&self.ring, n);
        for (i, j, c) in self.entries() {
            out.coeffs[2 * i][2 * j] = c.clone();
        }
        out
    }

    /// First coefficient (in total-degree order) where the two differ.
    pub fn first_difference(&self, other: &Series2) -> Option<(usize, usize, MultiPoly, MultiPoly)> {
        let n = self.order.min(other.order);
        for total in 0..=n {
            for i in 0..=total {
                let j = total - i;
                if self.coeffs[i][j] != other.coeffs[i][j] {
                    return Some((i, j, self.coeffs[i][j].clone(), other.coeffs[i][j].clone()));
                }
            }
        }
        None
    }
}

/// `table[k][i] = [x^i] s^k` for `k, i <= order`.
pub(crate) fn power_table(s: &Series1) -> Vec<Vec<MultiPoly>> {
    let n = s.order();
    let mut table = Vec::with_capacity(n + 1);
    let mut p = Series1::one(s.ring(), n);
    for _ in 0..=n {
        table.push(p.coeffs().to_vec());
        p = &p * s;
    }
    table
}

impl std::fmt::Debug for Series2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Series2(order {}) {{", self.order)?;
        for (i, j, c) in self.entries() {
            if !c.is_zero() {
                write!(f, " [{i},{j}]: {c};")?;
            }
        }
        write!(f, " }}")
    }
}

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        self.map_coeffs(|c| -c)
    }
}
