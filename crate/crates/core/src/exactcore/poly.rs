//! Sparse multivariate polynomials over the rationals in a declared, graded
//! set of variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::Rational;
use crate::{Error, Result};

/// A variable declaration. `weight` is the complex weight used for grading.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSpec {
    pub name: String,
    pub weight: u32,
}

impl VarSpec {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        VarSpec {
            name: name.into(),
            weight,
        }
    }
}

/// An ordered list of variables with unique names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<VarSpec>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: Vec<VarSpec>) -> Result<RingRef> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Shorthand for `Ring::new` from `(name, weight)` pairs.
    pub fn with_vars(vars: &[(&str, u32)]) -> Result<RingRef> {
        Ring::new(vars.iter().map(|&(n, w)| VarSpec::new(n, w)).collect())
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_owned()))
    }

    /// A new ring with `extra` appended after the existing variables.
    pub fn extended(&self, extra: &[(&str, u32)]) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|&(n, w)| VarSpec::new(n, w)));
        Ring::new(vars)
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector. Ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weight(&self, ring: &Ring) -> u32 {
        self.0
            .iter()
            .zip(&ring.vars)
            .map(|(&e, v)| e as u32 * v.weight)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<SmallVec<_>>>()
            .map(Monomial)
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a homogeneity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    Zero,
    Homogeneous(u32),
    /// Two terms of different weight, with their weights.
    Inhomogeneous {
        first: (Monomial, u32),
        second: (Monomial, u32),
    },
}

#[derive(Clone)]
pub struct MultiPoly {
    ring: RingRef,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &RingRef) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingRef, c: impl Into<Rational>) -> Self {
        let c = c.into();
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.arity()), c);
        }
        p
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        let idx = ring.require(name)?;
        Ok(Self::var_at(ring, idx))
    }

    pub fn var_at(ring: &RingRef, idx: usize) -> Self {
        let mut exps = vec![0u16; ring.arity()];
        exps[idx] = 1;
        Self::monomial(ring, Monomial::from_exponents(&exps), Rational::one())
    }

    pub fn monomial(ring: &RingRef, mono: Monomial, coeff: impl Into<Rational>) -> Self {
        assert_eq!(mono.0.len(), ring.arity(), "exponent vector arity");
        let coeff = coeff.into();
        let mut p = Self::zero(ring);
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (exps, c) in terms {
            assert_eq!(exps.len(), ring.arity(), "exponent vector arity");
            p.add_term(Monomial::from_exponents(&exps), c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.arity()))
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = MultiPoly::zero(&self.ring);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// In-place `self += other`; panics on ring mismatch.
    pub fn add_assign_ref(&mut self, other: &MultiPoly) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// In-place `self += a * b`; the accumulation kernel of series products.
    pub fn add_product(&mut self, a: &MultiPoly, b: &MultiPoly) {
        assert!(same_ring(&a.ring, &b.ring), "ring mismatch");
        assert!(same_ring(&self.ring, &a.ring), "ring mismatch");
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                self.add_term(m1.mul(m2), c1 * c2);
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.ring);
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

    /// Total weight if homogeneous, otherwise the first offending pair.
    pub fn weight(&self) -> Weight {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Weight::Zero;
        };
        let w0 = first.weight(&self.ring);
        for m in iter {
            let w = m.weight(&self.ring);
            if w != w0 {
                return Weight::Inhomogeneous {
                    first: (first.clone(), w0),
                    second: (m.clone(), w),
                };
            }
        }
        Weight::Homogeneous(w0)
    }

    pub fn degree_in(&self, idx: usize) -> u16 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Partial derivative with respect to the variable at `idx`.
    pub fn partial(&self, idx: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[idx] -= 1;
            out.add_term(dm, c * &Rational::from(e as i64));
        }
        out
    }

    /// Ring homomorphism into `target`: bound variables are replaced by their
    /// images, unbound ones map to the same-named variable of `target`.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, MultiPoly>,
        target: &RingRef,
    ) -> Result<MultiPoly> {
        let mut images = Vec::with_capacity(self.ring.arity());
        for v in &self.ring.vars {
            let img = match bindings.get(&v.name) {
                Some(p) => {
                    if !same_ring(p.ring(), target) {
                        return Err(Error::RingMismatch);
                    }
                    p.clone()
                }
                None => MultiPoly::var(target, &v.name)
                    .map_err(|_| Error::UnboundVariable(v.name.clone()))?,
            };
            images.push(img);
        }
        Ok(self.substitute_images(&images, target))
    }

    /// Substitution by position: variable `i` goes to `images[i]`.
    pub fn substitute_images(&self, images: &[MultiPoly], target: &RingRef) -> MultiPoly {
        assert_eq!(images.len(), self.ring.arity(), "image arity");
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(target), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Re-expresses the polynomial in a ring that declares (at least) the
    /// same variable names.
    pub fn embed(&self, target: &RingRef) -> Result<MultiPoly> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| target.require(&v.name))
            .collect::<Result<_>>()?;
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.arity()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial::from_exponents(&exps), c.clone());
        }
        Ok(out)
    }

    /// Full numeric evaluation; every occurring variable must be bound.
    pub fn evaluate(&self, values: &HashMap<String, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.ring.vars[i].name;
                let x = values
                    .get(name)
                    .ok_or_else(|| Error::UnboundVariable(name.clone()))?;
                t *= x.pow(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Monomial, &Rational) -> Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }

    /// Canonical plain-text rendering, leading (largest) term first.
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    /// LaTeX rendering for math mode, same term order as [`to_text`].
    ///
    /// [`to_text`]: MultiPoly::to_text
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.render_monomial(m, latex);
            let coeff = if latex {
                if abs.is_integer() {
                    abs.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
                }
            } else {
                abs.to_string()
            };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&coeff),
                (false, true) => out.push_str(&mono),
                (false, false) if latex => {
                    out.push_str(&coeff);
                    out.push(' ');
                    out.push_str(&mono);
                }
                (false, false) => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    fn render_monomial(&self, m: &Monomial, latex: bool) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = &self.ring.vars[i].name;
            let base = if latex {
                latex_name(name)
            } else {
                name.clone()
            };
            parts.push(match (e, latex) {
                (1, _) => base,
                (_, true) => format!("{base}^{{{e}}}"),
                (_, false) => format!("{base}^{e}"),
            });
        }
        parts.join(if latex { " " } else { "*" })
    }
}

fn latex_name(name: &str) -> String {
    const GREEK: [&str; 6] = ["alpha", "beta", "gamma", "lambda", "sigma", "tau"];
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    let (stem, digits) = name.split_at(split);
    let stem = if GREEK.contains(&stem) {
        format!("\\{stem}")
    } else {
        stem.to_owned()
    };
    if digits.is_empty() {
        stem
    } else {
        format!("{stem}_{{{digits}}}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_text())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Serialized shape: variable list plus terms in ascending monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub vars: Vec<VarSpec>,
    pub terms: Vec<(Vec<u16>, Rational)>,
}

impl From<&MultiPoly> for PolyRecord {
    fn from(p: &MultiPoly) -> Self {
        PolyRecord {
            vars: p.ring.vars.clone(),
            terms: p
                .terms
                .iter()
                .map(|(m, c)| (m.0.to_vec(), c.clone()))
                .collect(),
        }
    }
}

impl MultiPoly {
    /// Rebuilds a polynomial from its record, in `ring` (which must declare
    /// the same variables in the same order).
    pub fn from_record(ring: &RingRef, rec: &PolyRecord) -> Result<MultiPoly> {
        if rec.vars != ring.vars {
            return Err(Error::RingMismatch);
        }
        if rec.terms.iter().any(|(e, _)| e.len() != ring.arity()) {
            return Err(Error::Parse("exponent vector arity".into()));
        }
        Ok(MultiPoly::from_terms(ring, rec.terms.iter().cloned()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> RingRef {
        Ring::with_vars(&[("x", 1), ("y", 1)]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = xy();
        let x = MultiPoly::var(&r, "x").unwrap();
        let y = MultiPoly::var(&r, "y").unwrap();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.to_text(), "x^2 - y^2");
    }

    #[test]
    fn zero_annihilates() {
        let r = xy();
        let x = MultiPoly::var(&r, "x").unwrap();
        let p = &(&x + &MultiPoly::one(&r)).pow(3) * &MultiPoly::zero(&r);
        assert!(p.is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = xy();
        let r2 = Ring::with_vars(&[("x", 1)]).unwrap();
        let p = MultiPoly::var(&r1, "x").unwrap();
        let q = MultiPoly::var(&r2, "x").unwrap();
        assert_eq!(p.checked_mul(&q), Err(Error::RingMismatch));
        assert_eq!(p.checked_add(&q), Err(Error::RingMismatch));
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(matches!(
            Ring::with_vars(&[("x", 1), ("x", 2)]),
            Err(Error::DuplicateVariable(_))
        ));
    }

    #[test]
    fn weight_report() {
        let r = Ring::with_vars(&[("a1", 2), ("a2", 4)]).unwrap();
        let a1 = MultiPoly::var(&r, "a1").unwrap();
        let a2 = MultiPoly::var(&r, "a2").unwrap();
        let p = &a1.pow(2) + &a2.scale(&Rational::from(12));
        assert_eq!(p.weight(), Weight::Homogeneous(4));
        match (&a1 + &a2).weight() {
            Weight::Inhomogeneous { first, second } => {
                let mut ws = [first.1, second.1];
                ws.sort();
                assert_eq!(ws, [2, 4]);
            }
            w => panic!("expected inhomogeneous, got {w:?}"),
        }
        assert_eq!(MultiPoly::zero(&r).weight(), Weight::Zero);
    }

    #[test]
    fn evaluate_requires_bindings() {
        let r = xy();
        let p = &MultiPoly::var(&r, "x").unwrap() * &MultiPoly::var(&r, "y").unwrap();
        let mut vals = HashMap::new();
        vals.insert("x".to_owned(), Rational::from(3));
        assert_eq!(p.evaluate(&vals), Err(Error::UnboundVariable("y".into())));
        vals.insert("y".to_owned(), Rational::new(1, 2));
        assert_eq!(p.evaluate(&vals).unwrap(), Rational::new(3, 2));
    }

    #[test]
    fn latex_rendering() {
        let r = Ring::with_vars(&[("a1", 2), ("a2", 4), ("alpha", 1)]).unwrap();
        let a1 = MultiPoly::var(&r, "a1").unwrap();
        let al = MultiPoly::var(&r, "alpha").unwrap();
        let p = &a1.pow(2).scale(&Rational::new(3, 8)) - &al;
        assert_eq!(p.to_latex(), "\\frac{3}{8} a_{1}^{2} - \\alpha");
        assert_eq!(p.to_text(), "3/8*a1^2 - alpha");
    }

    #[test]
    fn record_roundtrip() {
        let r = xy();
        let p = &MultiPoly::var(&r, "x").unwrap().scale(&Rational::new(-2, 3))
            + &MultiPoly::one(&r);
        let rec = PolyRecord::from(&p);
        assert_eq!(MultiPoly::from_record(&r, &rec).unwrap(), p);
    }
}
