//! Two-valued groups obtained as modulus squares.
//!
//! On a finite abelian group `G` the classes `[g] = {g, -g}` multiply by
//! `[g] * [h] = {[g + h], [g - h]}`. On the formal group of the Buchstaber
//! law the same construction, written in `x = -u^2`, `y = -v^2`, yields a
//! pair of series `Ψ1 = z1 + z2`, `Ψ2 = z1 z2` whose roots `z1, z2` are the
//! two values of the product.

use std::fmt;

use crate::buchstaber::{two_valued_log, FormalGroupLaw, GenusParams};
use crate::exactcore::{Monomial, MultiPoly, Rational, RingRef};
use crate::report::{Report, Verification};
use crate::series::{Series1, Series2};
use crate::{Error, Result};

/// A product of cyclic groups `Z/n1 × Z/n2 × ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicProduct {
    moduli: Vec<u32>,
}

impl CyclicProduct {
    pub fn new(moduli: &[u32]) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::Precondition("group moduli must be positive".into()));
        }
        Ok(CyclicProduct {
            moduli: moduli.to_vec(),
        })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }

    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |k| {
                        let mut e = prefix.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        out
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.moduli
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&m, (&x, &y))| ((x as u64 + y as u64) % m as u64) as u32)
            .collect()
    }

    fn neg(&self, a: &[u32]) -> Vec<u32> {
        self.moduli
            .iter()
            .zip(a)
            .map(|(&m, &x)| (m - x) % m)
            .collect()
    }

    /// The class `{g, -g}` of an element, reduced into range first.
    pub fn class(&self, g: &[u32]) -> Result<CosetClass> {
        if g.len() != self.moduli.len() {
            return Err(Error::GroupMismatch);
        }
        let g: Vec<u32> = g.iter().zip(&self.moduli).map(|(&x, &m)| x % m).collect();
        let n = self.neg(&g);
        Ok(CosetClass {
            group: self.clone(),
            rep: g.min(n),
        })
    }

    pub fn neutral(&self) -> CosetClass {
        self.class(&vec![0; self.moduli.len()]).expect("right arity")
    }

    /// All classes, sorted by representative.
    pub fn classes(&self) -> Vec<CosetClass> {
        let mut out: Vec<CosetClass> = self
            .elements()
            .iter()
            .map(|g| self.class(g).expect("right arity"))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for CyclicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// The orbit `{g, -g}`, stored by its smaller representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetClass {
    group: CyclicProduct,
    rep: Vec<u32>,
}

impl CosetClass {
    pub fn representative(&self) -> &[u32] {
        &self.rep
    }

    pub fn group(&self) -> &CyclicProduct {
        &self.group
    }
}

impl fmt::Display for CosetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.len() == 1 {
            write!(f, "[{}]", self.rep[0])
        } else {
            let parts: Vec<String> = self.rep.iter().map(u32::to_string).collect();
            write!(f, "[({})]", parts.join(","))
        }
    }
}

/// `[g] * [h] = {[g + h], [g - h]}` as a sorted pair.
pub fn coset_product(a: &CosetClass, b: &CosetClass) -> Result<[CosetClass; 2]> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    let g = &a.group;
    let sum = g.class(&g.add(&a.rep, &b.rep))?;
    let diff = g.class(&g.add(&a.rep, &g.neg(&b.rep)))?;
    let mut pair = [sum, diff];
    pair.sort();
    Ok(pair)
}

/// Multiplies every element of a multiset by `c` on the right.
fn multiset_times(ms: &[CosetClass], c: &CosetClass) -> Result<Vec<CosetClass>> {
    let mut out = Vec::with_capacity(2 * ms.len());
    for a in ms {
        out.extend(coset_product(a, c)?);
    }
    out.sort();
    Ok(out)
}

fn times_multiset(c: &CosetClass, ms: &[CosetClass]) -> Result<Vec<CosetClass>> {
    let mut out = Vec::with_capacity(2 * ms.len());
    for a in ms {
        out.extend(coset_product(c, a)?);
    }
    out.sort();
    Ok(out)
}

fn show(ms: &[CosetClass]) -> String {
    let parts: Vec<String> = ms.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Exhaustive check of the two-valued group axioms on all classes.
pub fn verify_coset_axioms(group: &CyclicProduct) -> Result<Report> {
    let classes = group.classes();
    let e = group.neutral();
    let mut r = Report::new();
    let label = |what: &str| format!("{what} on {group}");

    let mut assoc = Verification::holds(label("associativity"), classes.len());
    let mut comm = Verification::holds(label("commutativity"), classes.len());
    'outer: for a in &classes {
        for b in &classes {
            let ab = coset_product(a, b)?;
            let ba = coset_product(b, a)?;
            if ab != ba && comm.is_ok() {
                comm = Verification::fails(label("commutativity"), classes.len(), format!("{a} * {b}"), show(&ab), show(&ba));
            }
            for c in &classes {
                let left = multiset_times(&ab, c)?;
                let right = times_multiset(a, &coset_product(b, c)?)?;
                if left != right {
                    assoc = Verification::fails(
                        label("associativity"),
                        classes.len(),
                        format!("{a} * {b} * {c}"),
                        show(&left),
                        show(&right),
                    );
                    break 'outer;
                }
            }
        }
    }
    r.push(assoc);
    r.push(comm);

    let mut neutral = Verification::holds(label("neutral"), classes.len());
    let mut inverse = Verification::holds(label("inverse"), classes.len());
    for a in &classes {
        let ea = coset_product(&e, a)?;
        if ea != [a.clone(), a.clone()] && neutral.is_ok() {
            neutral = Verification::fails(label("neutral"), classes.len(), a.to_string(), show(&ea), show(&[a.clone(), a.clone()]));
        }
        let aa = coset_product(a, a)?;
        if !aa.contains(&e) && inverse.is_ok() {
            inverse = Verification::fails(label("inverse"), classes.len(), a.to_string(), show(&aa), "contains [0]");
        }
    }
    r.push(neutral);
    r.push(inverse);
    Ok(r)
}

/// Rows `(a, b, a * b)` over all ordered pairs of classes.
pub fn cayley_table(group: &CyclicProduct) -> Vec<(CosetClass, CosetClass, [CosetClass; 2])> {
    let classes = group.classes();
    let mut rows = Vec::with_capacity(classes.len() * classes.len());
    for a in &classes {
        for b in &classes {
            rows.push((a.clone(), b.clone(), coset_product(a, b).expect("same group")));
        }
    }
    rows
}

/// `Ψ1`, `Ψ2` as series in `x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoValuedLaw {
    pub psi1: Series2,
    pub psi2: Series2,
    pub order: usize,
}

impl TwoValuedLaw {
    /// `Ψ1`, `Ψ2` symmetric, and `Ψ2 ≡ (x - y)^2` modulo degree 3.
    pub fn check_shape(&self) -> Report {
        let ring = self.psi1.ring();
        let mut r = Report::new();
        r.push(Verification::series2_eq("Psi1 symmetric", self.order, &self.psi1, &self.psi1.swap()));
        r.push(Verification::series2_eq("Psi2 symmetric", self.order, &self.psi2, &self.psi2.swap()));
        let one = MultiPoly::one(ring);
        let square = Series2::from_terms(
            ring,
            2,
            [(2, 0, one.clone()), (1, 1, one.scale(&(-2).into())), (0, 2, one)],
        );
        r.push(Verification::series2_eq(
            "Psi2 = (x-y)^2 mod degree 3",
            2,
            &self.psi2.truncate(2.min(self.order)),
            &square,
        ));
        r
    }
}

/// `z1 = -F(u,v)^2`, `z2 = -F(u,-v)^2`, read off in `x = -u^2`, `y = -v^2`.
/// The law must be known through total degree `2n + 1`.
pub fn formal_psi(fgl: &FormalGroupLaw, n: usize) -> Result<TwoValuedLaw> {
    let m = 2 * n + 1;
    if fgl.order < m {
        return Err(Error::Precondition(format!(
            "two-valued series to degree {n} need the law through degree {m}, have {}",
            fgl.order
        )));
    }
    let f = fgl.law.truncate(m);
    let f_bar = f.rescale(&Rational::one(), &Rational::from(-1));
    let z1 = -&(&f * &f);
    let z2 = -&(&f_bar * &f_bar);
    let minus = Rational::from(-1);
    let psi1 = (&z1 + &z2).deflate_squares(&minus, &minus)?;
    let psi2 = (&z1 * &z2).deflate_squares(&minus, &minus)?;
    Ok(TwoValuedLaw {
        psi1: psi1.truncate(n),
        psi2: psi2.truncate(n),
        order: n,
    })
}

/// `Ψ1 = N1 / c`, `Ψ2 = N2 / c` as exact polynomials in `a, x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiRational {
    base: RingRef,
    ring: RingRef,
    pub numerator1: MultiPoly,
    pub numerator2: MultiPoly,
    pub denominator: MultiPoly,
}

struct Xyz {
    ring: RingRef,
    a: [MultiPoly; 3],
    x: MultiPoly,
    y: MultiPoly,
}

impl Xyz {
    fn new(params: &GenusParams, extra: &[&str]) -> Result<Self> {
        let names: Vec<(&str, u32)> = extra.iter().map(|&n| (n, 0)).collect();
        let ring = params.ring().extended(&names)?;
        let a = [
            params.a1().embed(&ring)?,
            params.a2().embed(&ring)?,
            params.a3().embed(&ring)?,
        ];
        let x = MultiPoly::var(&ring, "x")?;
        let y = MultiPoly::var(&ring, "y")?;
        Ok(Xyz { ring, a, x, y })
    }

    fn k(&self, c: i64) -> MultiPoly {
        MultiPoly::constant(&self.ring, c)
    }

    /// `sum c * a^ea * x^i * y^j`.
    fn sum(&self, terms: &[(i64, Option<usize>, u32, u32)]) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.ring);
        for &(c, a, i, j) in terms {
            let mut t = &(&self.k(c) * &self.x.pow(i)) * &self.y.pow(j);
            if let Some(idx) = a {
                t = &t * &self.a[idx];
            }
            acc = &acc + &t;
        }
        acc
    }
}

pub fn psi_rational(params: &GenusParams) -> PsiRational {
    let p = Xyz::new(params, &["x", "y"]).expect("x, y are fresh names");
    let numerator1 = p.sum(&[
        (2, None, 1, 0),
        (2, None, 0, 1),
        (4, Some(0), 1, 1),
        (2, Some(1), 2, 1),
        (2, Some(1), 1, 2),
        (4, Some(2), 2, 2),
    ]);
    let numerator2 = p.sum(&[(1, None, 2, 0), (-2, None, 1, 1), (1, None, 0, 2)]);
    let a1a3 = &p.a[0] * &p.a[2];
    let denominator = &(&p.sum(&[
        (1, None, 0, 0),
        (-2, Some(1), 1, 1),
        (-4, Some(2), 2, 1),
        (-4, Some(2), 1, 2),
    ]) + &(&p.a[1].pow(2) * &p.sum(&[(1, None, 2, 2)])))
        - &(&a1a3 * &p.sum(&[(4, None, 2, 2)]));
    PsiRational {
        base: params.ring().clone(),
        ring: p.ring,
        numerator1,
        numerator2,
        denominator,
    }
}

impl PsiRational {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// The polynomial in `a, x, y` as a series in `x, y` over `a`.
    pub fn to_series(&self, p: &MultiPoly, order: usize) -> Series2 {
        let base_arity = self.base.arity();
        let mut out = Series2::zero(&self.base, order);
        for (m, c) in p.terms() {
            let e = m.exponents();
            let (i, j) = (e[base_arity] as usize, e[base_arity + 1] as usize);
            if i + j > order {
                continue;
            }
            let coeff = MultiPoly::monomial(&self.base, Monomial::from_exponents(&e[..base_arity]), c.clone());
            let mut slot = out.coeff(i, j).clone();
            slot.add_assign_ref(&coeff);
            out.set_coeff(i, j, slot);
        }
        out
    }

    pub fn expand(&self, order: usize) -> TwoValuedLaw {
        let inv = self.to_series(&self.denominator, order).inv().expect("c(0, 0) = 1");
        TwoValuedLaw {
            psi1: &self.to_series(&self.numerator1, order) * &inv,
            psi2: &self.to_series(&self.numerator2, order) * &inv,
            order,
        }
    }
}

/// Expands the law, forms the modulus square, and compares with the exact
/// rational expressions through total degree `n` in `x, y`.
pub fn verify_psi_agreement(params: &GenusParams, n: usize) -> Result<Report> {
    let fgl = crate::buchstaber::fgl_bc(params, 2 * n + 1);
    let series = formal_psi(&fgl, n)?;
    let exact = psi_rational(params).expand(n);
    let mut r = series.check_shape();
    r.push(Verification::series2_eq("Psi1 series = N1/c", n, &series.psi1, &exact.psi1));
    r.push(Verification::series2_eq("Psi2 series = N2/c", n, &series.psi2, &exact.psi2));
    Ok(r)
}

/// `(x + y + z - a2 xyz)^2 - 4(1 + a3 xyz)(xy + yz + xz + a1 xyz)`.
pub fn buchstaber_polynomial(params: &GenusParams) -> Result<(RingRef, MultiPoly)> {
    let p = Xyz::new(params, &["x", "y", "z"])?;
    let z = MultiPoly::var(&p.ring, "z")?;
    let xyz = &(&p.x * &p.y) * &z;
    let lin = &(&(&p.x + &p.y) + &z) - &(&p.a[1] * &xyz);
    let sym2 = &(&(&(&p.x * &p.y) + &(&p.y * &z)) + &(&p.x * &z)) + &(&p.a[0] * &xyz);
    let cubic = &(&p.k(1) + &(&p.a[2] * &xyz)) * &sym2;
    Ok((p.ring.clone(), &lin.pow(2) - &cubic.scale(&4.into())))
}

/// The exact identity `c (z^2 - Ψ1 z + Ψ2) = B_a(z; x, y)`, with a grading
/// check on `B_a` when the parameters are graded, and the `z^2`-coefficient compared to the factored form
/// `(1 - a2 xy)^2 - 4 a3 xy (x + y) - 4 a1 a3 x^2 y^2`.
pub fn verify_buchstaber_polynomial(params: &GenusParams) -> Result<Report> {
    let psi = psi_rational(params);
    let (ring, b) = buchstaber_polynomial(params)?;
    let z = MultiPoly::var(&ring, "z")?;
    let c = psi.denominator.embed(&ring)?;
    let n1 = psi.numerator1.embed(&ring)?;
    let n2 = psi.numerator2.embed(&ring)?;
    let lhs = &(&(&c * &z.pow(2)) - &(&n1 * &z)) + &n2;
    let mut r = Report::new();
    r.push(Verification::poly_eq("c (z^2 - Psi1 z + Psi2) = B_a", &lhs, &b));

    let p = Xyz::new(params, &["x", "y", "z"])?;
    let xy = &p.x * &p.y;
    let factored = &(&(&p.k(1) - &(&p.a[1] * &xy)).pow(2)
        - &(&(&p.a[2] * &xy) * &(&p.x + &p.y)).scale(&4.into()))
        - &(&(&p.a[0] * &p.a[2]) * &xy.pow(2)).scale(&4.into());
    let z2 = z_coefficient(&b, ring.require("z")?, 2);
    r.push(Verification::poly_eq("[z^2] B_a = factored denominator", &z2, &factored));

    if params.is_graded() {
        r.push(grading_check(&b, &ring));
    }
    Ok(r)
}

fn z_coefficient(p: &MultiPoly, zi: usize, k: u16) -> MultiPoly {
    let terms = p.terms().filter(|(m, _)| m.exponents()[zi] == k).map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        e[zi] = 0;
        (e, c.clone())
    });
    MultiPoly::from_terms(p.ring(), terms)
}

/// With `x, y, z` of weight 2 and `a_i` of weight `-2i`, every monomial of
/// `B_a` has the same weight.
fn grading_check(b: &MultiPoly, ring: &RingRef) -> Verification {
    let w: Vec<i64> = ring
        .vars()
        .iter()
        .map(|v| match v.name.as_str() {
            "a1" => -2,
            "a2" => -4,
            "a3" => -6,
            "x" | "y" | "z" => 2,
            _ => 0,
        })
        .collect();
    let weights: Vec<i64> = b
        .terms()
        .map(|(m, _)| m.exponents().iter().zip(&w).map(|(&e, &k)| e as i64 * k).sum())
        .collect();
    match weights.iter().find(|&&x| x != weights[0]) {
        None => Verification::holds("B_a homogeneous", 0),
        Some(other) => Verification::fails("B_a homogeneous", 0, "weight", weights[0].to_string(), other.to_string()),
    }
}

/// `z± = B^{-1}((√B(s^2) ± √B(t^2))^2)` have `z+ + z- = Ψ1(s^2, t^2)` and
/// `z+ z- = Ψ2(s^2, t^2)` through total degree `n` in `s, t`.
pub fn verify_branch_sums(params: &GenusParams, n: usize) -> Result<Report> {
    let ring = params.ring();
    let m = n.div_ceil(2) + 2;
    let tvl = two_valued_log(params, m)?;
    // √B(s^2) = s β(s^2) with β = √(B(x)/x) on the branch β(0) = 1
    let beta = tvl.b.div_x_pow(1)?.sqrt()?;
    if *beta.coeff(0) != MultiPoly::one(ring) {
        return Err(Error::Inconsistent("square root of B took the wrong branch".into()));
    }
    let root = beta.substitute_monomial(&Rational::one(), 2).mul_x_pow(1);
    let b_inv = tvl.b.revert()?;
    let h = b_inv.substitute_monomial(&Rational::one(), 2);
    let z_plus = Series2::compose_sum(&h, &root, &root)?;
    let z_minus = Series2::compose_sum(&h, &root, &-&root)?;
    let order = z_plus.order().min(n);

    let exact = psi_rational(params).expand(n / 2 + 1);
    let psi1 = exact.psi1.inflate_squares();
    let psi2 = exact.psi2.inflate_squares();
    let mut r = Report::new();
    r.push(Verification::series2_eq("z+ + z- = Psi1", order, &(&z_plus + &z_minus), &psi1));
    r.push(Verification::series2_eq("z+ z- = Psi2", order, &(&z_plus * &z_minus), &psi2));

    let s = Series1::x(ring, order);
    let on_axis = z_plus.substitute(&s, &Series1::zero(ring, order))?;
    let on_axis_minus = z_minus.substitute(&s, &Series1::zero(ring, order))?;
    let s2 = s.pow(2);
    r.push(Verification::series_eq("y = 0 gives z+ = x", order, &on_axis, &s2));
    r.push(Verification::series_eq("y = 0 gives z- = x", order, &on_axis_minus, &s2));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchstaber::fgl_bc;

    #[test]
    fn small_cyclic_products() {
        let g = CyclicProduct::cyclic(5).unwrap();
        let p = coset_product(&g.class(&[1]).unwrap(), &g.class(&[2]).unwrap()).unwrap();
        assert_eq!(p, [g.class(&[1]).unwrap(), g.class(&[3]).unwrap()]);
        let a = g.class(&[2]).unwrap();
        assert_eq!(coset_product(&g.neutral(), &a).unwrap(), [a.clone(), a]);
        assert_eq!(g.classes().len(), 3);
        let h = CyclicProduct::cyclic(6).unwrap();
        assert_eq!(
            coset_product(&g.neutral(), &h.neutral()),
            Err(Error::GroupMismatch)
        );
    }

    #[test]
    fn additive_law_gives_elementary_psi() {
        let p = GenusParams::numeric(0.into(), 0.into(), 0.into());
        let psi = formal_psi(&fgl_bc(&p, 9), 4).unwrap();
        let exact = psi_rational(&p).expand(4);
        assert_eq!(psi, exact);
        let one = MultiPoly::one(p.ring());
        let two = one.scale(&2.into());
        assert_eq!(psi.psi1, Series2::from_terms(p.ring(), 4, [(1, 0, two.clone()), (0, 1, two)]));
    }

    #[test]
    fn insufficient_law_order_is_rejected() {
        let p = GenusParams::symbolic();
        assert!(formal_psi(&fgl_bc(&p, 8), 4).is_err());
    }

    #[test]
    fn psi_low_degree_terms() {
        let p = GenusParams::symbolic();
        let psi = formal_psi(&fgl_bc(&p, 7), 3).unwrap();
        let a1 = MultiPoly::var_at(p.ring(), 0);
        assert_eq!(*psi.psi1.coeff(1, 1), a1.scale(&4.into()));
        assert!(psi.check_shape().holds());
    }

    #[test]
    fn exact_identities_symbolic() {
        let p = GenusParams::symbolic();
        let r = verify_buchstaber_polynomial(&p).unwrap();
        assert!(r.holds(), "{:?}", r.first_failure());
        let r = verify_psi_agreement(&p, 5).unwrap();
        assert!(r.holds(), "{:?}", r.first_failure());
        let r = verify_branch_sums(&p, 8).unwrap();
        assert!(r.holds(), "{:?}", r.first_failure());
    }

    #[test]
    fn coset_axioms_small_groups() {
        for g in [CyclicProduct::cyclic(12).unwrap(), CyclicProduct::new(&[2, 4]).unwrap()] {
            let r = verify_coset_axioms(&g).unwrap();
            assert!(r.holds(), "{:?}", r.first_failure());
        }
    }
}
