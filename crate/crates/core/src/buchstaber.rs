//! The Buchstaber formal group law and its genus.
//!
//! Everything is driven by the quartic-in-`t^2` polynomial
//! `Q(t) = 1 - a1 t^2 + a2 t^4 - a3 t^6`: the logarithm is
//! `g(u) = ∫ Q^{-1/2}` and the exponential `f` is its reversion.

use crate::exactcore::{MultiPoly, Rational, Ring, RingRef};
use crate::report::{Report, Verification};
use crate::series::{Series1, Series2};
use crate::table::{Generator, GenusTable};
use crate::weierstrass::WpSeries;
use crate::{Error, Result};

/// The parameters `a1, a2, a3` of the law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusParams {
    a1: MultiPoly,
    a2: MultiPoly,
    a3: MultiPoly,
    /// Flips the sign of the `a1` term in the logarithm's integrand. Only
    /// used to exercise failure reporting.
    q_sign_fault: bool,
}

impl GenusParams {
    /// The coefficient ring `Q[a1, a2, a3]` with weights 2, 4, 6.
    pub fn standard_ring() -> RingRef {
        Ring::with_vars(&[("a1", 2), ("a2", 4), ("a3", 6)]).expect("distinct names")
    }

    pub fn new(a1: MultiPoly, a2: MultiPoly, a3: MultiPoly) -> Result<Self> {
        if !crate::exactcore::same_ring(a1.ring(), a2.ring())
            || !crate::exactcore::same_ring(a1.ring(), a3.ring())
        {
            return Err(Error::RingMismatch);
        }
        Ok(GenusParams {
            a1,
            a2,
            a3,
            q_sign_fault: false,
        })
    }

    /// Fully symbolic parameters.
    pub fn symbolic() -> Self {
        let r = Self::standard_ring();
        let v = |i| MultiPoly::var_at(&r, i);
        GenusParams::new(v(0), v(1), v(2)).expect("one ring")
    }

    /// Symbolic `a1, a2` with `a3 = 0`.
    pub fn without_a3() -> Self {
        Self::symbolic().specialize(None, None, Some(Rational::zero()))
    }

    /// Rational values for all three parameters, kept in the standard ring.
    pub fn numeric(a1: Rational, a2: Rational, a3: Rational) -> Self {
        Self::symbolic().specialize(Some(a1), Some(a2), Some(a3))
    }

    /// Replaces the chosen parameters by rational constants.
    /// True when every parameter is a polynomial with integer coefficients,
    /// which is when the theta values are expected to be integral.
    pub fn is_integral(&self) -> bool {
        self.a1.is_integral() && self.a2.is_integral() && self.a3.is_integral()
    }

    pub fn specialize(&self, a1: Option<Rational>, a2: Option<Rational>, a3: Option<Rational>) -> Self {
        let ring = self.ring().clone();
        let pick = |old: &MultiPoly, new: Option<Rational>| match new {
            Some(c) => MultiPoly::constant(&ring, c),
            None => old.clone(),
        };
        GenusParams {
            a1: pick(&self.a1, a1),
            a2: pick(&self.a2, a2),
            a3: pick(&self.a3, a3),
            q_sign_fault: self.q_sign_fault,
        }
    }

    /// A copy whose logarithm integrand has the wrong sign on `a1`.
    pub fn with_injected_q_sign_fault(&self) -> Self {
        GenusParams {
            q_sign_fault: true,
            ..self.clone()
        }
    }

    pub fn has_injected_fault(&self) -> bool {
        self.q_sign_fault
    }

    pub fn ring(&self) -> &RingRef {
        self.a1.ring()
    }

    pub fn a1(&self) -> &MultiPoly {
        &self.a1
    }

    pub fn a2(&self) -> &MultiPoly {
        &self.a2
    }

    pub fn a3(&self) -> &MultiPoly {
        &self.a3
    }

    /// `(-a1, a2, -a3)`, which turns `Q(t)` into `Q(it)`.
    pub fn reflected(&self) -> Self {
        GenusParams {
            a1: -&self.a1,
            a2: self.a2.clone(),
            a3: -&self.a3,
            q_sign_fault: self.q_sign_fault,
        }
    }

    /// `Q(t) = 1 - a1 t^2 + a2 t^4 - a3 t^6` as a series of the given order.
    pub fn q_series(&self, order: usize) -> Series1 {
        self.quartic(order, false)
    }

    /// `1 + a1 t^2 + a2 t^4 + a3 t^6`.
    pub fn r_series(&self, order: usize) -> Series1 {
        self.reflected().q_series(order)
    }

    fn quartic(&self, order: usize, honour_fault: bool) -> Series1 {
        let ring = self.ring();
        let zero = MultiPoly::zero(ring);
        let a1 = if honour_fault && self.q_sign_fault {
            self.a1.clone()
        } else {
            -&self.a1
        };
        let coeffs = [
            MultiPoly::one(ring),
            zero.clone(),
            a1,
            zero.clone(),
            self.a2.clone(),
            zero,
            -&self.a3,
        ];
        Series1::from_poly_coeffs(ring, &coeffs, order)
    }

    pub fn is_a3_zero(&self) -> bool {
        self.a3.is_zero()
    }

    /// True when each `a_i` is zero or its own variable, so that the
    /// weight grading survives.
    pub fn is_graded(&self) -> bool {
        [&self.a1, &self.a2, &self.a3]
            .into_iter()
            .zip(["a1", "a2", "a3"])
            .all(|(a, name)| a.is_zero() || MultiPoly::var(self.ring(), name).is_ok_and(|v| &v == a))
    }
}

/// Where a pair of Weierstrass invariants came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantSource {
    FromA,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticParams {
    pub g2: MultiPoly,
    pub g3: MultiPoly,
    pub source: InvariantSource,
}

impl EllipticParams {
    pub fn free(g2: MultiPoly, g3: MultiPoly) -> Self {
        EllipticParams {
            g2,
            g3,
            source: InvariantSource::Free,
        }
    }

    /// `g2 = 4(a1^2/3 - a2)`, `g3 = 4(a1 a2/3 - 2 a1^3/27 - a3)`.
    pub fn from_a(p: &GenusParams) -> Self {
        let a1 = &p.a1;
        let g2 = (&a1.pow(2).scale(&Rational::new(1, 3)) - &p.a2).scale(&4.into());
        let a1a2 = (a1 * &p.a2).scale(&Rational::new(1, 3));
        let cube = a1.pow(3).scale(&Rational::new(2, 27));
        let g3 = (&(&a1a2 - &cube) - &p.a3).scale(&4.into());
        EllipticParams {
            g2,
            g3,
            source: InvariantSource::FromA,
        }
    }

    /// The same lattice with `g3` replaced by `-g3`.
    pub fn negated_g3(&self) -> Self {
        EllipticParams {
            g2: self.g2.clone(),
            g3: -&self.g3,
            source: self.source,
        }
    }

    pub fn wp(&self, order: usize) -> WpSeries {
        WpSeries::new(&self.g2, &self.g3, order)
    }
}

/// `g(u) = ∫_0^u Q(t)^{-1/2} dt`, known through `u^n`.
pub fn log_bc(params: &GenusParams, n: usize) -> Series1 {
    assert!(n >= 1, "order must be at least 1");
    let q = params.quartic(n - 1, true);
    q.pow_rational(&Rational::new(-1, 2))
        .expect("Q(0) = 1")
        .integrate()
}

/// The exponential, obtained by reverting [`log_bc`].
pub fn exp_bc(params: &GenusParams, n: usize) -> Series1 {
    log_bc(params, n).revert().expect("logarithm begins with u")
}

/// `u (P(u) + a1 u^2 / 3)^{-1/2}` where `P = u^2 wp(u; g2, -g3)` with the
/// invariants derived from `a`.
pub fn exp_bc_closed_form(params: &GenusParams, n: usize) -> Series1 {
    assert!(n >= 1, "order must be at least 1");
    let ell = EllipticParams::from_a(params).negated_g3();
    let p = ell.wp(n).pole_cleared().truncate(n);
    let mut shift = Series1::zero(params.ring(), n);
    if n >= 2 {
        shift.set_coeff(2, params.a1.scale(&Rational::new(1, 3)));
    }
    (&p + &shift)
        .pow_rational(&Rational::new(-1, 2))
        .expect("constant term 1")
        .mul_x_pow(1)
}

/// A one-dimensional formal group law given by its logarithm.
#[derive(Debug, Clone)]
pub struct FormalGroupLaw {
    pub law: Series2,
    pub exponential: Series1,
    pub logarithm: Series1,
    pub order: usize,
}

impl FormalGroupLaw {
    /// `exp(log(u) + log(v))`.
    pub fn from_logarithm(logarithm: Series1) -> Result<Self> {
        let exponential = logarithm.revert()?;
        let law = Series2::compose_sum(&exponential, &logarithm, &logarithm)?;
        let order = law.order();
        Ok(FormalGroupLaw {
            law,
            exponential,
            logarithm,
            order,
        })
    }

    pub fn ring(&self) -> &RingRef {
        self.law.ring()
    }

    pub fn check_unit(&self) -> Verification {
        let t = Series1::x(self.ring(), self.order);
        let zero = Series1::zero(self.ring(), self.order);
        let on_axis = self.law.substitute(&t, &zero).expect("same ring");
        Verification::series_eq("unit F(u,0) = u", self.order, &on_axis, &t)
    }

    pub fn check_commutativity(&self) -> Verification {
        Verification::series2_eq("commutativity", self.order, &self.law, &self.law.swap())
    }

    pub fn check_inverse(&self) -> Verification {
        let t = Series1::x(self.ring(), self.order);
        let anti = self.law.substitute(&t, &-&t).expect("same ring");
        Verification::series_zero("inverse F(u,-u) = 0", self.order, &anti)
    }

    /// `F(F(u,v),w) = F(u,F(v,w))` through total degree `order`, by
    /// restricting to the ray `(ut, vt, wt)` with `u, v, w` adjoined to the
    /// coefficient ring.
    pub fn check_associativity(&self, order: usize) -> Result<Verification> {
        let n = order.min(self.order);
        let big = self.ring().extended(&[("u", 0), ("v", 0), ("w", 0)])?;
        let t = Series1::x(&big, n);
        let ray = |name: &str| -> Result<Series1> { Ok(t.mul_poly(&MultiPoly::var(&big, name)?)) };
        let (ut, vt, wt) = (ray("u")?, ray("v")?, ray("w")?);
        let law = self.law.truncate(n);
        let left = law.substitute(&law.substitute(&ut, &vt)?, &wt)?;
        let right = law.substitute(&ut, &law.substitute(&vt, &wt)?)?;
        Ok(Verification::series_eq("associativity", n, &left, &right))
    }

    pub fn check_axioms(&self, assoc_order: usize) -> Result<Report> {
        let mut r = Report::new();
        r.push(self.check_unit());
        r.push(self.check_commutativity());
        r.push(self.check_inverse());
        r.push(self.check_associativity(assoc_order)?);
        Ok(r)
    }
}

/// The law `F_Bc(u, v)` through total degree `n`.
pub fn fgl_bc(params: &GenusParams, n: usize) -> FormalGroupLaw {
    assert!(n >= 2, "order must be at least 2");
    FormalGroupLaw::from_logarithm(log_bc(params, n)).expect("logarithm begins with u")
}

/// `(g')^2 Q = 1` and `(f')^2 = Q(f)` through `u^n`.
pub fn verify_derivative_identities(params: &GenusParams, n: usize) -> Report {
    let g = log_bc(params, n + 1);
    let dg = g.diff();
    let q = params.q_series(n);
    let one = Series1::one(params.ring(), n);
    let mut r = Report::new();
    r.push(Verification::series_eq("(g')^2 Q = 1", n, &(&(&dg * &dg) * &q), &one));
    let f = exp_bc(params, n + 1);
    let df = f.diff();
    let qf = params.q_series(n).compose(&f.truncate(n)).expect("f(0) = 0");
    r.push(Verification::series_eq("(f')^2 = Q(f)", n, &(&df * &df), &qf));
    r
}

/// Compares the reverted logarithm with the Weierstrass closed form.
pub fn verify_exp_closed_form(params: &GenusParams, n: usize) -> Verification {
    Verification::series_eq(
        "exponential closed form",
        n,
        &exp_bc(params, n),
        &exp_bc_closed_form(params, n),
    )
}

/// Checks the pole-free form of the addition law,
/// `((u^2 - v^2)/F)^2 = u^2 Q(v) + v^2 Q(u) - 2uv √Q(u) √Q(v) + a3 u^2 v^2 (u^2 - v^2)^2`,
/// through total degree `n`.
pub fn verify_closed_form(params: &GenusParams, n: usize) -> Result<Verification> {
    let fgl = fgl_bc(params, n + 4);
    let ring = params.ring();
    let m = n + 3;
    let one = MultiPoly::one(ring);
    let mono = |i, j| Series2::from_terms(ring, m, [(i, j, one.clone())]);
    let diff_sq = &mono(2, 0) - &mono(0, 2);
    let quotient = diff_sq.div_exact(&fgl.law)?;
    let left = &quotient * &quotient;

    let q = params.q_series(m);
    let sq = q.sqrt()?;
    let (qu, qv) = (Series2::from_u(&q, m), Series2::from_v(&q, m));
    let (su, sv) = (Series2::from_u(&sq, m), Series2::from_v(&sq, m));
    let u2 = mono(2, 0);
    let v2 = mono(0, 2);
    let cross = &(&mono(1, 1) * &su) * &sv;
    let a3_term = (&(&mono(2, 2) * &diff_sq) * &diff_sq).map_coeffs(|c| c * &params.a3);
    let right = &(&(&(&u2 * &qv) + &(&v2 * &qu)) - &cross.scale(&2.into())) + &a3_term;
    Ok(Verification::series2_eq("pole-free addition law", n, &left, &right))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaMethod {
    Reversion,
    Recurrence,
}

/// Hurwitz coefficients `h_m` (with `f = Σ h_m u^m / m!`) of the odd
/// solution of `f'' = k1 f + k3 f^3 + k5 f^5` with `f'(0) = 1`, along with
/// the Hurwitz coefficients of `f^3` and `f^5`.
#[derive(Debug, Clone)]
pub struct HurwitzSolution {
    pub f: Vec<MultiPoly>,
    pub cube: Vec<MultiPoly>,
    pub fifth: Vec<MultiPoly>,
}

/// Runs `h_{m+2} = k1 h_m + k3 (f^3)_m + k5 (f^5)_m` for `m + 2 <= n`.
pub fn solve_hurwitz_ode(k1: &MultiPoly, k3: &MultiPoly, k5: &MultiPoly, n: usize) -> HurwitzSolution {
    let ring = k1.ring().clone();
    let zero = MultiPoly::zero(&ring);
    let len = n + 1;
    let mut h = vec![zero.clone(); len.max(2)];
    h[1] = MultiPoly::one(&ring);
    let mut pw: Vec<Vec<MultiPoly>> = vec![vec![zero.clone(); len.max(2)]; 4]; // f^2..f^5
    let binom_row = |m: usize| -> Vec<Rational> { (0..=m).map(|k| Rational::binomial(m as u32, k as u32)).collect() };
    for m in 0..len {
        let row = binom_row(m);
        // index m of each power only needs h up to m
        for p in 0..4 {
            let mut acc = zero.clone();
            for k in 0..=m {
                let lhs = if p == 0 { &h[k] } else { &pw[p - 1][k] };
                let rhs = &h[m - k];
                if lhs.is_zero() || rhs.is_zero() {
                    continue;
                }
                acc.add_product(&lhs.scale(&row[k]), rhs);
            }
            pw[p][m] = acc;
        }
        if m + 2 < len {
            let mut next = &h[m] * k1;
            next.add_product(k3, &pw[1][m]);
            next.add_product(k5, &pw[3][m]);
            h[m + 2] = next;
        }
    }
    h.truncate(len);
    let cube = pw[1][..len].to_vec();
    let fifth = pw[3][..len].to_vec();
    HurwitzSolution { f: h, cube, fifth }
}

/// `Bc(Θ_n)` for `n <= max` by a single method, with no cross-check.
pub fn theta_values_by(params: &GenusParams, max: usize, method: ThetaMethod) -> GenusTable {
    assert!(max >= 2, "need at least two generators");
    let ring = params.ring();
    let values: Vec<MultiPoly> = match method {
        ThetaMethod::Reversion => {
            let f = exp_bc(params, max + 1);
            (0..=max)
                .map(|n| f.coeff(n + 1).scale(&Rational::factorial(n as u32 + 1)))
                .collect()
        }
        ThetaMethod::Recurrence => {
            let k1 = -&params.a1;
            let k3 = params.a2.scale(&2.into());
            let k5 = params.a3.scale(&(-3).into());
            let sol = solve_hurwitz_ode(&k1, &k3, &k5, max + 1);
            sol.f[1..].to_vec()
        }
    };
    GenusTable::new("Bc", Generator::Theta, ring, values)
}

/// `Bc(Θ_n)` for `n <= max`, cross-checked against the other method and,
/// for integral parameters, for integrality of every coefficient.
pub fn theta_values(params: &GenusParams, max: usize, method: ThetaMethod) -> Result<GenusTable> {
    let table = theta_values_by(params, max, method);
    let other = match method {
        ThetaMethod::Reversion => ThetaMethod::Recurrence,
        ThetaMethod::Recurrence => ThetaMethod::Reversion,
    };
    let check = theta_values_by(params, max, other);
    let integral = params.is_integral();
    for n in 0..=max {
        let (a, b) = (table.value(n)?, check.value(n)?);
        if a != b {
            return Err(Error::Inconsistent(format!(
                "Theta_{n}: reversion and recurrence disagree: {} vs {}",
                a.to_text(),
                b.to_text()
            )));
        }
        if integral && !a.is_integral() {
            return Err(Error::Inconsistent(format!(
                "Theta_{n} has a non-integral coefficient: {}",
                a.to_text()
            )));
        }
    }
    Ok(table)
}

/// `Bc(CP^n) = (n + 1) [u^{n+1}] g` for `n <= max`.
pub fn cp_values(params: &GenusParams, max: usize) -> GenusTable {
    assert!(max >= 2, "need at least two generators");
    let g = log_bc(params, max + 1);
    let values = (0..=max)
        .map(|n| g.coeff(n + 1).scale(&Rational::from(n + 1)))
        .collect();
    GenusTable::new("Bc", Generator::ProjectiveSpace, params.ring(), values)
}

/// `B(x) = I(√x)^2` with `I(s) = ∫_0^s (1 + a1 t^2 + a2 t^4 + a3 t^6)^{-1/2} dt`,
/// and the coefficient polynomials of its differential equation.
#[derive(Debug, Clone)]
pub struct TwoValuedLogarithm {
    /// Series in `x`.
    pub b: Series1,
    /// Series in `s` with `x = s^2`.
    pub i: Series1,
    /// Coefficients of `phi1(x) = 2(1 + 2a1 x + 3a2 x^2 + 4a3 x^3)`.
    pub phi1: Vec<MultiPoly>,
    /// Coefficients of `phi2(x) = 16x(1 + a1 x + a2 x^2 + a3 x^3)`.
    pub phi2: Vec<MultiPoly>,
}

impl TwoValuedLogarithm {
    pub fn order(&self) -> usize {
        self.b.order()
    }

    pub fn phi1_series(&self, order: usize) -> Series1 {
        Series1::from_poly_coeffs(self.b.ring(), &self.phi1, order)
    }

    pub fn phi2_series(&self, order: usize) -> Series1 {
        Series1::from_poly_coeffs(self.b.ring(), &self.phi2, order)
    }
}

/// Builds `B` through `x^n`.
pub fn two_valued_log(params: &GenusParams, n: usize) -> Result<TwoValuedLogarithm> {
    assert!(n >= 2, "order must be at least 2");
    let ring = params.ring();
    let i = integral_i(params, 2 * n + 1);
    let b = (&i * &i).deflate(2)?;
    let c = |k: i64, p: &MultiPoly| p.scale(&Rational::from(k));
    let one = MultiPoly::one(ring);
    let phi1 = vec![c(2, &one), c(4, &params.a1), c(6, &params.a2), c(8, &params.a3)];
    let phi2 = vec![
        MultiPoly::zero(ring),
        c(16, &one),
        c(16, &params.a1),
        c(16, &params.a2),
        c(16, &params.a3),
    ];
    Ok(TwoValuedLogarithm { b, i, phi1, phi2 })
}

/// `I(s)` through `s^order`.
fn integral_i(params: &GenusParams, order: usize) -> Series1 {
    params
        .r_series(order - 1)
        .pow_rational(&Rational::new(-1, 2))
        .expect("constant term 1")
        .integrate()
}

/// `½ phi1 B' + ⅛ phi2 B'' = 1` through `x^n`, plus `phi2 = 8 ∫ phi1` and
/// `B(0) = 0`.
pub fn verify_tv_ode(tvl: &TwoValuedLogarithm, n: usize) -> Result<Report> {
    if tvl.order() < n + 2 {
        return Err(Error::Precondition(format!(
            "two-valued logarithm known through x^{} but the check needs x^{}",
            tvl.order(),
            n + 2
        )));
    }
    let ring = tvl.b.ring();
    let b1 = tvl.b.diff().truncate(n);
    let b2 = tvl.b.diff().diff().truncate(n);
    let lhs = &(&tvl.phi1_series(n) * &b1).scale(&Rational::new(1, 2))
        + &(&tvl.phi2_series(n) * &b2).scale(&Rational::new(1, 8));
    let mut r = Report::new();
    r.push(Verification::series_eq("two-valued ODE", n, &lhs, &Series1::one(ring, n)));
    let deg = tvl.phi2.len() - 1;
    let integral = tvl.phi1_series(deg - 1).integrate().scale(&8.into());
    r.push(Verification::series_eq(
        "phi2 = 8 ∫ phi1",
        deg,
        &integral,
        &tvl.phi2_series(deg),
    ));
    r.push(if tvl.b.coeff(0).is_zero() {
        Verification::holds("B(0) = 0", 0)
    } else {
        Verification::fails("B(0) = 0", 0, "x^0", tvl.b.coeff(0).to_text(), "0")
    });
    Ok(r)
}

/// Inverts `u = I(√x)` and compares with `1/(wp(u) - a1/3)`; then checks
/// `B(-u^2) + g(u)^2 = 0`. Both through `u^n`.
pub fn verify_uniformization(params: &GenusParams, n: usize) -> Result<Report> {
    if n < 4 {
        return Err(Error::Precondition("uniformization check needs order >= 4".into()));
    }
    let ring = params.ring();
    let mut r = Report::new();

    let s_of_u = integral_i(params, n + 1).revert()?;
    let x_of_u = &s_of_u * &s_of_u;
    let p = EllipticParams::from_a(params).wp(n).pole_cleared().clone();
    let mut shift = Series1::zero(ring, p.order());
    shift.set_coeff(2, params.a1.scale(&Rational::new(-1, 3)));
    let closed = (&p + &shift).inv()?.mul_x_pow(2);
    r.push(Verification::series_eq("x(u) = 1/(wp(u) - a1/3)", n, &x_of_u, &closed));

    let tvl = two_valued_log(params, n.div_ceil(2).max(2))?;
    let b_neg = tvl.b.substitute_monomial(&Rational::from(-1), 2);
    let g = log_bc(params, n);
    let sum = &b_neg + &(&g * &g);
    r.push(Verification::series_zero("B(-u^2) + g(u)^2 = 0", n, &sum));
    Ok(r)
}

/// `(f')^2 - (1 - a1 f^2 + a2 f^4)` through `u^n`. Vanishes exactly when
/// `a3 = 0`.
pub fn verify_ochanine_ode(params: &GenusParams, n: usize) -> Verification {
    let f = exp_bc(params, n + 1);
    let df = f.diff();
    let two_param = params.specialize(None, None, Some(Rational::zero()));
    let rhs = two_param.q_series(n).compose(&f.truncate(n)).expect("f(0) = 0");
    let residual = &(&df * &df) - &rhs;
    Verification::series_zero("two-parameter elliptic ODE", n, &residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(p: &GenusParams, i: usize) -> MultiPoly {
        MultiPoly::var_at(p.ring(), i)
    }

    fn lin(p: &GenusParams, c: &[(i64, &[(usize, u32)])], den: i64) -> MultiPoly {
        let mut acc = MultiPoly::zero(p.ring());
        for (k, factors) in c {
            let mut term = MultiPoly::constant(p.ring(), *k);
            for (i, e) in factors.iter() {
                term = &term * &var(p, *i).pow(*e);
            }
            acc = &acc + &term;
        }
        acc.scale(&Rational::new(1, den))
    }

    #[test]
    fn trivial_parameters_give_additive_law() {
        let p = GenusParams::numeric(0.into(), 0.into(), 0.into());
        let x = Series1::x(p.ring(), 9);
        assert_eq!(log_bc(&p, 9), x);
        assert_eq!(exp_bc(&p, 9), x);
        assert_eq!(exp_bc_closed_form(&p, 9), x);
        let f = fgl_bc(&p, 6);
        let one = MultiPoly::one(p.ring());
        assert_eq!(f.law, Series2::from_terms(p.ring(), 6, [(1, 0, one.clone()), (0, 1, one)]));
        let tvl = two_valued_log(&p, 5).unwrap();
        assert_eq!(tvl.b, Series1::x(p.ring(), 5));
    }

    #[test]
    fn low_order_coefficients() {
        let p = GenusParams::symbolic();
        let g = log_bc(&p, 7);
        // (3a1^2 - 4a2)/40
        assert_eq!(*g.coeff(5), lin(&p, &[(3, &[(0, 2)]), (-4, &[(1, 1)])], 40));
        let f = exp_bc(&p, 7);
        assert_eq!(*f.coeff(3), lin(&p, &[(-1, &[(0, 1)])], 6));
        assert_eq!(*f.coeff(5), lin(&p, &[(1, &[(0, 2)]), (12, &[(1, 1)])], 120));
    }

    #[test]
    fn theta_and_cp_tables() {
        let p = GenusParams::symbolic();
        let t = theta_values(&p, 8, ThetaMethod::Reversion).unwrap();
        assert_eq!(*t.value(2).unwrap(), lin(&p, &[(-1, &[(0, 1)])], 1));
        assert_eq!(*t.value(4).unwrap(), lin(&p, &[(1, &[(0, 2)]), (12, &[(1, 1)])], 1));
        assert_eq!(
            *t.value(6).unwrap(),
            lin(&p, &[(-1, &[(0, 3)]), (-132, &[(0, 1), (1, 1)]), (-360, &[(2, 1)])], 1)
        );
        assert!(t.value(3).unwrap().is_zero());
        let cp = cp_values(&p, 6);
        assert_eq!(*cp.value(2).unwrap(), lin(&p, &[(1, &[(0, 1)])], 2));
        assert_eq!(*cp.value(4).unwrap(), lin(&p, &[(3, &[(0, 2)]), (-4, &[(1, 1)])], 8));
        assert_eq!(
            *cp.value(6).unwrap(),
            lin(&p, &[(5, &[(0, 3)]), (-12, &[(0, 1), (1, 1)]), (8, &[(2, 1)])], 16)
        );
        assert!(cp.value(1).unwrap().is_zero());
    }

    #[test]
    fn injected_fault_breaks_method_agreement() {
        let p = GenusParams::symbolic().with_injected_q_sign_fault();
        assert!(matches!(
            theta_values(&p, 6, ThetaMethod::Reversion),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn identities_hold_symbolically() {
        let p = GenusParams::symbolic();
        assert!(verify_derivative_identities(&p, 12).holds());
        assert!(verify_exp_closed_form(&p, 13).is_ok());
        assert!(verify_closed_form(&p, 10).unwrap().is_ok());
        let tvl = two_valued_log(&p, 12).unwrap();
        assert!(verify_tv_ode(&tvl, 10).unwrap().holds());
        assert!(verify_tv_ode(&tvl, 11).is_err());
        let u = verify_uniformization(&p, 10).unwrap();
        assert!(u.holds(), "{:?}", u.first_failure());
    }

    #[test]
    fn axioms_at_low_order() {
        let p = GenusParams::symbolic();
        let f = fgl_bc(&p, 7);
        let r = f.check_axioms(7).unwrap();
        assert!(r.holds(), "{:?}", r.first_failure());
    }

    #[test]
    fn ochanine_residual_tracks_a3() {
        assert!(verify_ochanine_ode(&GenusParams::without_a3(), 12).is_ok());
        let v = verify_ochanine_ode(&GenusParams::symbolic(), 8);
        match v.outcome {
            crate::report::Outcome::Fails { at, left, .. } => {
                assert_eq!(at, "x^6");
                assert_eq!(left, "-a3");
            }
            other => panic!("expected a failure, got {other:?}"),
        }
    }
}
