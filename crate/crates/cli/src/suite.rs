//! Verification suites. Checks run on the rayon pool and are assembled in
//! declaration order, so reports are deterministic apart from timings.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use fgl_core::buchstaber::*;
use fgl_core::exactcore::{MultiPoly, Rational, RelationRing};
use fgl_core::genera::*;
use fgl_core::report::{Outcome, Report, Verification};
use fgl_core::series::Series1;
use fgl_core::twovalued::*;
use fgl_core::weierstrass::{symbolic_invariants, SigmaSeries, WpDerivatives, WpSeries};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::params::ParamSpec;
use crate::render::SCHEMA;
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Buchstaber,
    Twovalued,
    Genera,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Buchstaber => "buchstaber",
            Suite::Twovalued => "twovalued",
            Suite::Genera => "genera",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "core" => Suite::Core,
            "buchstaber" => Suite::Buchstaber,
            "twovalued" => Suite::Twovalued,
            "genera" => Suite::Genera,
            "all" => Suite::All,
            other => {
                return Err(CliError::usage(format!(
                    "unknown suite `{other}` (expected core, buchstaber, twovalued, genera, all)"
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub summary: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    pub order: usize,
    pub params: String,
    pub status: Status,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The same report with every timing field zeroed.
    pub fn without_timing(&self) -> SuiteReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} at order {} with {}\n",
            self.suite, self.order, self.params
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::ReportOnly => "REPORT",
            };
            out.push_str(&format!("{tag:<6} {:<28} {:>6} ms  {}\n", c.id, c.elapsed_ms, c.summary));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!(
            "{}: {} checks, {failed} failed\n",
            if self.passed() { "pass" } else { "fail" },
            self.checks.len()
        ));
        out
    }
}

/// Everything a check may depend on.
pub struct Context {
    pub params: GenusParams,
    pub requested: ParamSpec,
    pub order: usize,
}

impl Context {
    pub fn new(requested: &ParamSpec, order: usize, inject_fault: bool) -> Self {
        let mut params = requested.to_genus_params();
        if inject_fault {
            params = params.with_injected_q_sign_fault();
        }
        Context {
            params,
            requested: requested.clone(),
            order,
        }
    }

    fn cache_key(&self, id: &str) -> String {
        format!(
            "check|{id}|{}|order={}|fault={}",
            self.requested,
            self.order,
            self.params.has_injected_fault()
        )
    }
}

/// What a check returns before it is classified.
struct Checked {
    report: Report,
    report_only: bool,
}

impl From<Report> for Checked {
    fn from(report: Report) -> Self {
        Checked {
            report,
            report_only: false,
        }
    }
}

impl From<Verification> for Checked {
    fn from(v: Verification) -> Self {
        Report::from(v).into()
    }
}

type CheckFn = fn(&Context) -> fgl_core::Result<Checked>;

struct Check {
    id: &'static str,
    suite: Suite,
    run: CheckFn,
}

fn same(name: &str, left: &MultiPoly, right: &MultiPoly) -> Verification {
    Verification::poly_eq(name, left, right)
}

fn k(c: i64) -> Rational {
    Rational::from(c)
}

// core

fn series_round_trips(cx: &Context) -> fgl_core::Result<Checked> {
    let n = cx.order;
    let q = cx.params.q_series(n);
    let root = q.sqrt()?;
    let g = log_bc(&cx.params, n);
    let f = g.revert()?;
    let x = Series1::x(cx.params.ring(), n);
    let mut r = Report::new();
    r.push(Verification::series_eq("sqrt(Q)^2 = Q", n, &(&root * &root), &q));
    r.push(Verification::series_eq("exp(log Q) = Q", n, &q.log()?.exp()?, &q));
    r.push(Verification::series_eq("g(f(u)) = u", n, &g.compose(&f)?, &x));
    r.push(Verification::series_eq("revert(revert(g)) = g", n, &f.revert()?, &g));
    Ok(r.into())
}

fn wp_ode(cx: &Context) -> fgl_core::Result<Checked> {
    let (g2, g3) = symbolic_invariants();
    let wp = WpSeries::new(&g2, &g3, cx.order);
    let res = wp.ode_residual();
    let mut r = Report::new();
    r.push(Verification::series_zero("wp'^2 = 4wp^3 - g2 wp - g3", res.order(), &res));
    let sigma = SigmaSeries::from_wp(&wp);
    let lhs = -&sigma.zeta_regular().diff();
    let tail = wp.tail();
    let m = lhs.order().min(tail.order());
    r.push(Verification::series_eq("-zeta' = wp", m, &lhs, &tail));
    Ok(r.into())
}

fn wp_derivatives(cx: &Context) -> fgl_core::Result<Checked> {
    let der = WpDerivatives::standard();
    let ring = der.ring().clone();
    let u = MultiPoly::var(&ring, "u")?;
    let g2 = MultiPoly::var(&ring, "g2")?;
    let mut r = Report::new();
    let second = &u.pow(2).scale(&k(6)) - &g2.scale(&Rational::new(1, 2));
    r.push(same("wp'' = 6 wp^2 - g2/2", &der.nth(2), &second));
    let raw = der.sequence(cx.order.min(12), false);
    let red = der.sequence(cx.order.min(12), true);
    let bad = raw
        .iter()
        .zip(&red)
        .position(|(a, b)| der.reduce(a).map(|x| x != *b).unwrap_or(true));
    r.push(match bad {
        None => Verification::holds("reduce(raw wp^(k)) = reduced wp^(k)", raw.len() - 1),
        Some(i) => Verification::fails("reduce(raw wp^(k)) = reduced wp^(k)", raw.len() - 1, format!("k = {i}"), raw[i].to_text(), red[i].to_text()),
    });
    Ok(r.into())
}

// buchstaber

fn bc_axioms(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(fgl_bc(&cx.params, cx.order).check_axioms(cx.order)?.into())
}

fn bc_theta(cx: &Context) -> fgl_core::Result<Checked> {
    let p = &cx.params;
    let mut r = Report::new();
    let max = cx.order.max(6);
    let name = "reversion = recurrence, integral";
    let t = match theta_values(p, max, ThetaMethod::Recurrence) {
        Ok(t) => {
            r.push(Verification::holds(name, max));
            t
        }
        Err(e) => {
            r.push(Verification::fails(name, max, "table", e.to_string(), "consistent"));
            theta_values_by(p, max, ThetaMethod::Reversion)
        }
    };
    let (a1, a2, a3) = (p.a1(), p.a2(), p.a3());
    r.push(same("Bc(Theta_2) = -a1", t.value(2)?, &-a1));
    r.push(same("Bc(Theta_4) = a1^2 + 12a2", t.value(4)?, &(&a1.pow(2) + &a2.scale(&k(12)))));
    let six = &(&(-&a1.pow(3)) - &(a1 * a2).scale(&k(132))) - &a3.scale(&k(360));
    r.push(same("Bc(Theta_6) = -a1^3 - 132a1a2 - 360a3", t.value(6)?, &six));
    let odd = (1..=max).step_by(2).find(|&n| !t.values()[n].is_zero());
    r.push(match odd {
        None => Verification::holds("Bc(Theta_odd) = 0", max),
        Some(n) => Verification::fails("Bc(Theta_odd) = 0", max, format!("Theta_{n}"), t.values()[n].to_text(), "0"),
    });
    Ok(r.into())
}

fn bc_cp(cx: &Context) -> fgl_core::Result<Checked> {
    let p = &cx.params;
    let t = cp_values(p, 6);
    let (a1, a2, a3) = (p.a1(), p.a2(), p.a3());
    let mut r = Report::new();
    r.push(same("Bc(CP^2) = a1/2", t.value(2)?, &a1.scale(&Rational::new(1, 2))));
    let four = (&a1.pow(2).scale(&k(3)) - &a2.scale(&k(4))).scale(&Rational::new(1, 8));
    r.push(same("Bc(CP^4) = (3a1^2 - 4a2)/8", t.value(4)?, &four));
    let six = (&(&a1.pow(3).scale(&k(5)) - &(a1 * a2).scale(&k(12))) + &a3.scale(&k(8))).scale(&Rational::new(1, 16));
    r.push(same("Bc(CP^6) = (5a1^3 - 12a1a2 + 8a3)/16", t.value(6)?, &six));
    Ok(r.into())
}

fn bc_derivatives(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_derivative_identities(&cx.params, cx.order).into())
}

fn bc_exp_closed(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_exp_closed_form(&cx.params, cx.order).into())
}

fn bc_closed_form(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_closed_form(&cx.params, cx.order)?.into())
}

fn bc_tv_ode(cx: &Context) -> fgl_core::Result<Checked> {
    let tvl = two_valued_log(&cx.params, cx.order + 2)?;
    Ok(verify_tv_ode(&tvl, cx.order)?.into())
}

fn bc_uniformization(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_uniformization(&cx.params, cx.order.max(4))?.into())
}

/// With `a3 != 0` the two-parameter equation must fail, so the result is
/// recorded without gating the suite.
fn bc_ochanine(cx: &Context) -> fgl_core::Result<Checked> {
    let v = verify_ochanine_ode(&cx.params, cx.order);
    Ok(Checked {
        report: v.into(),
        report_only: !cx.params.is_a3_zero(),
    })
}

// twovalued

fn tv_polynomial(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_buchstaber_polynomial(&cx.params)?.into())
}

fn tv_psi(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_psi_agreement(&cx.params, cx.order)?.into())
}

fn tv_branches(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_branch_sums(&cx.params, cx.order)?.into())
}

fn tv_cosets(_: &Context) -> fgl_core::Result<Checked> {
    let mut groups: Vec<CyclicProduct> = (1..=64).map(CyclicProduct::cyclic).collect::<fgl_core::Result<_>>()?;
    for e in 1..=4 {
        groups.push(CyclicProduct::new(&[2, 1 << e])?);
    }
    let reports: Vec<fgl_core::Result<Report>> = groups.par_iter().map(verify_coset_axioms).collect();
    let mut r = Report::new();
    for (g, rep) in groups.iter().zip(reports) {
        let rep = rep?;
        r.push(match rep.first_failure() {
            None => Verification::holds(format!("{g} coset axioms"), g.order() as usize),
            Some(v) => v.clone(),
        });
    }
    Ok(r.into())
}

// genera

fn kr_table(_: &Context) -> fgl_core::Result<Checked> {
    let printed = printed_krichever_values();
    let rel = RelationRing::weierstrass(&krichever_ring())?;
    let reduced = krichever_table(6, KricheverForm::Reduced);
    let mut r = Report::new();
    for (n, p) in printed.iter().enumerate().skip(1) {
        r.push(same(&format!("Kr(Theta_{n}) printed"), reduced.value(n)?, &rel.reduce(p)?));
    }
    Ok(r.into())
}

fn kr_separating(_: &Context) -> fgl_core::Result<Checked> {
    let (kk, ll) = special_elements();
    let mut r = Report::new();
    let sym = GenusParams::symbolic();
    let bc = theta_values(&sym, 6, ThetaMethod::Reversion)?;
    r.push(same("Bc(K) = -360 a3", &genus_eval(&kk, &bc)?, &sym.a3().scale(&k(-360))));
    let ring = krichever_ring();
    let var = |n: &str| MultiPoly::var(&ring, n);
    let (u, v, g2, g3) = (var("u")?, var("v")?, var("g2")?, var("g3")?);
    let residual = &(&(&u.pow(3).scale(&k(4)) - &(&g2 * &u)) - &g3) - &v.pow(2);
    let pre = krichever_table(6, KricheverForm::PreReduction);
    r.push(same("Kr(K) = 90(4u^3 - g2 u - g3 - v^2) before reduction", &genus_eval(&kk, &pre)?, &residual.scale(&k(90))));
    let rel = RelationRing::weierstrass(&ring)?;
    let red = krichever_table(6, KricheverForm::Reduced);
    let zero = MultiPoly::zero(&ring);
    r.push(same("Kr(K) = 0", &genus_eval_reduced(&kk, &red, &rel)?, &zero));
    r.push(same("Kr(L) = 0", &genus_eval_reduced(&ll, &red, &rel)?, &zero));
    Ok(r.into())
}

fn kr_kernel(_: &Context) -> fgl_core::Result<Checked> {
    let (kk, ll) = special_elements();
    let mut r = Report::new();
    for d in 1..=6u32 {
        let kb = kernel_basis(d)?;
        let want = match d {
            5 => 1,
            6 => 2,
            _ => 0,
        };
        let name = format!("dim ker Kr in degree {d} = {want}");
        r.push(if kb.dimension() == want {
            Verification::holds(name, d as usize)
        } else {
            Verification::fails(name, d as usize, "dimension", kb.dimension().to_string(), want.to_string())
        });
        if d == 6 {
            for (label, p) in [("K", &kk), ("L", &ll)] {
                let name = format!("{label} in the degree 6 kernel");
                r.push(if kb.contains(p) {
                    Verification::holds(name, 6)
                } else {
                    Verification::fails(name, 6, label, p.to_string(), "in kernel")
                });
            }
        }
    }
    Ok(r.into())
}

fn hurwitz_bc(cx: &Context) -> fgl_core::Result<Checked> {
    let n = cx.order + 1;
    let f = exp_bc(&buchstaber_over_invariants(), n);
    let z = [HurwitzGenerator::new("g2", k(1)), HurwitzGenerator::new("g3", k(1))];
    Ok(hurwitz_membership(&f, &z, n)?.into())
}

fn witten_generators(g3: i64) -> [HurwitzGenerator; 2] {
    [
        HurwitzGenerator::new("g2", Rational::new(1, 2)),
        HurwitzGenerator::new("g3", k(g3)),
    ]
}

fn hurwitz_witten2(cx: &Context) -> fgl_core::Result<Checked> {
    let n = cx.order + 1;
    Ok(hurwitz_membership(&witten_exp(n), &witten_generators(2), n)?.into())
}

/// Conjectural; never gates the suite.
fn hurwitz_witten6(cx: &Context) -> fgl_core::Result<Checked> {
    let n = cx.order + 1;
    Ok(Checked {
        report: hurwitz_membership(&witten_exp(n), &witten_generators(6), n)?.into(),
        report_only: true,
    })
}

fn printed_lines(_: &Context) -> fgl_core::Result<Checked> {
    let mut r = compare_printed_line("Bc", &exp_bc(&buchstaber_over_invariants(), 13), &printed_bc_line());
    r.extend(compare_printed_line("Wt", &witten_exp(13), &printed_wt_line()));
    Ok(r.into())
}

fn invariant_recurrence(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_invariant_recurrence(cx.order + 2).into())
}

fn invariant_triangle(cx: &Context) -> fgl_core::Result<Checked> {
    let via_a = bc_theta_over_invariants(cx.order)?;
    let direct = hurwitz_coefficients(&exp_bc(&buchstaber_over_invariants(), cx.order + 1), cx.order);
    let bad = (0..=cx.order).find(|&i| via_a[i] != direct[i]);
    let name = "Bc over Q[a] at a1 = 0 = Bc over Q[g2, g3]";
    Ok(match bad {
        None => Verification::holds(name, cx.order),
        Some(i) => Verification::fails(name, cx.order, format!("Theta_{i}"), via_a[i].to_text(), direct[i].to_text()),
    }
    .into())
}

fn ochanine_specialization(cx: &Context) -> fgl_core::Result<Checked> {
    Ok(verify_ochanine_specialization(cx.order)?.into())
}

const CHECKS: &[Check] = &[
    Check { id: "core.series-round-trips", suite: Suite::Core, run: series_round_trips },
    Check { id: "core.wp-ode", suite: Suite::Core, run: wp_ode },
    Check { id: "core.wp-derivatives", suite: Suite::Core, run: wp_derivatives },
    Check { id: "bc.axioms", suite: Suite::Buchstaber, run: bc_axioms },
    Check { id: "bc.theta-values", suite: Suite::Buchstaber, run: bc_theta },
    Check { id: "bc.cp-values", suite: Suite::Buchstaber, run: bc_cp },
    Check { id: "bc.derivative-identities", suite: Suite::Buchstaber, run: bc_derivatives },
    Check { id: "bc.exp-closed-form", suite: Suite::Buchstaber, run: bc_exp_closed },
    Check { id: "bc.closed-form", suite: Suite::Buchstaber, run: bc_closed_form },
    Check { id: "bc.two-valued-ode", suite: Suite::Buchstaber, run: bc_tv_ode },
    Check { id: "bc.uniformization", suite: Suite::Buchstaber, run: bc_uniformization },
    Check { id: "bc.ochanine-ode", suite: Suite::Buchstaber, run: bc_ochanine },
    Check { id: "tv.polynomial-identity", suite: Suite::Twovalued, run: tv_polynomial },
    Check { id: "tv.psi-agreement", suite: Suite::Twovalued, run: tv_psi },
    Check { id: "tv.branch-sums", suite: Suite::Twovalued, run: tv_branches },
    Check { id: "tv.coset-groups", suite: Suite::Twovalued, run: tv_cosets },
    Check { id: "gen.krichever-table", suite: Suite::Genera, run: kr_table },
    Check { id: "gen.separating-element", suite: Suite::Genera, run: kr_separating },
    Check { id: "gen.kernel", suite: Suite::Genera, run: kr_kernel },
    Check { id: "gen.hurwitz-z-g2-g3", suite: Suite::Genera, run: hurwitz_bc },
    Check { id: "gen.hurwitz-witten-2", suite: Suite::Genera, run: hurwitz_witten2 },
    Check { id: "gen.hurwitz-witten-6", suite: Suite::Genera, run: hurwitz_witten6 },
    Check { id: "gen.printed-lines", suite: Suite::Genera, run: printed_lines },
    Check { id: "gen.invariant-recurrence", suite: Suite::Genera, run: invariant_recurrence },
    Check { id: "gen.invariant-triangle", suite: Suite::Genera, run: invariant_triangle },
    Check { id: "gen.ochanine-specialization", suite: Suite::Genera, run: ochanine_specialization },
];

/// Ids of the checks belonging to a suite, in report order.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    CHECKS.iter().filter(|c| suite.includes(c.suite)).map(|c| c.id).collect()
}

#[derive(Serialize, Deserialize)]
struct CachedOutcome {
    status: Status,
    summary: String,
}

fn classify(checked: fgl_core::Result<Checked>) -> CachedOutcome {
    match checked {
        Err(e) => CachedOutcome {
            status: Status::Fail,
            summary: format!("error: {e}"),
        },
        Ok(c) => {
            let r = &c.report;
            let notes: Vec<String> = r
                .checks
                .iter()
                .filter(|v| matches!(v.outcome, Outcome::Note { .. }))
                .map(|v| v.to_string())
                .collect();
            let failure = r.first_failure();
            let status = match (c.report_only, failure) {
                (true, _) => Status::ReportOnly,
                (false, None) => Status::Pass,
                (false, Some(_)) => Status::Fail,
            };
            let mut summary = match failure {
                Some(v) => v.to_string(),
                None => format!("{} identities hold", r.checks.len()),
            };
            if !notes.is_empty() {
                summary.push_str("; ");
                summary.push_str(&notes.join("; "));
            }
            CachedOutcome { status, summary }
        }
    }
}

pub fn run_suite(suite: Suite, cx: &Context, cache: &Cache) -> CliResult<SuiteReport> {
    let selected: Vec<&Check> = CHECKS.iter().filter(|c| suite.includes(c.suite)).collect();
    let results: Vec<CliResult<CheckResult>> = selected
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let (payload, _) = cache.get_or_compute(&cx.cache_key(c.id), || {
                serde_json::to_string(&classify((c.run)(cx))).map_err(CliError::from)
            })?;
            let outcome: CachedOutcome = serde_json::from_str(&payload)?;
            Ok(CheckResult {
                id: c.id.to_string(),
                status: outcome.status,
                summary: outcome.summary,
                elapsed_ms: start.elapsed().as_millis() as u64,
            })
        })
        .collect();
    let checks = results.into_iter().collect::<CliResult<Vec<_>>>()?;
    let status = if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(SuiteReport {
        schema: SCHEMA.to_string(),
        suite: suite.name().to_string(),
        order: cx.order,
        params: cx.requested.to_string(),
        status,
        checks,
    })
}
