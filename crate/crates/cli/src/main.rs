use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fgl_core::buchstaber::{cp_values, exp_bc, log_bc, theta_values, two_valued_log, ThetaMethod};
use fgl_core::exactcore::{MultiPoly, PolyRecord, Rational, Ring};
use fgl_core::genera::{
    buchstaber_over_invariants, hurwitz_membership, kernel_basis, krichever_exp, krichever_table, witten_exp,
    witten_table, HurwitzGenerator, KricheverForm,
};
use fgl_core::series::{Series1, SeriesRecord};
use fgl_core::table::{Generator, GenusTable};
use fgl_core::twovalued::{cayley_table, verify_coset_axioms, CyclicProduct};
use fgl_core::weierstrass::{symbolic_invariants, SigmaSeries, WpSeries};
use fgl_forge::cache::Cache;
use fgl_forge::params::ParamSpec;
use fgl_forge::render::{self, Format};
use fgl_forge::suite::{run_suite, Context, Suite};
use fgl_forge::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "fgl-forge", version, about = "Exact verification of the Buchstaber formal group law and its genera")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation order (or highest generator index for tables).
    #[arg(long, global = true, default_value_t = 12)]
    order: usize,

    /// Parameters as `a1=<r>,a2=<r>,a3=<r>` with `<r>` a rational or `symbolic`.
    #[arg(long, global = true, default_value = "symbolic")]
    params: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cache directory, overriding FGL_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    no_cache: bool,

    #[arg(long, global = true, hide = true, value_enum)]
    inject_fault: Option<Fault>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    SqrtQSign,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exits 1 if any gating check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Print a series expansion through `--order`.
    Expand {
        #[arg(long, value_enum, default_value_t = SeriesKind::Exp)]
        series: SeriesKind,
    },
    /// Genus values on theta divisors or projective spaces.
    GenusTable {
        #[arg(long, value_enum)]
        genus: GenusKind,
        #[arg(long, value_enum, default_value_t = GeneratorKind::Theta)]
        generator: GeneratorKind,
    },
    /// Rational basis of the Krichever kernel in a complex degree.
    Kernel {
        #[arg(long)]
        degree: u32,
    },
    /// Two-valued coset group of a finite abelian group, e.g. Z12 or Z2xZ8.
    Modsquare {
        #[arg(long)]
        group: String,
    },
    /// Hurwitz integrality of an exponential over a target ring.
    Hurwitz {
        #[arg(long, value_enum)]
        target: HurwitzTarget,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    /// Buchstaber exponential f(u).
    Exp,
    /// Buchstaber logarithm g(u).
    Log,
    /// B(x) = I(sqrt x)^2.
    TwoValuedLog,
    /// Krichever exponential over Q[alpha, u, v, g2].
    Krichever,
    /// sigma(u; g2, g3).
    Witten,
    /// u^2 wp(u; g2, g3).
    Wp,
    /// sigma(u; g2, g3).
    Sigma,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenusKind {
    Bc,
    Kr,
    Wt,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorKind {
    Theta,
    Cp,
}

#[derive(Clone, Copy, ValueEnum)]
enum HurwitzTarget {
    /// Buchstaber at a1 = 0 over Z[g2, g3].
    #[value(name = "z-g2-g3")]
    ZG2G3,
    /// Witten over Z[g2/2, 2g3].
    #[value(name = "witten-2")]
    Witten2,
    /// Witten over Z[g2/2, 6g3]; reported, never a failure.
    #[value(name = "witten-6")]
    Witten6,
}

struct Env {
    common: Common,
    requested: ParamSpec,
    cache: Cache,
}

impl Env {
    fn key(&self, what: &str) -> String {
        format!(
            "{what}|{}|order={}|fault={}",
            self.requested,
            self.common.order,
            self.common.inject_fault.is_some()
        )
    }

    fn params(&self) -> fgl_core::buchstaber::GenusParams {
        let p = self.requested.to_genus_params();
        match self.common.inject_fault {
            Some(Fault::SqrtQSign) => p.with_injected_q_sign_fault(),
            None => p,
        }
    }
}

/// Output text plus whether the command counts as successful.
type Outcome = (String, bool);

fn cached_series(env: &Env, what: &str, compute: impl FnOnce() -> Series1) -> CliResult<Series1> {
    let (payload, _) = env.cache.get_or_compute(&env.key(what), || {
        serde_json::to_string(&SeriesRecord::from(&compute())).map_err(CliError::from)
    })?;
    let rec: SeriesRecord = serde_json::from_str(&payload)?;
    let ring = Ring::new(rec.vars.clone())?;
    Ok(Series1::from_record(&ring, &rec)?)
}

fn cached_table(env: &Env, what: &str, compute: impl FnOnce() -> CliResult<GenusTable>) -> CliResult<GenusTable> {
    let mut meta = None;
    let (payload, _) = env.cache.get_or_compute(&env.key(what), || {
        let t = compute()?;
        meta = Some((t.genus.clone(), t.generator));
        let recs: Vec<PolyRecord> = t.values().iter().map(PolyRecord::from).collect();
        serde_json::to_string(&recs).map_err(CliError::from)
    })?;
    let recs: Vec<PolyRecord> = serde_json::from_str(&payload)?;
    let first = recs.first().ok_or_else(|| CliError::usage("empty table"))?;
    let ring = Ring::new(first.vars.clone())?;
    let values = recs
        .iter()
        .map(|r| MultiPoly::from_record(&ring, r))
        .collect::<fgl_core::Result<Vec<_>>>()?;
    let (genus, generator) = meta.unwrap_or_else(|| table_meta(what));
    Ok(GenusTable::new(genus, generator, &ring, values))
}

fn table_meta(what: &str) -> (String, Generator) {
    let generator = if what.ends_with("cp") { Generator::ProjectiveSpace } else { Generator::Theta };
    let genus = match what.split('|').nth(1) {
        Some("kr") => "Kr",
        Some("wt") => "Wt",
        _ => "Bc",
    };
    (genus.to_string(), generator)
}

fn verify(env: &Env, suite: &str) -> CliResult<Outcome> {
    let suite: Suite = suite.parse()?;
    if !matches!(env.common.format, Format::Text | Format::Json) {
        return Err(CliError::usage("verify supports --format text or json"));
    }
    let cx = Context::new(&env.requested, env.common.order, env.common.inject_fault.is_some());
    let report = run_suite(suite, &cx, &env.cache)?;
    let text = match env.common.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => report.to_text(),
    };
    Ok((text, report.passed()))
}

fn expand(env: &Env, kind: SeriesKind) -> CliResult<Outcome> {
    let n = env.common.order;
    let p = env.params();
    let (name, var, s) = match kind {
        SeriesKind::Exp => ("f_Bc", "u", cached_series(env, "expand|exp", || exp_bc(&p, n))?),
        SeriesKind::Log => ("g_Bc", "u", cached_series(env, "expand|log", || log_bc(&p, n))?),
        SeriesKind::TwoValuedLog => {
            let tvl = two_valued_log(&p, n.max(2))?;
            ("B", "x", cached_series(env, "expand|two-valued-log", || tvl.b.truncate(n))?)
        }
        SeriesKind::Krichever => (
            "f_Kr",
            "x",
            cached_series(env, "expand|krichever", || krichever_exp(n.max(1), KricheverForm::Eliminated))?,
        ),
        SeriesKind::Witten => ("f_Wt", "u", cached_series(env, "expand|witten", || witten_exp(n))?),
        SeriesKind::Sigma => {
            let (g2, g3) = symbolic_invariants();
            ("sigma", "u", cached_series(env, "expand|sigma", || SigmaSeries::new(&g2, &g3, n).series().truncate(n))?)
        }
        SeriesKind::Wp => {
            let (g2, g3) = symbolic_invariants();
            let wp = WpSeries::new(&g2, &g3, n.saturating_sub(2));
            ("u^2 wp", "u", cached_series(env, "expand|wp", || wp.pole_cleared().clone())?)
        }
    };
    Ok((render::series(name, var, &s, env.common.format)?, true))
}

fn genus_table(env: &Env, genus: GenusKind, generator: GeneratorKind) -> CliResult<Outcome> {
    let n = env.common.order;
    if n < 2 {
        return Err(CliError::usage("genus tables need --order of at least 2"));
    }
    let table = match (genus, generator) {
        (GenusKind::Bc, GeneratorKind::Theta) => cached_table(env, "table|bc|theta", || {
            Ok(theta_values(&env.params(), n, ThetaMethod::Recurrence)?)
        })?,
        (GenusKind::Bc, GeneratorKind::Cp) => cached_table(env, "table|bc|cp", || Ok(cp_values(&env.params(), n)))?,
        (GenusKind::Kr, GeneratorKind::Theta) => {
            cached_table(env, "table|kr|theta", || Ok(krichever_table(n, KricheverForm::Eliminated)))?
        }
        (GenusKind::Wt, GeneratorKind::Theta) => cached_table(env, "table|wt|theta", || Ok(witten_table(n)))?,
        (_, GeneratorKind::Cp) => {
            return Err(CliError::usage("projective space values are available for --genus bc only"))
        }
    };
    Ok((render::table(&table, env.common.format)?, true))
}

fn kernel(env: &Env, degree: u32) -> CliResult<Outcome> {
    if degree == 0 {
        return Err(CliError::usage("--degree must be positive"));
    }
    let k = kernel_basis(degree)?;
    Ok((render::kernel(&k, env.common.format)?, true))
}

/// `Z12`, `Z/12`, `Z2xZ8`, `Z/2 x Z/8`.
fn parse_group(s: &str) -> CliResult<CyclicProduct> {
    let bad = || CliError::usage(format!("cannot read group `{s}` (try Z12 or Z2xZ8)"));
    let moduli = s
        .split(['x', 'X', '*'])
        .map(|part| {
            let part = part.trim();
            let digits = part.strip_prefix('Z').ok_or_else(bad)?;
            let digits = digits.strip_prefix('/').unwrap_or(digits);
            digits.trim().parse::<u32>().map_err(|_| bad())
        })
        .collect::<CliResult<Vec<u32>>>()?;
    CyclicProduct::new(&moduli).map_err(|_| bad())
}

fn modsquare(env: &Env, group: &str) -> CliResult<Outcome> {
    let g = parse_group(group)?;
    if g.order() > 4096 {
        return Err(CliError::usage("group too large for a full table (order above 4096)"));
    }
    let axioms = verify_coset_axioms(&g)?;
    let mut text = render::cayley(&g, &cayley_table(&g), env.common.format)?;
    if env.common.format == Format::Text {
        text.push_str(&render::report("coset axioms", &axioms, Format::Text)?);
    }
    Ok((text, axioms.holds()))
}

fn hurwitz(env: &Env, target: HurwitzTarget) -> CliResult<Outcome> {
    let n = env.common.order + 1;
    let half = Rational::new(1, 2);
    let (name, f, gens, gating) = match target {
        HurwitzTarget::ZG2G3 => (
            "Bc at a1 = 0",
            exp_bc(&buchstaber_over_invariants(), n),
            [HurwitzGenerator::new("g2", 1.into()), HurwitzGenerator::new("g3", 1.into())],
            true,
        ),
        HurwitzTarget::Witten2 | HurwitzTarget::Witten6 => {
            let m = if matches!(target, HurwitzTarget::Witten2) { 2 } else { 6 };
            (
                "Wt",
                witten_exp(n),
                [HurwitzGenerator::new("g2", half), HurwitzGenerator::new("g3", m.into())],
                m == 2,
            )
        }
    };
    let v = hurwitz_membership(&f, &gens, n)?;
    let report = v.clone().into();
    let text = render::report(name, &report, env.common.format)?;
    Ok((text, !gating || v.is_ok()))
}

fn run(cli: Cli) -> CliResult<bool> {
    let requested: ParamSpec = cli.common.params.parse()?;
    let cache = Cache::resolve(cli.common.cache_dir.clone(), cli.common.no_cache);
    let env = Env {
        common: cli.common,
        requested,
        cache,
    };
    let (text, ok) = match cli.command {
        Command::Verify { suite } => verify(&env, &suite)?,
        Command::Expand { series } => expand(&env, series)?,
        Command::GenusTable { genus, generator } => genus_table(&env, genus, generator)?,
        Command::Kernel { degree } => kernel(&env, degree)?,
        Command::Modsquare { group } => modsquare(&env, &group)?,
        Command::Hurwitz { target } => hurwitz(&env, target)?,
    };
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
