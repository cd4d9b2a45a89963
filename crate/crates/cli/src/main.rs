mod cache;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::Sign;

use e10_core::borcherds::{
    classify_simple_roots, denominator_check, extract_correction, max_region_height, multiplicity_table, Parity,
    PetersonSolver,
};
use e10_core::lattice::enumerate_positive_roots;
use e10_core::qseries::{self, asymptotic_c};
use e10_core::{rank2, rank3, PowerSeries};

use cache::Cache;
use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "e10", version, about = "Exact computations for E10 and its Borcherds-product companions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Directory for cached coefficient tables.
    #[arg(long, env = "E10_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest height or truncation bound any command will attempt.
    #[arg(long, default_value_t = 30, global = true)]
    bound: i64,
    /// Largest number of series coefficients `qexp` and `asymptotic` will produce.
    #[arg(long, default_value_t = 5000, global = true)]
    max_terms: i64,
    /// Omit the timestamp header.
    #[arg(long, global = true)]
    no_header: bool,
    /// Progress and timing on stderr; repeat for more.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormName {
    F,
    #[value(name = "E2")]
    E2,
    #[value(name = "E4")]
    E4,
    #[value(name = "E6")]
    E6,
    Delta12,
    Psigma,
    P9,
    Phi01,
    #[value(name = "a-gamma05")]
    AGamma05,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algebra {
    E10,
    Rank3,
    Rank2,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of a named q-series, N+1 terms from its leading exponent.
    Qexp { name: FormName, n: i64 },
    /// Positive roots of E10 up to height H.
    Roots { h: i64 },
    /// Check a truncated denominator identity.
    DenomCheck { algebra: Algebra, h: i64 },
    /// Correction exponents m(a) on the fundamental domain up to height H.
    Correction { h: i64 },
    /// Root multiplicities against their upper bounds up to height H.
    MultTable {
        h: i64,
        /// Treat every root as lying in 2M*, adding the second cycle-shape term.
        #[arg(long)]
        two_m_star: bool,
    },
    /// Coefficients of f against the leading Bessel term.
    Asymptotic { nmax: i64 },
}

enum Failure {
    Usage(String),
    Compute(String),
    Verify(Report),
}

impl From<e10_core::Error> for Failure {
    fn from(e: e10_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome = std::result::Result<Report, Failure>;

struct Ctx {
    bound: i64,
    max_terms: i64,
    verbose: bool,
    cache: Cache,
}

impl Ctx {
    fn log(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn check_height(&self, h: i64) -> std::result::Result<(), Failure> {
        if h < 1 {
            return Err(Failure::Usage(format!("bound {h} must be positive")));
        }
        if h > self.bound {
            return Err(Failure::Usage(format!("bound {h} exceeds the resource limit {} (raise --bound)", self.bound)));
        }
        Ok(())
    }

    fn check_terms(&self, n: i64) -> std::result::Result<(), Failure> {
        if n < 0 {
            return Err(Failure::Usage(format!("term count {n} must be nonnegative")));
        }
        if n > self.max_terms {
            return Err(Failure::Usage(format!("{n} terms exceeds the limit {} (raise --max-terms)", self.max_terms)));
        }
        Ok(())
    }
}

fn series_rows(report: &mut Report, s: &PowerSeries, from: i64, to: i64) -> e10_core::Result<()> {
    for n in from..=to {
        report.row(vec![n.to_string(), s.coeff(n)?.to_string()]);
    }
    Ok(())
}

fn cmd_qexp(ctx: &Ctx, name: FormName, n: i64) -> Outcome {
    ctx.check_terms(n)?;
    let label = name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    if name == FormName::Phi01 {
        let phi = rank3::phi01((n + 1) as usize)?;
        let mut r = Report::new(format!("qexp {label}"), &["n", "r", "coeff"]);
        for ((qn, rr), c) in &phi.table {
            r.row(vec![qn.to_string(), rr.to_string(), c.to_string()]);
        }
        return Ok(r);
    }
    let lead = match name {
        FormName::F => -1,
        FormName::Delta12 => 1,
        _ => 0,
    };
    let prec = lead + n + 1;
    let s = ctx.cache.series(&label, prec, || match name {
        FormName::F => Ok(qseries::f_e10(prec)),
        FormName::E2 => qseries::eisenstein(2, prec),
        FormName::E4 => qseries::eisenstein(4, prec),
        FormName::E6 => qseries::eisenstein(6, prec),
        FormName::Delta12 => Ok(qseries::delta12(prec.max(2))),
        FormName::Psigma => Ok(qseries::p_sigma(prec)),
        FormName::P9 => Ok(qseries::multipartition_series(9, prec)),
        FormName::AGamma05 => qseries::gamma05_form(prec),
        FormName::Phi01 => unreachable!(),
    })?;
    let mut r = Report::new(format!("qexp {label}"), &["n", "coeff"]);
    series_rows(&mut r, &s, lead, lead + n)?;
    Ok(r)
}

fn coords(v: &e10_core::LatticeVector) -> String {
    v.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_roots(ctx: &Ctx, h: i64) -> Outcome {
    ctx.check_height(h)?;
    let mut roots = enumerate_positive_roots(h);
    roots.sort_by_key(|r| (r.height(), *r));
    let mut rep = Report::new(format!("roots {h}"), &["coords", "height", "norm", "det", "kind"]);
    for r in &roots {
        let kind = if r.qnorm() == 2 { "real" } else { "imaginary" };
        rep.row(vec![coords(r), r.height().to_string(), r.qnorm().to_string(), r.det().to_string(), kind.into()]);
    }
    rep.note("count", roots.len());
    Ok(rep)
}

fn verdict(mut rep: Report, pass: bool) -> Outcome {
    rep.note("result", if pass { "PASS" } else { "FAIL" });
    if pass { Ok(rep) } else { Err(Failure::Verify(rep)) }
}

fn cmd_denom_check(ctx: &Ctx, alg: Algebra, h: i64) -> Outcome {
    ctx.check_height(h)?;
    let mut rep = Report::new(format!("denom-check {}", format!("{alg:?}").to_lowercase()), &[]);
    let pass = match alg {
        Algebra::E10 => {
            if h > max_region_height() {
                return Err(Failure::Usage(format!("height {h} exceeds the engine limit {}", max_region_height())));
            }
            let r = denominator_check(h)?;
            rep.note("orbit_checked", r.orbit_checked);
            rep.note("off_orbit_checked", r.off_orbit_checked);
            rep.note("antisymmetry_checked", r.antisymmetry_checked);
            rep.note("verified", r.verified());
            rep.note("discrepancies", r.discrepancies);
            rep.note("max_abs_discrepancy", &r.max_abs_discrepancy);
            r.pass()
        }
        Algebra::Rank3 => {
            let a = rank3::delta35_product(h, h)?;
            let r = rank3::delta35_check(&a, h, h);
            let lead_ok = a.get(&rank3::P).is_some_and(|v| *v == 1.into());
            rep.note("coefficients", a.len());
            rep.note("orbit_checked", r.orbit_checked);
            rep.note("antisymmetry_checked", r.checked);
            rep.note("verified", r.checked + r.orbit_checked);
            rep.note("discrepancies", r.failures.len());
            rep.note("max_abs_discrepancy", &r.max_abs_discrepancy);
            rep.note("leading_coefficient_one", lead_ok);
            r.pass() && lead_ok
        }
        Algebra::Rank2 => {
            let p = rank2::product_side_rank2(h)?;
            let r = rank2::skew_check(&p);
            let lead_ok = p.coeff(rank2::RHO_COORDS) == 1.into();
            rep.note("coefficients", p.terms.len());
            rep.note("verified", r.checked);
            rep.note("discrepancies", r.failures.len());
            rep.note("max_abs_discrepancy", &r.max_abs_discrepancy);
            rep.note("leading_coefficient_one", lead_ok);
            r.pass() && lead_ok
        }
    };
    verdict(rep, pass)
}

fn cmd_correction(ctx: &Ctx, h: i64) -> Outcome {
    ctx.check_height(h)?;
    let t = extract_correction(h)?;
    let mut rep = Report::new(format!("correction {h}"), &["coords", "height", "norm", "m"]);
    for (a, m) in &t.entries {
        if m.sign() != Sign::NoSign {
            rep.row(vec![coords(a), a.height().to_string(), a.qnorm().to_string(), m.to_string()]);
        }
    }
    rep.rows.sort_by_key(|r| (r[1].parse::<i64>().unwrap_or(0), r[0].clone()));
    let simple = classify_simple_roots(&t);
    let even = simple.iter().filter(|s| s.parity == Parity::Even).count();
    rep.note("nonzero_entries", rep.rows.len());
    rep.note("imaginary_simple_roots_even", even);
    rep.note("imaginary_simple_roots_odd", simple.len() - even);
    Ok(rep)
}

fn cmd_mult_table(ctx: &Ctx, h: i64, two_m_star: bool) -> Outcome {
    ctx.check_height(h)?;
    let mut solver = PetersonSolver::new(h);
    if let Some(m) = ctx.cache.load_peterson(h) {
        solver.import(&m)?;
    }
    let before = solver.memo_len();
    let rows = multiplicity_table(h, &mut solver, two_m_star)?;
    if solver.memo_len() != before {
        ctx.cache.store_peterson(&solver.export());
    }
    let mut rep = Report::new(
        format!("mult-table {h}"),
        &["coords", "height", "det", "peterson", "c_det", "p9_bound", "niemann_bound", "dominated"],
    );
    let opt = |b: &Option<_>| b.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
    let mut all = true;
    for r in &rows {
        let ok = r.dominated();
        all &= ok;
        rep.row(vec![
            coords(&r.root),
            r.height.to_string(),
            r.det.to_string(),
            r.peterson.to_string(),
            r.correction.to_string(),
            opt(&r.bound_gm),
            opt(&r.bound_niemann),
            ok.to_string(),
        ]);
    }
    rep.note("roots", rows.len());
    verdict(rep, all)
}

fn cmd_asymptotic(ctx: &Ctx, nmax: i64) -> Outcome {
    ctx.check_terms(nmax)?;
    if nmax < 1 {
        return Err(Failure::Usage("NMAX must be at least 1".into()));
    }
    let prec = nmax + 1;
    let f = ctx.cache.series("f", prec, || Ok(qseries::f_e10(prec)))?;
    let mut rep = Report::new(format!("asymptotic {nmax}"), &["n", "c", "estimate", "ratio"]);
    for n in 1..=nmax {
        let ratio = qseries::asymptotic_ratio(n as u64, &f)?;
        rep.row(vec![
            n.to_string(),
            f.coeff(n)?.to_string(),
            format!("{:.9e}", asymptotic_c(n as u64)),
            format!("{ratio:.12}"),
        ]);
    }
    Ok(rep)
}

fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        bound: cli.bound,
        max_terms: cli.max_terms,
        verbose: cli.verbose > 0,
        cache: Cache::new(cli.cache_dir.clone(), cli.verbose > 1),
    };
    if cli.bound < 1 {
        return Err(Failure::Usage("--bound must be positive".into()));
    }
    let t = Instant::now();
    let out = match cli.command {
        Command::Qexp { name, n } => cmd_qexp(&ctx, name, n),
        Command::Roots { h } => cmd_roots(&ctx, h),
        Command::DenomCheck { algebra, h } => cmd_denom_check(&ctx, algebra, h),
        Command::Correction { h } => cmd_correction(&ctx, h),
        Command::MultTable { h, two_m_star } => cmd_mult_table(&ctx, h, two_m_star),
        Command::Asymptotic { nmax } => cmd_asymptotic(&ctx, nmax),
    };
    ctx.log(format!("finished in {:?}", t.elapsed()));
    out
}

fn emit(cli: &Cli, mut rep: Report) -> std::io::Result<()> {
    if !cli.no_header {
        rep.generated_unix = Some(SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    rep.render(cli.format, &mut lock)?;
    lock.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(rep) => match emit(&cli, rep) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Verify(rep)) => {
            let _ = emit(&cli, rep);
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) | Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
