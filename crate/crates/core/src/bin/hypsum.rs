use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypsum::bessel_sums::{
    delta_n, delta_n_at_1_closed, eq24_3f2, expansion_equal, expansion_unequal, s_direct, BesselSumParams,
};
use hypsum::closed_form::{miller_paris, special_case, theorem1, LimitMode, LimitPolicy, Theorem1Params};
use hypsum::hypergeom::{sum_3f2, EvalResult, SeriesConfig};
use hypsum::verify::{format_complex, format_float, parse_complex, run_suite, write_report, GridSpec, ReportError, ReportFormat, Suite};
use hypsum::{Complex, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;
const OUT_DIR_ENV: &str = "HYPSUM_OUT_DIR";

#[derive(Parser)]
#[command(name = "hypsum", version, about = "Closed forms for 3F2(1,1,c; d,n+2; 1) and related Bessel sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity and print value, error estimate and term count.
    Eval(EvalArgs),
    /// Run a seeded verification sweep and write a report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Direct summation of 3F2(1,1,c; d,n+2; 1).
    Series,
    /// Closed form of 3F2(1,1,c; d,n+2; 1).
    Theorem1,
    /// The explicit n = 0, 1 formulas.
    Special,
    /// 3F2(a,c,m; d,m+p; 1) by the Miller-Paris formula.
    MillerParis,
    /// Closed form of 3F2(1,1,1-mu; n+nu+2, n+2; 1).
    Eq24,
    /// Delta_n(chi) by series.
    Delta,
    /// Delta_n(1) in closed form.
    DeltaClosed,
    /// The Bessel sum S(a,b) by direct summation (--max-terms terms).
    BesselDirect,
    /// S(a,a) from its power-series expansion.
    BesselEqual,
    /// S(a,b), a > b, from its power-series expansion.
    BesselUnequal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliLimitMode {
    Error,
    Epsilon,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliSuite {
    Theorem1,
    #[value(alias = "miller_paris")]
    MillerParis,
    Identities,
    Bessel,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Table,
    Objects,
}

fn complex_arg(s: &str) -> Result<Complex, String> {
    parse_complex(s).ok_or_else(|| format!("cannot parse '{s}' as a complex number (expected e.g. 0.5+1.25i)"))
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    c: Option<Complex>,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    d: Option<Complex>,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Bessel argument a, or the upper parameter a of the Miller-Paris series.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    a: Option<Complex>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long)]
    chi: Option<f64>,
    #[arg(long, default_value_t = 1e-12)]
    rel_tol: f64,
    #[arg(long, default_value_t = 10_000_000)]
    max_terms: usize,
    #[arg(long, value_enum, default_value = "error")]
    limit_mode: CliLimitMode,
    #[arg(long, default_value_t = 1e-5)]
    epsilon: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: CliSuite,
    /// Sampled points per identity (per n where the identity is indexed by n).
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Values of n to sweep, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4,5,6,7,8")]
    n: Vec<usize>,
    /// Replaces every per-identity tolerance.
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long, default_value_t = 0.75)]
    domain_margin: f64,
    #[arg(long, default_value_t = 0.05)]
    exclusion_radius: f64,
    /// Terms of the direct Bessel sum.
    #[arg(long, default_value_t = 100_000)]
    max_terms: usize,
    /// Report path; defaults to $HYPSUM_OUT_DIR (or the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: CliFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::InvalidConfig(format!("--{flag} is required for this method")))
}

fn real(z: Complex, flag: &str) -> Result<f64, Error> {
    if z.im != 0.0 {
        return Err(Error::Domain(format!("--{flag} must be real for this method")));
    }
    Ok(z.re)
}

fn bessel_params(args: &EvalArgs, need_b: bool) -> Result<BesselSumParams, Error> {
    let mu = require(args.mu, "mu")?;
    let nu = require(args.nu, "nu")?;
    let a = match args.a {
        Some(z) => real(z, "a")?,
        None if need_b => return Err(Error::InvalidConfig("--a is required for this method".into())),
        None => 1.0,
    };
    let b = if need_b { args.b.unwrap_or(a) } else { a };
    BesselSumParams::new(mu, nu, a, b, args.n)
}

fn exact(v: Complex, terms: usize) -> EvalResult {
    EvalResult {
        value: v,
        err_est: 0.0,
        terms_used: terms,
        converged: true,
    }
}

fn evaluate(args: &EvalArgs) -> Result<EvalResult, Error> {
    let cfg = SeriesConfig {
        rel_tol: args.rel_tol,
        max_terms: args.max_terms,
        ..SeriesConfig::default()
    };
    cfg.validate()?;
    let policy = match args.limit_mode {
        CliLimitMode::Error => LimitPolicy {
            mode: LimitMode::Error,
            epsilon: args.epsilon,
        },
        CliLimitMode::Epsilon => LimitPolicy::epsilon_limit(args.epsilon),
    };
    let one = Complex::new(1.0, 0.0);
    let n = args.n;
    let t1 = || -> Result<Theorem1Params, Error> { Ok(Theorem1Params::new(require(args.c, "c")?, require(args.d, "d")?, n)) };
    match args.method {
        Method::Series => {
            let p = t1()?;
            if !p.in_domain() {
                return Err(Error::Domain(format!("Re(d-c+n) <= 0 (got {:.6})", p.excess())));
            }
            sum_3f2([one, one, p.c], [p.d, Complex::new(n as f64 + 2.0, 0.0)], one, &cfg)
        }
        Method::Theorem1 => theorem1(&t1()?, &policy),
        Method::Special => Ok(exact(special_case(&t1()?, &policy)?, n)),
        Method::MillerParis => {
            let (m, p) = (require(args.m, "m")?, require(args.p, "p")?);
            let v = miller_paris(require(args.a, "a")?, require(args.c, "c")?, require(args.d, "d")?, m, p)?;
            Ok(exact(v, m + p))
        }
        Method::Eq24 => Ok(exact(Complex::new(eq24_3f2(&bessel_params(args, false)?)?, 0.0), n)),
        Method::Delta => {
            let chi = require(args.chi, "chi")?;
            delta_n(&bessel_params(args, false)?, chi, &cfg)
        }
        Method::DeltaClosed => Ok(exact(Complex::new(delta_n_at_1_closed(&bessel_params(args, false)?)?, 0.0), n)),
        Method::BesselDirect | Method::BesselEqual | Method::BesselUnequal => {
            let bp = bessel_params(args, true)?;
            let r = match args.method {
                Method::BesselDirect => s_direct(&bp, args.max_terms.min(100_000_000))?,
                Method::BesselEqual => expansion_equal(&bp, &cfg)?,
                _ => expansion_unequal(&bp, &cfg)?,
            };
            Ok(EvalResult {
                value: Complex::new(r.value, 0.0),
                err_est: r.truncation_est,
                terms_used: r.terms_used,
                converged: true,
            })
        }
    }
}

fn method_name(m: Method) -> String {
    m.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn cmd_eval(args: &EvalArgs) -> ExitCode {
    match evaluate(args) {
        Ok(r) => {
            println!("value      {}", format_complex(r.value));
            println!("err_est    {}", format_float(r.err_est));
            println!("terms_used {}", r.terms_used);
            println!("converged  {}", r.converged);
            println!("method     {}", method_name(args.method));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let suite = match args.suite {
        CliSuite::Theorem1 => Suite::Theorem1,
        CliSuite::MillerParis => Suite::MillerParis,
        CliSuite::Identities => Suite::Identities,
        CliSuite::Bessel => Suite::Bessel,
        CliSuite::All => Suite::All,
    };
    let format = match args.format {
        CliFormat::Table => ReportFormat::Table,
        CliFormat::Objects => ReportFormat::Objects,
    };
    let grid = GridSpec {
        n_values: args.n.clone(),
        samples: args.samples,
        seed: args.seed,
        domain_margin: args.domain_margin,
        integer_exclusion_radius: args.exclusion_radius,
        bessel_terms: args.max_terms,
        ..GridSpec::default()
    };
    if let Some(t) = args.rel_tol {
        if !(t > 0.0) {
            eprintln!("error: --rel-tol must be > 0");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let records = match run_suite(suite, &grid, args.rel_tol) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let path = args.out.clone().unwrap_or_else(|| {
        let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
        dir.join(format!("report-{}-seed{}.{}", suite.name(), args.seed, format.extension()))
    });
    if let Err(e) = write_report(&records, &path, format) {
        eprintln!("error: {e}");
        return ExitCode::from(match e {
            ReportError::Empty => EXIT_CONFIG,
            _ => EXIT_IO,
        });
    }
    let failed: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    for r in failed.iter().take(20) {
        eprintln!(
            "FAIL {} {} {} rel_dev={} {}",
            r.suite,
            r.identity,
            r.params_string(),
            format_float(r.rel_dev),
            r.flags
        );
    }
    println!(
        "suite {}: {} records, {} passed, {} failed -> {}",
        suite.name(),
        records.len(),
        records.len() - failed.len(),
        failed.len(),
        path.display()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
