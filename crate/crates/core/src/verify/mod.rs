//! Seeded verification sweeps: every identity is evaluated two ways on
//! sampled parameter points and the deviations are collected as records.
//!
//! Sampling uses ChaCha8 seeded through `seed_from_u64(seed)`, with one
//! stream per (identity, n) pair so the points of one identity do not depend
//! on how many points another identity drew.

mod report;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use report::{
    format_complex, format_float, parse_complex, read_table, sort_canonical, write_report, ReportError, ReportFormat,
    VerificationRecord, HEADER,
};

use crate::bessel_sums::{
    a_coeff, b_coeff, delta_n_at_1_closed, delta_n_with, eq24_3f2, expansion_equal, expansion_unequal, psi_removal_identity,
    s_direct, BesselSumParams, Hyp3f2Source,
};
use crate::closed_form::{
    eval_identity_lhs, eval_identity_rhs, miller_paris, miller_paris_limit, special_case, theorem1, LimitPolicy,
    Theorem1Params,
};
use crate::hypergeom::{sum_3f2, SeriesConfig};
use crate::special_fns::ln_gamma_real;
use crate::{Complex, Error, Result};

const MAX_ATTEMPTS: usize = 1_000_000;
/// Absolute floor below which closed-form comparisons always pass.
pub const CLOSED_FORM_ABS_FLOOR: f64 = 1e-14;
/// Default tolerance of the closed-form suites.
pub const CLOSED_FORM_TOL: f64 = 1e-8;
/// Default absolute tolerance of the Bessel cross-checks.
pub const BESSEL_TOL: f64 = 1e-4;
/// Extrapolation nodes for the a → 1 limit.
pub const LIMIT_EPSILONS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// A rectangle in the complex plane or an explicit list of values.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Rect {
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
    },
    List(Vec<Complex>),
}

impl Region {
    pub fn rect(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Region::Rect {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let ok = match self {
            Region::Rect {
                re_min,
                re_max,
                im_min,
                im_max,
            } => re_max > re_min && im_max >= im_min && [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite()),
            Region::List(v) => !v.is_empty(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("degenerate {name} region")))
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Complex {
        match self {
            Region::Rect {
                re_min,
                re_max,
                im_min,
                im_max,
            } => {
                let re = rng.gen_range(*re_min..*re_max);
                let im = if im_max > im_min { rng.gen_range(*im_min..*im_max) } else { *im_min };
                Complex::new(re, im)
            }
            Region::List(v) => v[rng.gen_range(0..v.len())],
        }
    }
}

/// Description of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub n_values: Vec<usize>,
    pub c_region: Region,
    pub d_region: Region,
    pub samples: usize,
    pub seed: u64,
    /// Minimum of Re(d−c+n) for accepted points.
    pub domain_margin: f64,
    /// Minimum distance of c from the integers 1..=n+1 (and of d from the
    /// non-positive integers).
    pub integer_exclusion_radius: f64,
    /// Terms of the direct Bessel sum in the bessel suite.
    pub bessel_terms: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_values: (0..=8).collect(),
            c_region: Region::rect(-3.0, 4.0, -1.5, 1.5),
            d_region: Region::rect(0.25, 6.0, -1.5, 1.5),
            samples: 200,
            seed: 42,
            domain_margin: 0.75,
            integer_exclusion_radius: 0.05,
            bessel_terms: 100_000,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::InvalidConfig("samples must be >= 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::InvalidConfig("n_values must not be empty".into()));
        }
        if !(self.domain_margin > 0.0) {
            return Err(Error::InvalidConfig("domain_margin must be > 0".into()));
        }
        if !(self.integer_exclusion_radius >= 0.0) {
            return Err(Error::InvalidConfig("integer_exclusion_radius must be >= 0".into()));
        }
        if self.bessel_terms < 1000 {
            return Err(Error::InvalidConfig("bessel_terms must be >= 1000".into()));
        }
        self.c_region.validate("c")?;
        self.d_region.validate("d")
    }

    fn rng(&self, tag: u64, n: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((tag << 16) | n as u64);
        rng
    }

    fn far_from(&self, z: Complex, ints: impl IntoIterator<Item = i64>) -> bool {
        ints.into_iter()
            .all(|j| (z - j as f64).norm() >= self.integer_exclusion_radius)
    }

    fn d_ok(&self, d: Complex) -> bool {
        // only the non-positive integers near the sampled real parts matter
        let lo = d.re.floor().min(0.0) as i64 - 1;
        self.far_from(d, lo..=0)
    }

    /// Draws (c, d) with Re(d−c+n) ≥ margin, c away from 1..=c_excl and d
    /// away from the non-positive integers.
    fn sample_cd(&self, rng: &mut ChaCha8Rng, n: usize, c_excl: usize) -> Result<(Complex, Complex)> {
        for _ in 0..MAX_ATTEMPTS {
            let c = self.c_region.sample(rng);
            let d = self.d_region.sample(rng);
            if (d - c).re + n as f64 >= self.domain_margin && self.far_from(c, 1..=c_excl as i64) && self.d_ok(d) {
                return Ok((c, d));
            }
        }
        Err(Error::InvalidConfig(format!(
            "could not sample an admissible (c, d) for n = {n}; the regions barely meet the domain"
        )))
    }

    /// Theorem-1 points (c, d) for one n.
    pub fn theorem1_points(&self, n: usize) -> Result<Vec<(Complex, Complex)>> {
        let mut rng = self.rng(STREAM_THEOREM1, n);
        (0..self.samples).map(|_| self.sample_cd(&mut rng, n, n + 1)).collect()
    }
}

const STREAM_THEOREM1: u64 = 1;
const STREAM_EPSILON: u64 = 2;
const STREAM_MILLER_PARIS: u64 = 3;
const STREAM_LIMIT: u64 = 4;
const STREAM_EVAL_IDENTITY: u64 = 5;
const STREAM_ORDERS: u64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Theorem1,
    MillerParis,
    Identities,
    Bessel,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::MillerParis => "miller_paris",
            Suite::Identities => "identities",
            Suite::Bessel => "bessel",
            Suite::All => "all",
        }
    }
}

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn param(name: &str, v: Complex) -> (String, Complex) {
    (name.to_string(), v)
}

/// Times `eval` and turns its outcome into a record.
fn timed<F>(suite: Suite, identity: &str, params: Vec<(String, Complex)>, tol: f64, floor: f64, eval: F) -> VerificationRecord
where
    F: FnOnce() -> Result<(Complex, Complex)>,
{
    let start = Instant::now();
    let mut rec = match eval() {
        Ok((reference, candidate)) => {
            VerificationRecord::compare(suite.name(), identity, params, reference, candidate, tol, floor)
        }
        Err(e) => VerificationRecord::failure(suite.name(), identity, params, tol, &e.to_string()),
    };
    rec.wall_time = start.elapsed().as_secs_f64();
    rec
}

fn series_3f2_theorem1(c_: Complex, d: Complex, n: usize) -> Result<Complex> {
    let r = sum_3f2([c(1.0), c(1.0), c_], [d, c(n as f64 + 2.0)], c(1.0), &SeriesConfig::default())?;
    Ok(r.value)
}

/// Runs one suite (or all of them) and returns canonically sorted records.
/// `tol_override` replaces every per-identity tolerance.
pub fn run_suite(suite: Suite, grid: &GridSpec, tol_override: Option<f64>) -> Result<Vec<VerificationRecord>> {
    grid.validate()?;
    let tol = |default: f64| tol_override.unwrap_or(default);
    let mut records = match suite {
        Suite::Theorem1 => theorem1_suite(grid, &tol)?,
        Suite::MillerParis => miller_paris_suite(grid, &tol)?,
        Suite::Identities => identities_suite(grid, &tol)?,
        Suite::Bessel => bessel_suite(grid, &tol)?,
        Suite::All => {
            let mut all = theorem1_suite(grid, &tol)?;
            all.extend(miller_paris_suite(grid, &tol)?);
            all.extend(identities_suite(grid, &tol)?);
            all.extend(bessel_suite(grid, &tol)?);
            all
        }
    };
    sort_canonical(&mut records);
    Ok(records)
}

fn theorem1_suite(grid: &GridSpec, tol: &(dyn Fn(f64) -> f64 + Sync)) -> Result<Vec<VerificationRecord>> {
    let s = Suite::Theorem1;
    let policy = LimitPolicy::default();
    let mut jobs = Vec::new();
    for &n in &grid.n_values {
        for (c_, d) in grid.theorem1_points(n)? {
            jobs.push((n, c_, d));
        }
    }
    let mut out: Vec<VerificationRecord> = jobs
        .par_iter()
        .flat_map_iter(|&(n, c_, d)| {
            let params = || vec![param("n", c(n as f64)), param("c", c_), param("d", d)];
            let p = Theorem1Params::new(c_, d, n);
            let mut recs = vec![timed(s, "theorem1_vs_series", params(), tol(CLOSED_FORM_TOL), CLOSED_FORM_ABS_FLOOR, || {
                Ok((series_3f2_theorem1(c_, d, n)?, theorem1(&p, &policy)?.value))
            })];
            if n <= 1 {
                recs.push(timed(s, "special_vs_theorem1", params(), tol(1e-12), CLOSED_FORM_ABS_FLOOR, || {
                    Ok((theorem1(&p, &policy)?.value, special_case(&p, &policy)?))
                }));
                recs.push(timed(s, "special_vs_series", params(), tol(CLOSED_FORM_TOL), CLOSED_FORM_ABS_FLOOR, || {
                    Ok((series_3f2_theorem1(c_, d, n)?, special_case(&p, &policy)?))
                }));
            }
            recs
        })
        .collect();

    // removable point c = 1, n = 0 through the ε-limit
    let mut rng = grid.rng(STREAM_EPSILON, 0);
    let mut ds = Vec::with_capacity(grid.samples);
    for _ in 0..grid.samples {
        ds.push(sample_d_for_unit_c(grid, &mut rng)?);
    }
    let eps_policy = LimitPolicy::epsilon_limit(1e-5);
    out.par_extend(ds.par_iter().map(|&d| {
        let params = vec![param("n", c(0.0)), param("c", c(1.0)), param("d", d)];
        timed(s, "epsilon_limit_vs_series", params, tol(1e-6), 1e-6, || {
            let p = Theorem1Params::new(c(1.0), d, 0);
            Ok((series_3f2_theorem1(c(1.0), d, 0)?, theorem1(&p, &eps_policy)?.value))
        })
    }));
    Ok(out)
}

fn sample_d_for_unit_c(grid: &GridSpec, rng: &mut ChaCha8Rng) -> Result<Complex> {
    for _ in 0..MAX_ATTEMPTS {
        let d = grid.d_region.sample(rng);
        if d.re - 1.0 >= grid.domain_margin && grid.d_ok(d) {
            return Ok(d);
        }
    }
    Err(Error::InvalidConfig("could not sample d with Re(d-1) >= margin".into()))
}

const MP_PAIRS: [(usize, usize); 9] = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)];

fn miller_paris_suite(grid: &GridSpec, tol: &(dyn Fn(f64) -> f64 + Sync)) -> Result<Vec<VerificationRecord>> {
    let s = Suite::MillerParis;
    let mut jobs = Vec::with_capacity(grid.samples);
    let mut rng = grid.rng(STREAM_MILLER_PARIS, 0);
    'outer: for i in 0..grid.samples {
        let (m, p) = MP_PAIRS[i % MP_PAIRS.len()];
        for _ in 0..MAX_ATTEMPTS {
            let a = grid.c_region.sample(&mut rng);
            let c_ = grid.c_region.sample(&mut rng);
            let d = grid.d_region.sample(&mut rng);
            let excl = 1..=(m + p) as i64;
            // the formula needs Re(d+p-a-c-m) > -1, stricter than series convergence for m > 1
            if (d + p as f64 - a - c_).re - m as f64 >= grid.domain_margin - 1.0
                && grid.far_from(a, excl.clone())
                && grid.far_from(c_, excl)
                && grid.d_ok(d)
            {
                jobs.push((m, p, a, c_, d));
                continue 'outer;
            }
        }
        return Err(Error::InvalidConfig("could not sample an admissible Miller-Paris point".into()));
    }
    let mut out: Vec<VerificationRecord> = jobs
        .par_iter()
        .map(|&(m, p, a, c_, d)| {
            let params = vec![
                param("m", c(m as f64)),
                param("p", c(p as f64)),
                param("a", a),
                param("c", c_),
                param("d", d),
            ];
            timed(s, "miller_paris_vs_series", params, tol(1e-10), CLOSED_FORM_ABS_FLOOR, || {
                let series = sum_3f2([a, c_, c(m as f64)], [d, c((m + p) as f64)], c(1.0), &SeriesConfig::default())?;
                Ok((series.value, miller_paris(a, c_, d, m, p)?))
            })
        })
        .collect();

    let mut limit_jobs = Vec::with_capacity(grid.samples);
    for (i, &n) in grid.n_values.iter().cycle().take(grid.samples).enumerate() {
        let mut rng = grid.rng(STREAM_LIMIT, n);
        // advance to the i-th draw of this stream so points differ across cycles
        let mut point = grid.sample_cd(&mut rng, n, n + 1)?;
        for _ in 0..i / grid.n_values.len() {
            point = grid.sample_cd(&mut rng, n, n + 1)?;
        }
        limit_jobs.push((n, point.0, point.1));
    }
    out.par_extend(limit_jobs.par_iter().map(|&(n, c_, d)| {
        let params = vec![param("n", c(n as f64)), param("c", c_), param("d", d)];
        timed(s, "a_to_1_limit_vs_theorem1", params, tol(1e-7), CLOSED_FORM_ABS_FLOOR, || {
            let t = theorem1(&Theorem1Params::new(c_, d, n), &LimitPolicy::default())?.value;
            Ok((t, miller_paris_limit(c_, d, n, &LIMIT_EPSILONS)?))
        })
    }));
    Ok(out)
}

/// (μ, ν, n) with μ ∈ (0,3) away from integers, ν ∈ [0,3), n from n_values ∩ [0,5].
fn order_points(grid: &GridSpec) -> Result<Vec<(f64, f64, usize)>> {
    let ns: Vec<usize> = grid.n_values.iter().copied().filter(|&n| n <= 5).collect();
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = grid.rng(STREAM_ORDERS, 0);
    let r = grid.integer_exclusion_radius;
    let mut out = Vec::with_capacity(grid.samples);
    for i in 0..grid.samples {
        let mut mu;
        let mut tries = 0;
        loop {
            mu = rng.gen_range(0.0..3.0);
            if (mu - f64::round(mu)).abs() >= r {
                break;
            }
            tries += 1;
            if tries > MAX_ATTEMPTS {
                return Err(Error::InvalidConfig("integer_exclusion_radius leaves no admissible mu".into()));
            }
        }
        let nu = rng.gen_range(0.0..3.0);
        out.push((mu, nu, ns[i % ns.len()]));
    }
    Ok(out)
}

fn identities_suite(grid: &GridSpec, tol: &(dyn Fn(f64) -> f64 + Sync)) -> Result<Vec<VerificationRecord>> {
    let s = Suite::Identities;
    let floor = CLOSED_FORM_ABS_FLOOR;

    let mut eval_jobs = Vec::with_capacity(grid.samples);
    let mut rng = grid.rng(STREAM_EVAL_IDENTITY, 0);
    for i in 0..grid.samples {
        let p = 1 + i % 5;
        let (c_, d) = grid.sample_cd(&mut rng, p - 1, p)?;
        eval_jobs.push((p, c_, d));
    }
    let mut out: Vec<VerificationRecord> = eval_jobs
        .par_iter()
        .map(|&(p, c_, d)| {
            let params = vec![param("p", c(p as f64)), param("c", c_), param("d", d)];
            timed(s, "eval_identity", params, tol(1e-10), floor, || {
                Ok((eval_identity_rhs(c_, d, p)?, eval_identity_lhs(c_, d, p)?))
            })
        })
        .collect();

    let orders = order_points(grid)?;
    out.par_extend(orders.par_iter().flat_map_iter(|&(mu, nu, n)| {
        let params = || vec![param("n", c(n as f64)), param("mu", c(mu)), param("nu", c(nu))];
        let bp = match BesselSumParams::new(mu, nu, 1.0, 1.0, n) {
            Ok(bp) => bp,
            Err(e) => return vec![VerificationRecord::failure(s.name(), "orders", params(), 0.0, &e.to_string())],
        };
        let t1 = Theorem1Params::new(c(1.0 - mu), c(n as f64 + nu + 2.0), n);
        let cfg = SeriesConfig::default();
        let policy = LimitPolicy::default();
        vec![
            timed(s, "eq24_vs_theorem1", params(), tol(1e-10), floor, || {
                Ok((theorem1(&t1, &policy)?.value, c(eq24_3f2(&bp)?)))
            }),
            timed(s, "eq24_vs_series", params(), tol(CLOSED_FORM_TOL), floor, || {
                Ok((series_3f2_theorem1(t1.c, t1.d, n)?, c(eq24_3f2(&bp)?)))
            }),
            timed(s, "delta_series_vs_closed", params(), tol(1e-9), floor, || {
                Ok((
                    c(delta_n_at_1_closed(&bp)?),
                    delta_n_with(&bp, 1.0, &cfg, Hyp3f2Source::Series)?.value,
                ))
            }),
            timed(s, "delta_theorem1_vs_closed", params(), tol(1e-9), floor, || {
                Ok((
                    c(delta_n_at_1_closed(&bp)?),
                    delta_n_with(&bp, 1.0, &cfg, Hyp3f2Source::Theorem1)?.value,
                ))
            }),
            timed(s, "a_b_coefficients", params(), tol(1e-11), 0.0, || worst_ab_pair(&bp)),
            timed(s, "psi_removal", params(), tol(1e-10), floor, || {
                let (l, r) = psi_removal_identity(&bp)?;
                Ok((r, l))
            }),
        ]
    }));
    Ok(out)
}

/// (A_m, B_m/Γ(1+ν)) at χ = 1 for the m ≤ 2n+3 with the largest relative gap.
fn worst_ab_pair(bp: &BesselSumParams) -> Result<(Complex, Complex)> {
    let g = ln_gamma_real(1.0 + bp.nu)?.exp();
    let mut worst = (c(1.0), c(1.0));
    let mut worst_rel = -1.0;
    for m in (0..=2 * bp.n + 3).filter(|&m| m != bp.n) {
        let a = a_coeff(bp, m)?;
        let b = b_coeff(bp, m, 1.0)? / g;
        let rel = (a - b).abs() / a.abs();
        if rel > worst_rel {
            worst_rel = rel;
            worst = (c(a), c(b));
        }
    }
    Ok(worst)
}

/// (μ, ν, n) triples of the equal-argument grid.
pub const BESSEL_ORDERS: [(f64, f64, usize); 3] = [(0.0, 0.0, 0), (0.5, 0.5, 1), (1.0, 0.0, 2)];
/// Arguments a = b of the equal-argument grid.
pub const BESSEL_EQUAL_ARGS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
/// (μ, ν, a, b, n) cases for the unequal-argument expansion.
pub const BESSEL_UNEQUAL_CASES: [(f64, f64, f64, f64, usize); 2] = [(0.0, 0.0, 2.0, 1.0, 0), (0.5, 0.5, 2.0, 1.0, 1)];

fn bessel_suite(grid: &GridSpec, tol: &(dyn Fn(f64) -> f64 + Sync)) -> Result<Vec<VerificationRecord>> {
    let s = Suite::Bessel;
    let t = tol(BESSEL_TOL);
    let mut cases = Vec::new();
    for &(mu, nu, n) in &BESSEL_ORDERS {
        for &a in &BESSEL_EQUAL_ARGS {
            cases.push((BesselSumParams::new(mu, nu, a, a, n)?, true));
        }
    }
    for &(mu, nu, a, b, n) in &BESSEL_UNEQUAL_CASES {
        cases.push((BesselSumParams::new(mu, nu, a, b, n)?, false));
    }
    let terms = grid.bessel_terms;
    Ok(cases
        .par_iter()
        .map(|&(bp, equal)| {
            let params = vec![
                param("mu", c(bp.mu)),
                param("nu", c(bp.nu)),
                param("a", c(bp.a)),
                param("b", c(bp.b)),
                param("n", c(bp.n as f64)),
            ];
            let name = if equal { "equal_vs_direct" } else { "unequal_vs_direct" };
            let cfg = SeriesConfig::default();
            let rec = timed(s, name, params, t, t, || {
                let direct = s_direct(&bp, terms)?.value;
                let expansion = if equal {
                    expansion_equal(&bp, &cfg)?
                } else {
                    expansion_unequal(&bp, &cfg)?
                };
                Ok((c(direct), c(expansion.value)))
            });
            if bp.near_boundary() {
                rec.with_flag("near a+b=2pi")
            } else {
                rec
            }
        })
        .collect())
}
