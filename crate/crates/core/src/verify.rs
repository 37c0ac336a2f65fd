//! Numerical verification suites. Each suite returns one residual per case
//! together with the tolerance it is held to; tolerances tied to working
//! precision scale with `digits`, rate and bound checks do not.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::calibration::{decay_grid, exactness_grid, GridPoint, REMAINDER_C};
use crate::error::{Error, Result};
use crate::hurwitz;
use crate::oracle::stieltjes_limit;
use crate::pade::{a_integral, a_sum, PadeIdentityCase};
use crate::precision::{least_squares_slope, Complex, PrecisionContext};
use crate::stieltjes::{
    euler_gamma_formula, gamma1_odd_zeta, gamma_ell, lambda_i_identities, lambda_series,
    remainder_bound, zero_sum_identity, StieltjesParams,
};
use crate::stirling::{adell_bound_check, build_table, check_generating_function, check_sn1_sn2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Theorem1,
    Theorem2Exactness,
    Stirling,
    Lemma2Envelope,
    DecayRates,
    LambdaIdentities,
    Gamma1,
    ZeroSum,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Theorem1,
        Suite::Theorem2Exactness,
        Suite::Stirling,
        Suite::Lemma2Envelope,
        Suite::DecayRates,
        Suite::LambdaIdentities,
        Suite::Gamma1,
        Suite::ZeroSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2Exactness => "theorem2-exactness",
            Suite::Stirling => "stirling",
            Suite::Lemma2Envelope => "lemma2-envelope",
            Suite::DecayRates => "decay-rates",
            Suite::LambdaIdentities => "lambda-identities",
            Suite::Gamma1 => "gamma1",
            Suite::ZeroSum => "zero-sum",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Theorem1 => "finite zeta sum equals the Beta-weighted integral (random cases)",
            Suite::Theorem2Exactness => "truncated expansion plus remainder reproduces the oracle; remainder envelope",
            Suite::Stirling => "Stirling table: s(n,1), s(n,2), generating function, growth bound",
            Suite::Lemma2Envelope => "|zeta^(r,0)(j, a+x)| <= 2^r zeta(j-r, Re a + x)",
            Suite::DecayRates => "remainder decay in m and n, Euler-gamma sweep, remainder envelope",
            Suite::LambdaIdentities => "lambda-family series and the real/imaginary split at lambda = i",
            Suite::Gamma1 => "gamma_1 as a sum over zeta'(2j+1)/(2j+1)",
            Suite::ZeroSum => "partial sums of sum H_(j-1)/j (zeta(j,2) + (-1)^(j-1) zeta(j))",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or(Error::Parse {
                what: "suite",
                input: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyCase {
    pub id: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerifyCase {
    /// Passes iff `residual <= tolerance` (NaN fails).
    pub fn new(id: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub digits: u32,
    pub cases: Vec<VerifyCase>,
    pub summary: Summary,
}

impl VerifyReport {
    fn new(suite: Suite, ctx: &PrecisionContext, cases: Vec<VerifyCase>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        Self {
            suite: suite.name().to_string(),
            digits: ctx.digits(),
            summary: Summary {
                passed,
                failed: cases.len() - passed,
            },
            cases,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn case(&self, id: &str) -> Option<&VerifyCase> {
        self.cases.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Number of random cases for suites that sample.
    pub cases: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { cases: 50, seed: 20_240_917 }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions, ctx: &PrecisionContext) -> Result<VerifyReport> {
    let cases = match suite {
        Suite::Theorem1 => theorem1(opts, ctx)?,
        Suite::Theorem2Exactness => theorem2_exactness(ctx)?,
        Suite::Stirling => stirling(ctx)?,
        Suite::Lemma2Envelope => lemma2_envelope(ctx)?,
        Suite::DecayRates => decay_rates(ctx)?,
        Suite::LambdaIdentities => lambda_identities(ctx)?,
        Suite::Gamma1 => gamma1(ctx)?,
        Suite::ZeroSum => zero_sum(ctx)?,
    };
    Ok(VerifyReport::new(suite, ctx, cases))
}

fn f(x: &Float) -> f64 {
    x.to_f64()
}

/// Random identity case with `n, m <= 8`, `sigma in (1, 6]`, `Re a in [1, 3]`,
/// `Re p in [-0.5, 1]`, so `Re(a + p) >= 0.5`.
pub fn random_identity_case(rng: &mut impl Rng, ctx: &PrecisionContext) -> Result<PadeIdentityCase> {
    let n = rng.random_range(0..=8);
    let m = rng.random_range(0..=8);
    let a = ctx.complex(rng.random_range(1.0..=3.0), rng.random_range(-1.0..=1.0));
    let p = ctx.complex(rng.random_range(-0.5..=1.0), rng.random_range(-0.8..=0.8));
    let sigma = ctx.real(6.0 - rng.random_range(0.0..5.0));
    PadeIdentityCase::new(n, m, p, sigma, a)
}

fn theorem1(opts: &VerifyOptions, ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tol = ctx.tolerance(8);
    (0..opts.cases)
        .map(|i| {
            let case = random_identity_case(&mut rng, ctx)?;
            let residual = (a_sum(&case, ctx)? - a_integral(&case, ctx)?).abs();
            let id = format!(
                "case{i}:n={},m={},sigma={:.4},a={:?},p={:?}",
                case.n,
                case.m,
                f(&case.sigma),
                case.a.to_f64(),
                case.p.to_f64()
            );
            Ok(VerifyCase::new(id, f(&residual), tol))
        })
        .collect()
}

fn params(point: GridPoint, ctx: &PrecisionContext) -> Result<StieltjesParams> {
    let (ell, re, im, m, n) = point;
    StieltjesParams::new(ell, ctx.complex(re, im), m, n)
}

fn point_id(point: GridPoint) -> String {
    let (ell, re, im, m, n) = point;
    format!("l={ell},a={re}{im:+}i,m={m},n={n}")
}

/// `|R| <= envelope` with the frozen constant, as a ratio against 1.
fn envelope_case(point: GridPoint, remainder: &Complex, ctx: &PrecisionContext) -> Result<VerifyCase> {
    let p = params(point, ctx)?;
    let bound = remainder_bound(&p, &ctx.real(REMAINDER_C), ctx)?.envelope;
    let ratio = remainder.abs() / bound;
    Ok(VerifyCase::new(format!("envelope:{}", point_id(point)), f(&ratio), 1.0))
}

fn theorem2_exactness(ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    let bits = ctx.bits();
    let tol = ctx.tolerance(10);
    let mut oracles: HashMap<(u32, u64, u64), Complex> = HashMap::new();
    let mut out = Vec::new();
    for point in exactness_grid() {
        let (ell, re, im, ..) = point;
        let key = (ell, re.to_bits(), im.to_bits());
        if let std::collections::hash_map::Entry::Vacant(e) = oracles.entry(key) {
            e.insert(stieltjes_limit(ell, &ctx.complex(re, im), ctx)?.value);
        }
        let comp = gamma_ell(&params(point, ctx)?, ctx)?;
        let err = (&comp.gamma_estimate - &oracles[&key]).abs();
        out.push(VerifyCase::new(format!("exact:{}", point_id(point)), f(&err), tol));
        out.push(envelope_case(point, &comp.remainder, ctx)?);
    }
    // closed form: l = 0, a = 1, m = 1, n = 0 gives T = 1, R = gamma - 1
    let comp = gamma_ell(&params((0, 1.0, 0.0, 1, 0), ctx)?, ctx)?;
    let one = Complex::one(bits);
    let euler = Float::with_val(bits, Constant::Euler);
    let r_expected = Complex::from_real(euler - 1u32);
    let tight = ctx.tolerance(5);
    out.push(VerifyCase::new("closed-form:truncated", f(&(&comp.truncated - &one).abs()), tight));
    out.push(VerifyCase::new("closed-form:remainder", f(&(&comp.remainder - &r_expected).abs()), tight));
    Ok(out)
}

fn stirling(ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    const N_MAX: usize = 200;
    let table = build_table(N_MAX + 1)?;
    let rows: Vec<_> = check_sn1_sn2(&table).rows.into_iter().filter(|r| r.n <= N_MAX).collect();
    let sn1_bad = rows.iter().filter(|r| !r.sn1_ok).count();
    let sn2_bad = rows.iter().filter(|r| !r.sn2_ok).count();
    let mut out = vec![
        VerifyCase::new(format!("sn1:n<={N_MAX}:mismatches"), sn1_bad as f64, 0.0),
        VerifyCase::new(format!("sn2:n<={N_MAX}:mismatches"), sn2_bad as f64, 0.0),
    ];
    let tol = ctx.tolerance(15);
    for k in 1..=3 {
        for x in [-0.5, 0.5] {
            let r = check_generating_function(&table, k, &ctx.real(x), 60, ctx)?;
            out.push(VerifyCase::new(format!("genfun:k={k},x={x},J=60"), f(&r), tol));
        }
    }
    // worst lhs/rhs ratio over all admissible (j, l)
    let mut worst = (0.0f64, 0usize, 0usize);
    for j in 2..=N_MAX {
        for ell in 1..j {
            let check = adell_bound_check(&table, j, ell, ctx)?;
            let ratio = f(&(Float::with_val(ctx.bits(), &check.lhs) / &check.rhs));
            if ratio > worst.0 {
                worst = (ratio, j, ell);
            }
        }
    }
    out.push(VerifyCase::new(
        format!("growth-bound:j<={N_MAX}:worst at j={},l={}", worst.1, worst.2),
        worst.0,
        1.0,
    ));
    Ok(out)
}

fn lemma2_envelope(ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    let mut out = Vec::new();
    for (re, im) in [(1.0, 0.0), (2.0, 0.0), (1.0, 1.0)] {
        let a = ctx.complex(re, im);
        for r in 0..=3usize {
            for j in (r as u32 + 2)..=12 {
                for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    let (lhs, rhs) = hurwitz::derivative_envelope(r, j, &a, &ctx.real(x), ctx)?;
                    let id = format!("r={r},j={j},a={re}{im:+}i,x={x}");
                    out.push(VerifyCase::new(id, f(&(lhs / rhs)), 1.0));
                }
            }
        }
    }
    Ok(out)
}

/// Slope limit for `ln|R|` against `m` at `Re a = 2`: `-ln 3 + 0.05`.
pub const M_SLOPE_LIMIT: f64 = -1.048_612_288_668_109_7;
/// Slope limit for `ln|R|` against `n` at `Re a = 2`, and for the
/// Euler-gamma sweep: `-ln 2 + 0.05`.
pub const N_SLOPE_LIMIT: f64 = -0.643_147_180_559_945_3;

fn decay_rates(ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    let mut out = Vec::new();
    // keyed by (l, Re a bits, m, n); the decay grid is real
    let mut remainders: HashMap<(u32, u64, u32, u32), f64> = HashMap::new();
    for point in decay_grid() {
        let comp = gamma_ell(&params(point, ctx)?, ctx)?;
        out.push(envelope_case(point, &comp.remainder, ctx)?);
        let (ell, re, _, m, n) = point;
        remainders.insert((ell, re.to_bits(), m, n), f(&comp.remainder.abs()));
    }
    let r_at = |ell: u32, a: f64, m: u32, n: u32| remainders[&(ell, a.to_bits(), m, n)];

    for ell in 0..=1u32 {
        let pts: Vec<_> = (2..=16).map(|m| (f64::from(m), r_at(ell, 2.0, m, 2).ln())).collect();
        out.push(VerifyCase::new(format!("m-slope:l={ell},a=2,n=2"), least_squares_slope(&pts), M_SLOPE_LIMIT));
        let pts: Vec<_> = (2..=16).map(|n| (f64::from(n), r_at(ell, 2.0, 2, n).ln())).collect();
        out.push(VerifyCase::new(format!("n-slope:l={ell},a=2,m=2"), least_squares_slope(&pts), N_SLOPE_LIMIT));
        // C' fitted on n in [10, 20] must keep covering n |R| up to n = 40
        let scaled = |n: u32| f64::from(n) * r_at(ell, 1.0, 2, n);
        let c_fit = (10..=20).map(scaled).fold(0.0, f64::max);
        let worst = (10..=40).map(scaled).fold(0.0, f64::max);
        out.push(VerifyCase::new(format!("inverse-n:l={ell},a=1,m=2"), worst / c_fit, 1.0));
    }

    // a = 1, l = 0: m = n sweep of the Euler-gamma formula
    let bits = ctx.bits();
    let euler = Float::with_val(bits, Constant::Euler);
    let errors: Vec<(u32, f64)> = (2..=25)
        .map(|m| {
            let (value, _eps) = euler_gamma_formula(m, m, ctx)?;
            Ok((m, f(&(value - &euler).abs())))
        })
        .collect::<Result<_>>()?;
    let increases = errors
        .windows(2)
        .filter(|w| w[0].0 >= 4 && w[1].1 >= w[0].1)
        .count();
    out.push(VerifyCase::new("euler-gamma:increases beyond m=4", increases as f64, 0.0));
    let pts: Vec<_> = errors.iter().map(|&(m, e)| (f64::from(m), e.ln())).collect();
    out.push(VerifyCase::new("euler-gamma:slope", least_squares_slope(&pts), N_SLOPE_LIMIT));
    Ok(out)
}

fn lambda_identities(ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    let mut out = Vec::new();
    let two = ctx.complex(2.0, 0.0);
    let lambdas = [("0.5", ctx.complex(0.5, 0.0)), ("1", ctx.complex(1.0, 0.0)), ("2", ctx.complex(2.0, 0.0)), ("i", ctx.complex(0.0, 1.0))];
    for ell in 0..=1 {
        let oracle = stieltjes_limit(ell, &two, ctx)?.value;
        for (name, lambda) in &lambdas {
            let est = lambda_series(ell, &two, lambda, 40, ctx)?;
            let err = (&est.value - &oracle).abs();
            out.push(VerifyCase::new(format!("series:l={ell},a=2,lambda={name},J=40"), f(&err), ctx.tolerance(18)));
            if *name == "i" {
                let im = Float::with_val(ctx.bits(), est.value.im.abs_ref());
                out.push(VerifyCase::new(format!("imag-part:l={ell},a=2,lambda=i,J=40"), f(&im), ctx.tolerance(10)));
            }
        }
    }
    for ell in 0..=1 {
        for a in [2.0, 3.0] {
            let (re, im) = lambda_i_identities(ell, &ctx.real(a), 24, ctx)?;
            out.push(VerifyCase::new(format!("split-real:l={ell},a={a},J=24"), f(&re), ctx.tolerance(15)));
            out.push(VerifyCase::new(format!("split-imag:l={ell},a={a},J=24"), f(&im), ctx.tolerance(15)));
        }
    }
    Ok(out)
}

fn gamma1(ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    let bits = ctx.bits();
    let one = Complex::one(bits);
    let oracle = stieltjes_limit(1, &one, ctx)?.value.re;
    let est = gamma1_odd_zeta(30, ctx)?.value.re;
    let mut out = vec![VerifyCase::new("value:J=30", f(&(est - &oracle).abs()), ctx.tolerance(15))];
    // partial-sum errors e_J and their successive ratios
    let mut partial = Float::new(bits);
    let mut errors = Vec::new();
    for j in 1..=30u32 {
        partial += hurwitz::zeta_deriv(1, 2 * j + 1, &one, ctx)?.value.re / (2 * j + 1);
        errors.push((j, Float::with_val(bits, &partial - &oracle).abs()));
    }
    for w in errors.windows(2).filter(|w| w[0].0 >= 5) {
        let ratio = Float::with_val(bits, &w[1].1 / &w[0].1);
        out.push(VerifyCase::new(format!("ratio:J={}", w[1].0), f(&ratio), 0.25));
    }
    Ok(out)
}

fn zero_sum(ctx: &PrecisionContext) -> Result<Vec<VerifyCase>> {
    (20..=60)
        .map(|j| {
            let s = zero_sum_identity(j, ctx)?;
            let tol = 10.0 * 2f64.powi(-(j as i32));
            Ok(VerifyCase::new(format!("J={j}"), f(&s).abs(), tol))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn case_pass_rule() {
        assert!(VerifyCase::new("x", 1e-30, 1e-22).pass);
        assert!(!VerifyCase::new("x", 1e-20, 1e-22).pass);
        assert!(!VerifyCase::new("x", f64::NAN, 1.0).pass);
    }

    #[test]
    fn random_cases_are_reproducible() {
        let ctx = PrecisionContext::default();
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..5).map(|_| random_identity_case(&mut rng, &ctx).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn small_theorem1_run_passes() {
        let ctx = PrecisionContext::default();
        let opts = VerifyOptions { cases: 4, seed: 1 };
        let report = run_suite(Suite::Theorem1, &opts, &ctx).unwrap();
        assert_eq!(report.cases.len(), 4);
        assert!(report.all_pass(), "{report:?}");
    }
}
