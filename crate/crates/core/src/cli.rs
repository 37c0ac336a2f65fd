//! Command-line front end. Exit codes: 0 success, 1 a verification case
//! failed, 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};
use rug::Float;
use serde_json::{json, Value};

use crate::error::Error;
use crate::hurwitz;
use crate::oracle::stieltjes_limit;
use crate::precision::{parse_complex, parse_real, render_complex_json, render_real, Complex, PrecisionContext};
use crate::methods::{evaluate, GammaRequest, Method};
use crate::stieltjes::{gamma_ell, StieltjesParams};
use crate::stirling::build_table;
use crate::verify::{run_suite, Suite, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "stieltjes", version, about = "Generalized Stieltjes constants to high precision")]
struct Cli {
    /// Reported decimal digits (at least 15).
    #[arg(long, global = true, env = "STIELTJES_DIGITS", default_value_t = PrecisionContext::DEFAULT_DIGITS,
          value_parser = clap::value_parser!(u32).range(i64::from(PrecisionContext::MIN_DIGITS)..))]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// gamma_l(a) by one of the series methods.
    Gamma {
        #[arg(long, default_value_t = 0)]
        ell: u32,
        /// Complex `a`: `RE+IMi` or `{"re": .., "im": ..}`.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        j_max: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Evaluate at `a + P` and add back the first `P` terms.
        #[arg(long, default_value_t = 0)]
        shift: u32,
        #[arg(long)]
        json: bool,
    },
    /// Reference value from the limit representation.
    Oracle {
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        json: bool,
    },
    /// Hurwitz zeta or its s-derivative.
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 0)]
        deriv: usize,
        #[arg(long)]
        json: bool,
    },
    /// Signed Stirling numbers of the first kind.
    Stirling {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Convergence table over a grid of (m, n).
    Table {
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_enum, default_value = "theorem2")]
        method: Method,
        #[arg(long)]
        m_range: String,
        #[arg(long)]
        n_range: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, required_unless_present = "list")]
        suite: Option<String>,
        #[arg(long)]
        list: bool,
        /// Random cases for sampling suites.
        #[arg(long, default_value_t = VerifyOptions::default().cases)]
        cases: usize,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `argv` (program name first) and runs against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let result = PrecisionContext::new(cli.digits)
        .map_err(Failure::from)
        .and_then(|ctx| dispatch(cli.command, &ctx, out));
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        // a closed pipe downstream (`| head`) is not an error
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, ctx: &PrecisionContext, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Gamma {
            ell,
            a,
            method,
            m,
            n,
            j_max,
            lambda,
            shift,
            json,
        } => {
            let req = GammaRequest {
                ell,
                a: parse_complex(&a, ctx)?,
                method,
                m,
                n,
                j_max,
                lambda: lambda.map(|l| parse_complex(&l, ctx)).transpose()?,
                shift,
            };
            gamma(&req, json, ctx, out)
        }
        Command::Oracle { ell, a, json } => oracle(ell, &parse_complex(&a, ctx)?, json, ctx, out),
        Command::Zeta { s, a, deriv, json } => {
            zeta(&parse_real(&s, ctx)?, &parse_complex(&a, ctx)?, deriv, json, ctx, out)
        }
        Command::Stirling { n_max, format: Format::Csv } => {
            build_table(n_max)?.write_csv(&mut *out)?;
            Ok(0)
        }
        Command::Table {
            ell,
            a,
            method,
            m_range,
            n_range,
            format: Format::Csv,
        } => {
            if method != Method::Theorem2 {
                return Err(usage("table supports --method theorem2 only"));
            }
            let m_range = parse_range(&m_range)?;
            let n_range = parse_range(&n_range)?;
            table(ell, &parse_complex(&a, ctx)?, m_range, n_range, ctx, out)
        }
        Command::Verify {
            suite,
            list,
            cases,
            seed,
            json,
        } => {
            if list {
                for s in Suite::ALL {
                    writeln!(out, "{:<20} {}", s.name(), s.description())?;
                }
                return Ok(0);
            }
            let suite: Suite = suite.expect("clap enforces --suite").parse()?;
            verify(suite, &VerifyOptions { cases, seed }, json, ctx, out)
        }
    }
}

fn reported(z: &Complex, ctx: &PrecisionContext) -> Complex {
    z.with_prec(ctx.report_bits())
}

fn reported_real(x: &Float, ctx: &PrecisionContext) -> String {
    render_real(&ctx.report(x))
}

fn gamma(req: &GammaRequest, json: bool, ctx: &PrecisionContext, out: &mut dyn Write) -> Outcome {
    if req.method == Method::Theorem2 && req.a.add_u32(req.shift).abs() < 1 {
        return Err(usage(format!(
            "--method theorem2 needs |a| >= 1, got |a + shift| = {:.6}; pass --shift P to evaluate at a + P",
            req.a.add_u32(req.shift).abs().to_f64()
        )));
    }
    let res = evaluate(req, ctx)?;
    let (value, remainder, bound, last_term) = (res.value, res.remainder, res.bound, res.last_term_abs);

    if json {
        let mut params = serde_json::Map::new();
        match req.method {
            Method::Theorem2 => {
                params.insert("m".into(), json!(req.m));
                params.insert("n".into(), json!(req.n));
            }
            _ => {
                params.insert("j_max".into(), json!(res.j_max));
            }
        }
        if let Some(lambda) = &req.lambda {
            params.insert("lambda".into(), render_complex_json(&reported(lambda, ctx)));
        }
        params.insert("shift".into(), json!(req.shift));
        let doc = json!({
            "ell": req.ell,
            "a": render_complex_json(&reported(&req.a, ctx)),
            "method": req.method.name(),
            "params": Value::Object(params),
            "value": render_complex_json(&reported(&value, ctx)),
            "remainder": remainder.as_ref().map(|r| render_complex_json(&reported(r, ctx))),
            "bound": bound.as_ref().map(|b| reported_real(b, ctx)),
            "last_term_abs": last_term.as_ref().map(|t| reported_real(t, ctx)),
            "digits": ctx.digits(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        writeln!(out, "value: {}", render_shorthand(&reported(&value, ctx)))?;
        if let Some(r) = &remainder {
            writeln!(out, "remainder: {}", render_shorthand(&reported(r, ctx)))?;
        }
        if let Some(b) = &bound {
            writeln!(out, "bound: {}", reported_real(b, ctx))?;
        }
        if let Some(t) = &last_term {
            writeln!(out, "last_term_abs: {}", reported_real(t, ctx))?;
        }
    }
    Ok(0)
}

/// `RE`, or `RE+IMi` when the imaginary part is non-zero.
fn render_shorthand(z: &Complex) -> String {
    if z.im.is_zero() {
        return render_real(&z.re);
    }
    let im = render_real(&z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", render_real(&z.re))
}

fn oracle(ell: u32, a: &Complex, json: bool, ctx: &PrecisionContext, out: &mut dyn Write) -> Outcome {
    let res = stieltjes_limit(ell, a, ctx)?;
    if json {
        let doc = json!({
            "value": render_complex_json(&reported(&res.value, ctx)),
            "M": res.m,
            "est_error": reported_real(&res.est_error, ctx),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        writeln!(out, "value: {}", render_shorthand(&reported(&res.value, ctx)))?;
        writeln!(out, "M: {}", res.m)?;
        writeln!(out, "est_error: {}", reported_real(&res.est_error, ctx))?;
    }
    Ok(0)
}

fn zeta(s: &Float, a: &Complex, deriv: usize, json: bool, ctx: &PrecisionContext, out: &mut dyn Write) -> Outcome {
    let z = hurwitz::zeta_derivatives(s, a, deriv, ctx)?.swap_remove(deriv);
    if json {
        let doc = json!({
            "value": render_complex_json(&reported(&z.value, ctx)),
            "tail_bound": reported_real(&z.tail_bound, ctx),
            "terms_used": z.terms_used,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        writeln!(out, "value: {}", render_shorthand(&reported(&z.value, ctx)))?;
        writeln!(out, "tail_bound: {}", reported_real(&z.tail_bound, ctx))?;
    }
    Ok(0)
}

/// `A:B`, inclusive; `A > B` is an empty range.
fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, Failure> {
    let bad = || usage(format!("expected a range A:B of non-negative integers, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

fn table(
    ell: u32,
    a: &Complex,
    m_range: RangeInclusive<u32>,
    n_range: RangeInclusive<u32>,
    ctx: &PrecisionContext,
    out: &mut dyn Write,
) -> Outcome {
    writeln!(out, "m,n,value,abs_error_vs_oracle,remainder_abs,bound")?;
    if m_range.is_empty() || n_range.is_empty() {
        return Ok(0);
    }
    let reference = stieltjes_limit(ell, a, ctx)?.value;
    for m in m_range {
        for n in n_range.clone() {
            let comp = gamma_ell(&StieltjesParams::new(ell, a.clone(), m, n)?, ctx)?;
            let err = (&comp.gamma_estimate - &reference).abs();
            writeln!(
                out,
                "{m},{n},{},{:.6e},{:.6e},{:.6e}",
                render_shorthand(&reported(&comp.gamma_estimate, ctx)),
                err.to_f64(),
                comp.remainder.abs().to_f64(),
                comp.bound.to_f64()
            )?;
        }
    }
    Ok(0)
}

fn verify(suite: Suite, opts: &VerifyOptions, json: bool, ctx: &PrecisionContext, out: &mut dyn Write) -> Outcome {
    let report = run_suite(suite, opts, ctx)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"))?;
    } else {
        for c in &report.cases {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {} residual={:.3e} tolerance={:.3e}", c.id, c.residual, c.tolerance)?;
        }
        writeln!(
            out,
            "{}: {} passed, {} failed",
            report.suite, report.summary.passed, report.summary.failed
        )?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert!(matches!(parse_range("1:3"), Ok(r) if r == (1..=3)));
        assert!(matches!(parse_range("5:4"), Ok(r) if r.is_empty()));
        assert!(parse_range("1-3").is_err());
        assert!(parse_range("a:3").is_err());
    }

    #[test]
    fn shorthand_round_trips() {
        let ctx = PrecisionContext::default();
        for (re, im) in [(1.5, 0.0), (1.5, -0.5), (2.0, 1.0), (-3.25, 1e-30)] {
            let z = ctx.complex(re, im);
            let text = render_shorthand(&z);
            assert_eq!(text.ends_with('i'), im != 0.0, "{text}");
            assert_eq!(parse_complex(&text, &ctx).unwrap(), z, "{text}");
        }
    }
}
