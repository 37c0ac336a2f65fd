//! One entry point for every way of computing `gamma_l(a)`, shared by the
//! command line and the Python bindings.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{Complex, PrecisionContext};
use crate::stieltjes::{
    gamma1_odd_zeta, gamma_ell, lambda_series, series_m_infinity, series_n_infinity, shift_accelerate,
    StieltjesParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Method {
    /// Finite expansion in `(m, n)` plus the exact remainder.
    Theorem2,
    /// Series from `m -> oo`.
    MInf,
    /// Series from `n -> oo`.
    NInf,
    /// One-parameter family of series in `lambda`.
    Lambda,
    /// `gamma_1(1)` from `zeta'(2j+1)`.
    Gamma1Odd,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Theorem2, Method::MInf, Method::NInf, Method::Lambda, Method::Gamma1Odd];

    pub fn name(self) -> &'static str {
        match self {
            Method::Theorem2 => "theorem2",
            Method::MInf => "m-inf",
            Method::NInf => "n-inf",
            Method::Lambda => "lambda",
            Method::Gamma1Odd => "gamma1-odd",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or(Error::Parse {
            what: "method",
            input: s.to_string(),
        })
    }
}

pub const DEFAULT_J_MAX: u32 = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct GammaRequest {
    pub ell: u32,
    pub a: Complex,
    pub method: Method,
    /// Required by `theorem2`, rejected elsewhere.
    pub m: Option<u32>,
    pub n: Option<u32>,
    /// Series length; [`DEFAULT_J_MAX`] if unset. Rejected by `theorem2`.
    pub j_max: Option<u32>,
    /// Required by `lambda`, rejected elsewhere.
    pub lambda: Option<Complex>,
    /// Evaluate at `a + shift` and add back the first `shift` terms.
    pub shift: u32,
}

impl GammaRequest {
    pub fn new(ell: u32, a: Complex, method: Method) -> Self {
        Self {
            ell,
            a,
            method,
            m: None,
            n: None,
            j_max: None,
            lambda: None,
            shift: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaOutput {
    pub value: Complex,
    /// Exact remainder, `theorem2` only.
    pub remainder: Option<Complex>,
    /// Calibrated envelope for the remainder, `theorem2` only.
    pub bound: Option<Float>,
    /// Last series term, series methods only.
    pub last_term_abs: Option<Float>,
    /// Series length used, series methods only.
    pub j_max: Option<u32>,
}

fn check_flags(req: &GammaRequest) -> Result<()> {
    let finite = req.m.is_some() || req.n.is_some();
    match req.method {
        Method::Theorem2 if req.j_max.is_some() || req.lambda.is_some() => {
            Err(Error::domain("j_max and lambda do not apply to theorem2"))
        }
        Method::Theorem2 => Ok(()),
        _ if finite => Err(Error::domain(format!("m and n apply to theorem2 only, not {}", req.method))),
        Method::Lambda => Ok(()),
        _ if req.lambda.is_some() => Err(Error::domain("lambda applies to the lambda method only")),
        _ => Ok(()),
    }
}

/// Computes `gamma_l(a)` by the requested method.
pub fn evaluate(req: &GammaRequest, ctx: &PrecisionContext) -> Result<GammaOutput> {
    check_flags(req)?;
    let target = req.a.add_u32(req.shift);
    let mut out = GammaOutput {
        value: Complex::zero(ctx.bits()),
        remainder: None,
        bound: None,
        last_term_abs: None,
        j_max: None,
    };
    let j_max = req.j_max.unwrap_or(DEFAULT_J_MAX);
    let series = match req.method {
        Method::Theorem2 => {
            let (Some(m), Some(n)) = (req.m, req.n) else {
                return Err(Error::domain("theorem2 needs m and n"));
            };
            let comp = gamma_ell(&StieltjesParams::new(req.ell, target, m, n)?, ctx)?;
            out.remainder = Some(comp.remainder);
            out.bound = Some(comp.bound);
            out.value = comp.gamma_estimate;
            None
        }
        Method::MInf => Some(series_m_infinity(req.ell, &target, j_max, ctx)?),
        Method::NInf => Some(series_n_infinity(req.ell, &target, j_max, ctx)?),
        Method::Lambda => {
            let lambda = req.lambda.as_ref().ok_or_else(|| Error::domain("lambda method needs lambda"))?;
            Some(lambda_series(req.ell, &target, lambda, j_max, ctx)?)
        }
        Method::Gamma1Odd => {
            if req.ell != 1 || req.a != Complex::one(req.a.prec()) || req.shift != 0 {
                return Err(Error::domain("gamma1-odd computes gamma_1(1) only: l = 1, a = 1, no shift"));
            }
            Some(gamma1_odd_zeta(j_max, ctx)?)
        }
    };
    if let Some(res) = series {
        out.value = res.value;
        out.last_term_abs = Some(res.last_term_abs);
        out.j_max = Some(j_max);
    }
    out.value += shift_accelerate(req.ell, &req.a, req.shift, ctx)?;
    Ok(out)
}
