//! Reference values for `gamma_l(a)` from the limit
//! `gamma_l(a) = lim_M [ sum_{k=0}^{M} ln^l(k+a)/(k+a) - ln^(l+1)(M+a)/(l+1) ]`,
//! with the tail beyond `M` replaced by Euler–Maclaurin corrections. Shares
//! nothing with the series code apart from the precision layer.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::hurwitz;
use crate::precision::{bernoulli, Complex, PrecisionContext, TruncSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: Complex,
    /// Truncation point of the direct sum.
    pub m: usize,
    /// Magnitude of the last Euler–Maclaurin correction used; heuristic.
    pub est_error: Float,
}

const START_M: usize = 16;
const MAX_M: usize = 1 << 16;

fn check_a(a: &Complex) -> Result<()> {
    if a.re <= 0 {
        return Err(Error::domain(format!("oracle needs Re(a) > 0, got a = {a:?}")));
    }
    Ok(())
}

/// `ln^l(x) / x`.
fn summand(x: &Complex, ell: u32) -> Complex {
    let log = x.ln();
    log.powu(ell) / x
}

/// Euler–Maclaurin tail at `M`: `-f(M)/2 - sum_i B_2i/(2i)! f^(2i-1)(M)`,
/// stopping at the first correction below `eps`. `None` if the asymptotic
/// terms start growing first.
fn tail(z: &Complex, ell: u32, eps: &Float, max_terms: usize) -> Option<(Complex, Float)> {
    let bits = z.prec();
    let len = 2 * max_terms + 1;
    let log = TruncSeries::ln_linear(z, len);
    let f = log.powu(ell).mul(&TruncSeries::recip_linear(z, len));
    let mut acc = -f.coeff(0).div_real(&Float::with_val(bits, 2u32));
    let mut last = Float::with_val(bits, f64::INFINITY);
    for i in 1..=max_terms {
        // B_2i/(2i)! * (2i-1)! c_(2i-1) = B_2i/(2i) * c_(2i-1)
        let b = bernoulli(2 * i) / Integer::from(2 * i);
        let term = f.coeff(2 * i - 1).scale(&Float::with_val(bits, &b));
        let size = term.abs();
        if size > last {
            return None;
        }
        acc -= &term;
        if size < *eps {
            return Some((acc, size));
        }
        last = size;
    }
    None
}

/// `gamma_l(a)` from the accelerated limit representation.
pub fn stieltjes_limit(ell: u32, a: &Complex, ctx: &PrecisionContext) -> Result<OracleResult> {
    check_a(a)?;
    let bits = ctx.bits();
    let a = a.with_prec(bits);
    let eps = Float::with_val(bits, 10u32).pow(-(ctx.working_digits() as i32));
    let mut partial = Complex::zero(bits);
    let mut next_k = 0usize;
    let mut m = START_M;
    while m <= MAX_M {
        while next_k <= m {
            partial += summand(&a.add_u32(next_k as u32), ell);
            next_k += 1;
        }
        let z = a.add_u32(m as u32);
        let max_terms = ((std::f64::consts::PI * m as f64) as usize).clamp(2, 200);
        if let Some((corr, last)) = tail(&z, ell, &eps, max_terms) {
            let antideriv = z.ln().powu(ell + 1).div_real(&Float::with_val(bits, ell + 1));
            let value = &partial - &antideriv + corr;
            return Ok(OracleResult {
                value,
                m,
                est_error: last,
            });
        }
        m *= 2;
    }
    Err(Error::Precision(format!(
        "oracle did not reach 1e-{} by M = {MAX_M}",
        ctx.working_digits()
    )))
}

/// Weights `w_i` with `p^(l)(0) = sum_i w_i p(i)` for every polynomial `p`
/// of degree below `k`, nodes `i = 1..=k`.
fn extrapolation_weights(k: usize, ell: usize) -> Vec<Rational> {
    (1..=k as i64)
        .map(|i| {
            // coefficients of prod_{j != i} (u - j), lowest degree first
            let mut poly = vec![Integer::from(1)];
            let mut denom = Integer::from(1);
            for j in (1..=k as i64).filter(|&j| j != i) {
                let mut next = vec![Integer::new(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= Integer::from(c * j);
                }
                poly = next;
                denom *= i - j;
            }
            let fact = Integer::from(Integer::factorial(ell as u32));
            Rational::from((Integer::from(&poly[ell] * &fact), denom))
        })
        .collect()
}

/// `(-1)^l g^(l)(1)` with `g(s) = zeta(s, a) - 1/(s-1)`, by polynomial
/// extrapolation of `g` sampled at `s = 1 + i h`, `i = 1..=l+8`.
pub fn laurent_stencil(ell: u32, a: &Complex, h: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    check_a(a)?;
    if *h <= 0 {
        return Err(Error::domain("stencil step h must be positive"));
    }
    let points = ell as usize + 8;
    let weights = extrapolation_weights(points, ell as usize);
    // the pole subtraction loses ~log10(1/h) digits and the stencil
    // amplifies rounding by h^-l * sum |w_i|; carry that many extra digits
    let weight_mass: f64 = weights.iter().map(|w| w.to_f64().abs()).sum();
    let lost = -h.to_f64().log10() * f64::from(ell + 1) + weight_mass.log10();
    let local = PrecisionContext::with_guard(ctx.digits(), ctx.guard() + lost.max(0.0).ceil() as u32 + 2)?;
    let ctx = &local;
    let bits = ctx.bits();
    let h = Float::with_val(bits, h);
    let a = a.with_prec(bits);
    let mut acc = Complex::zero(bits);
    for (i, w) in (1..=points as u32).zip(&weights) {
        let offset = Float::with_val(bits, &h * i);
        let s = Float::with_val(bits, &offset + 1u32);
        let z = hurwitz::zeta(&s, &a, ctx)?;
        let g = z.value.add_real(&-(Float::with_val(bits, 1u32) / &offset));
        acc += g.scale(&Float::with_val(bits, w));
    }
    let scale = Float::with_val(bits, h.pow(-(ell as i32)));
    let mut out = acc.scale(&scale);
    if ell % 2 == 1 {
        out = -out;
    }
    Ok(out)
}

/// `|laurent_stencil - stieltjes_limit|`; a loose independent sanity check.
pub fn laurent_cross_check(
    ell: u32,
    a: &Complex,
    h: &Float,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let stencil = laurent_stencil(ell, a, h, ctx)?.with_prec(ctx.bits());
    let limit = stieltjes_limit(ell, a, ctx)?;
    Ok((stencil - limit.value).abs())
}

/// Default stencil step `10^(-digits/3)`.
pub fn default_step(ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    Float::with_val(bits, 10u32).pow(-(ctx.digits() as i32 / 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    const GAMMA1: f64 = -0.072_815_845_483_676_72;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn euler(bits: u32) -> Float {
        Float::with_val(bits, Constant::Euler)
    }

    #[test]
    fn euler_constant() {
        let c = ctx();
        let r = stieltjes_limit(0, &c.complex(1.0, 0.0), &c).unwrap();
        assert!((r.value.re.clone() - euler(c.bits())).abs().to_f64() < 1e-38);
        assert!(r.value.im.is_zero());
        assert!(r.est_error.to_f64() <= c.tolerance(5));
    }

    #[test]
    fn shifted_euler_constant() {
        let c = ctx();
        let r = stieltjes_limit(0, &c.complex(2.0, 0.0), &c).unwrap();
        let expected = euler(c.bits()) - 1u32;
        assert!((r.value.re - expected).abs().to_f64() < 1e-38);
    }

    #[test]
    fn first_stieltjes_constant() {
        let c = ctx();
        let r = stieltjes_limit(1, &c.complex(1.0, 0.0), &c).unwrap();
        assert!((r.value.re.to_f64() - GAMMA1).abs() < 1e-16);
        // gamma_1 = -0.07281584548367672486058637587490131913773...
        let reference = Float::parse("-0.07281584548367672486058637587490131913773").unwrap();
        let reference = Float::with_val(c.bits(), reference);
        assert!((r.value.re - reference).abs().to_f64() < 1e-33);
    }

    #[test]
    fn half_shift() {
        let c = ctx();
        let lo = stieltjes_limit(0, &c.complex(0.5, 0.0), &c).unwrap();
        let hi = stieltjes_limit(0, &c.complex(1.5, 0.0), &c).unwrap();
        assert!(((lo.value - hi.value).re - 2u32).abs().to_f64() < 1e-37);
    }

    #[test]
    fn complex_shift_recurrence() {
        let c = ctx();
        let a = c.complex(1.5, 0.5);
        for ell in 0..3 {
            let lo = stieltjes_limit(ell, &a, &c).unwrap();
            let hi = stieltjes_limit(ell, &a.add_u32(1), &c).unwrap();
            let corr = a.ln().powu(ell) / &a;
            assert!((lo.value - hi.value - corr).abs().to_f64() < 1e-36, "l={ell}");
        }
    }

    #[test]
    fn rejects_bad_domain() {
        let c = ctx();
        assert!(stieltjes_limit(0, &c.complex(0.0, 1.0), &c).is_err());
        assert!(stieltjes_limit(0, &c.complex(-1.0, 0.0), &c).is_err());
    }

    #[test]
    fn extrapolation_weights_are_exact() {
        // value extrapolation to 0 from nodes 1, 2: 2 p(1) - p(2)
        let w = extrapolation_weights(2, 0);
        assert_eq!(w, vec![Rational::from(2), Rational::from(-1)]);
        // derivative of a cubic from 4 nodes is exact
        let w = extrapolation_weights(4, 1);
        let p = |u: i64| Rational::from(u * u * u - 3 * u * u + 5 * u + 7);
        let d: Rational = w.iter().zip(1..).map(|(w, u)| w * p(u)).sum();
        assert_eq!(d, 5);
    }

    #[test]
    fn laurent_examples() {
        let c = ctx();
        let one = c.complex(1.0, 0.0);
        let h6 = Float::with_val(c.bits(), 1e-6);
        let h5 = Float::with_val(c.bits(), 1e-5);
        assert!(laurent_cross_check(0, &one, &h6, &c).unwrap().to_f64() < 1e-8);
        assert!(laurent_cross_check(1, &one, &h5, &c).unwrap().to_f64() < 1e-6);
        assert!(laurent_cross_check(0, &c.complex(2.0, 0.0), &h6, &c).unwrap().to_f64() < 1e-8);
        let h = default_step(&c);
        assert!(laurent_cross_check(2, &one, &h, &c).unwrap().to_f64() < 1e-10);
    }
}
