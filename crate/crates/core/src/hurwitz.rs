//! Hurwitz zeta `zeta(s, a) = sum_{k>=0} (k+a)^-s` and its s-derivatives
//! for real `s > 1` and complex `a` with `Re(a) > 0`.
//!
//! The first `N` terms are summed directly and the tail is replaced by the
//! Euler–Maclaurin expansion with `M` Bernoulli corrections. All derivative
//! orders are produced at once by running the computation on a truncated
//! power series in `s`. The omitted Euler–Maclaurin remainder is bounded by
//! `|B_2M| <= 4 (2M)! / (2 pi)^2M`; for derivative orders `r >= 1` the bound
//! at complex `s'` on a circle of radius `rho` around `s` is carried over by
//! Cauchy's estimate.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{
    bernoulli, factorial, gauss_legendre_unit, Complex, PrecisionContext, TruncSeries,
};

/// A zeta (or derivative) value with a rigorous bound on its truncation error.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaValue {
    pub value: Complex,
    pub tail_bound: Float,
    pub terms_used: usize,
}

#[derive(Debug, Clone, Copy)]
struct Plan {
    direct: usize,
    corrections: usize,
}

const MAX_CORRECTIONS: usize = 400;

fn derivative_radius(s: f64) -> f64 {
    0.5f64.min((s - 1.0) / 2.0)
}

/// Natural log of the remainder bound for derivative order `r`, given
/// `ln (x)_2M` with `x = s` for `r = 0` and `x = s + rho` otherwise.
fn ln_remainder_bound_with(s: f64, re_a: f64, n: usize, m: usize, r: usize, ln_poch: f64) -> f64 {
    let shift = re_a + n as f64;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mf = m as f64;
    if r == 0 {
        return 4f64.ln() + ln_poch - 2.0 * mf * two_pi.ln() + (1.0 - s - 2.0 * mf) * shift.ln()
            - (s + 2.0 * mf - 1.0).ln();
    }
    let rho = derivative_radius(s);
    let ln_fact: f64 = (1..=r).map(|i| (i as f64).ln()).sum();
    ln_fact - r as f64 * rho.ln() + 4f64.ln() + ln_poch - 2.0 * mf * two_pi.ln()
        + rho * std::f64::consts::FRAC_PI_2
        + (1.0 - (s - rho) - 2.0 * mf) * shift.ln()
        - (s - rho + 2.0 * mf - 1.0).ln()
}

fn ln_remainder_bound(s: f64, re_a: f64, n: usize, m: usize, r: usize) -> f64 {
    let x = if r == 0 { s } else { s + derivative_radius(s) };
    let ln_poch: f64 = (0..2 * m).map(|i| (x + i as f64).ln()).sum();
    ln_remainder_bound_with(s, re_a, n, m, r, ln_poch)
}

/// Worst-order bound minimized over `M`. The log bound is convex in `M`
/// (its increments `ln((x+2M)(x+2M+1)) - 2 ln(2 pi (Re a + N))` grow), so
/// the scan stops at the first increase.
fn best_corrections(s: f64, re_a: f64, n: usize, max_order: usize) -> (usize, f64) {
    let rho = derivative_radius(s);
    let (mut lp0, mut lp1) = (0.0f64, 0.0f64);
    let mut best = (0usize, f64::INFINITY);
    for m in 1..=MAX_CORRECTIONS {
        let k = (2 * m - 2) as f64;
        lp0 += (s + k).ln() + (s + k + 1.0).ln();
        lp1 += (s + rho + k).ln() + (s + rho + k + 1.0).ln();
        let worst = (0..=max_order)
            .map(|r| ln_remainder_bound_with(s, re_a, n, m, r, if r == 0 { lp0 } else { lp1 }))
            .fold(f64::NEG_INFINITY, f64::max);
        if worst >= best.1 {
            break;
        }
        best = (m, worst);
    }
    best
}

fn plan(s: f64, re_a: f64, max_order: usize, ctx: &PrecisionContext) -> Plan {
    let target = -(f64::from(ctx.working_digits())) * std::f64::consts::LN_10;
    let mut n = 1usize;
    loop {
        let (m, ln_bound) = best_corrections(s, re_a, n, max_order);
        if ln_bound <= target {
            return Plan {
                direct: n,
                corrections: m,
            };
        }
        n += 1;
    }
}

fn check_domain(s: &Float, a: &Complex) -> Result<()> {
    if *s <= 1 {
        return Err(Error::domain(format!(
            "Hurwitz zeta series needs s > 1, got s = {}",
            s.to_f64()
        )));
    }
    if a.re <= 0 {
        return Err(Error::domain(format!(
            "Hurwitz zeta needs Re(a) > 0, got a = {:?}",
            a
        )));
    }
    Ok(())
}

/// Taylor coefficients `c_q` with `zeta(s + e, a) = sum_q c_q e^q + O(e^len)`.
fn zeta_jet(s: &Float, a: &Complex, len: usize, plan: Plan, bits: u32) -> Vec<Complex> {
    let a = a.with_prec(bits);
    let s = Float::with_val(bits, s);
    let neg_s = Float::with_val(bits, -&s);
    let mut acc = vec![Complex::zero(bits); len];

    for k in 0..plan.direct {
        let z = a.add_u32(k as u32);
        let log = z.ln();
        let base = log.scale(&neg_s).exp();
        let neg_log = -log;
        let mut term = base;
        for (q, slot) in acc.iter_mut().enumerate() {
            if q > 0 {
                term = (&term * &neg_log).div_real(&Float::with_val(bits, q as u32));
            }
            *slot += &term;
        }
    }

    // tail: w^-s exp(-e ln w) [ w / (s - 1 + e) + 1/2 + sum_i B_2i/(2i)! (s+e)_{2i-1} w^{1-2i} ]
    let w = a.add_u32(plan.direct as u32);
    let log_w = w.ln();
    let base = log_w.scale(&neg_s).exp();
    let decay = TruncSeries::exp_linear(&-&log_w, len);

    let s_minus_one = Complex::from_real(Float::with_val(bits, &s - 1u32));
    let mut inner = TruncSeries::recip_linear(&s_minus_one, len).scale(&w);
    inner.add_assign(&TruncSeries::constant(
        Complex::from_real(Float::with_val(bits, 0.5)),
        len,
    ));

    let w_inv = w.recip();
    let w_inv_sq = w_inv.powu(2);
    let mut w_pow = w_inv;
    let mut rising = TruncSeries::linear(Complex::from_real(s.clone()), len);
    for i in 1..=plan.corrections {
        if i > 1 {
            w_pow = &w_pow * &w_inv_sq;
            let f1 = TruncSeries::linear(
                Complex::from_real(Float::with_val(bits, &s + (2 * i - 3) as u32)),
                len,
            );
            let f2 = TruncSeries::linear(
                Complex::from_real(Float::with_val(bits, &s + (2 * i - 2) as u32)),
                len,
            );
            rising = rising.mul(&f1).mul(&f2);
        }
        let b = bernoulli(2 * i) / factorial(2 * i as u32);
        let coeff = w_pow.scale(&Float::with_val(bits, &b));
        inner.add_scaled(&rising, &coeff);
    }

    let tail = decay.mul(&inner).scale(&base);
    for (slot, t) in acc.iter_mut().zip(tail.coeffs()) {
        *slot += t;
    }
    acc
}

/// `zeta^(r,0)(s, a)` for every `r` in `0..=max_order`.
pub fn zeta_derivatives(
    s: &Float,
    a: &Complex,
    max_order: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<ZetaValue>> {
    check_domain(s, a)?;
    let sf = s.to_f64();
    let re_a = a.re.to_f64();
    let plan = plan(sf, re_a, max_order, ctx);
    let bits = ctx.bits();
    let jet = zeta_jet(s, a, max_order + 1, plan, bits);
    Ok(jet
        .into_iter()
        .enumerate()
        .map(|(r, c)| {
            let scale = Float::with_val(bits, factorial(r as u32));
            let ln_b = ln_remainder_bound(sf, re_a, plan.direct, plan.corrections, r);
            ZetaValue {
                value: c.scale(&scale),
                tail_bound: Float::with_val(bits, ln_b.exp()),
                terms_used: plan.direct + plan.corrections,
            }
        })
        .collect())
}

/// `zeta(s, a)` for real `s > 1`, `Re(a) > 0`.
pub fn zeta(s: &Float, a: &Complex, ctx: &PrecisionContext) -> Result<ZetaValue> {
    Ok(zeta_derivatives(s, a, 0, ctx)?.remove(0))
}

/// `zeta^(r,0)(j, a) = sum_k (-1)^r ln^r(k+a) / (k+a)^j` at integer `j >= 2`.
pub fn zeta_deriv(r: usize, j: u32, a: &Complex, ctx: &PrecisionContext) -> Result<ZetaValue> {
    if j < 2 {
        return Err(Error::domain(format!("zeta derivative needs j >= 2, got {j}")));
    }
    let s = Float::with_val(ctx.bits(), j);
    Ok(zeta_derivatives(&s, a, r, ctx)?.swap_remove(r))
}

/// Both sides of `|zeta^(r,0)(j, a+x)| <= 2^r zeta(j-r, Re(a)+x)`, valid for
/// `Re(a) > 0`, `|a| >= 1`, `x >= 0`, `j > r+1`. Returns `(lhs, rhs)`.
pub fn derivative_envelope(
    r: usize,
    j: u32,
    a: &Complex,
    x: &Float,
    ctx: &PrecisionContext,
) -> Result<(Float, Float)> {
    if j as usize <= r + 1 {
        return Err(Error::domain(format!("envelope needs j > r + 1, got r={r}, j={j}")));
    }
    if a.re <= 0 || a.abs() < 1 || *x < 0 {
        return Err(Error::domain("envelope needs Re(a) > 0, |a| >= 1, x >= 0"));
    }
    let bits = ctx.bits();
    let shifted = a.add_real(x);
    let lhs = zeta_deriv(r, j, &shifted, ctx)?.value.abs();
    let re = Complex::from_real(shifted.re.clone());
    let rhs = zeta(&Float::with_val(bits, j - r as u32), &re, ctx)?.value.re;
    Ok((lhs, rhs * Float::with_val(bits, Float::i_exp(1, r as i32))))
}

fn gamma_real(s: &Float, bits: u32) -> Float {
    if s.is_integer() {
        let n = s.to_u32_saturating().expect("s > 1");
        return Float::with_val(bits, factorial(n - 1));
    }
    Float::with_val(bits, s.gamma_ref())
}

/// Truncation point `X` for the integral: the tail beyond `X` is below `eps`.
fn integral_cutoff(s: f64, re_a: f64, ln_eps: f64) -> u32 {
    // 1/(1-e^-x) <= 1.6 for x >= 1 and int_X^inf x^(s-1) e^(-alpha x) <= 2 X^(s-1) e^(-alpha X)/alpha
    // once X >= 2(s-1)/alpha
    let start = (2.0 * (s - 1.0) / re_a).max(1.0).ceil() as u32;
    (start..)
        .find(|&x| {
            let xf = f64::from(x);
            (3.2f64 / re_a).ln() + (s - 1.0) * xf.ln() - re_a * xf <= ln_eps
        })
        .expect("cutoff exists")
}

/// `|(1/Gamma(s)) int_0^inf x^(s-1) e^(-a x) / (1 - e^(-x)) dx - zeta(s, a)|`.
pub fn zeta_integral_check(s: &Float, a: &Complex, ctx: &PrecisionContext) -> Result<Float> {
    check_domain(s, a)?;
    let bits = ctx.bits();
    let s = Float::with_val(bits, s);
    let a = a.with_prec(bits);
    let sm1 = Float::with_val(bits, &s - 1u32);
    let gamma = gamma_real(&s, bits);
    let ln_eps = -(f64::from(ctx.working_digits()) + 2.0) * std::f64::consts::LN_10
        + gamma.to_f64().ln();
    let cutoff = integral_cutoff(s.to_f64(), a.re.to_f64(), ln_eps);
    let rule = gauss_legendre_unit(40, bits);
    let neg_a = -&a;

    // [0, 1] with x = t^2: 2 t^(2s-1) e^(-a t^2) / (1 - e^(-t^2))
    let two_s_minus_one = Float::with_val(bits, &s * 2u32) - 1u32;
    let mut total = rule.integrate(|t| {
        let x = Float::with_val(bits, t.square_ref());
        let den = -Float::with_val(bits, Float::with_val(bits, -&x).exp_m1_ref());
        let pw = Float::with_val(bits, t.pow(&two_s_minus_one)) * 2u32 / den;
        neg_a.scale(&x).exp().scale(&pw)
    });

    for k in 1..cutoff {
        let panel = rule.integrate(|u| {
            let x = Float::with_val(bits, u + k);
            let den = -Float::with_val(bits, Float::with_val(bits, -&x).exp_m1_ref());
            let pw = Float::with_val(bits, (&x).pow(&sm1)) / den;
            neg_a.scale(&x).exp().scale(&pw)
        });
        total += panel;
    }
    let integral = total.div_real(&gamma);
    let z = zeta(&s, &a, ctx)?;
    Ok((integral - z.value).abs())
}
