//! Generalized Stieltjes constants `gamma_l(a)` from finite expansions in
//! `zeta^(r,0)(j, a)` with an exact integral remainder, and the infinite
//! series obtained from them.
//!
//! Throughout, `S_l(j, a) = sum_{k=0}^{l} s(j, k+1) l!/(l-k)! (-1)^k zeta^(l-k,0)(j, a)`.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::calibration::REMAINDER_C;
use crate::error::{Error, Result};
use crate::hurwitz;
use crate::pade::weighted_integral;
use crate::precision::{
    coeff_ratio_exact, factorial, harmonic, log_power, Complex, PrecisionContext,
};
use crate::stirling::{shared_table, StirlingTable};

/// Inputs of the finite expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesParams {
    pub ell: u32,
    pub a: Complex,
    pub m: u32,
    pub n: u32,
}

impl StieltjesParams {
    /// Requires `Re(a) > 0`, `|a| >= 1` and `m + n >= l + 1`.
    pub fn new(ell: u32, a: Complex, m: u32, n: u32) -> Result<Self> {
        if a.re <= 0 {
            return Err(Error::domain(format!("needs Re(a) > 0, got a = {a:?}")));
        }
        if a.abs() < 1 {
            return Err(Error::domain(format!(
                "needs |a| >= 1, got a = {a:?}; move a right with a shift first"
            )));
        }
        if m + n < ell + 1 {
            return Err(Error::domain(format!(
                "needs m + n >= l + 1, got m={m}, n={n}, l={ell}"
            )));
        }
        Ok(Self { ell, a, m, n })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesComputation {
    pub params: StieltjesParams,
    /// Finite part `T` with `(-1)^l gamma_l(a) = T + R`.
    pub truncated: Complex,
    /// Exact remainder `R` by quadrature.
    pub remainder: Complex,
    /// Geometric envelope for `|R|` with the calibrated constant.
    pub bound: Float,
    pub gamma_estimate: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    /// The estimate of `gamma_l(a)` (not multiplied by `(-1)^l`).
    pub value: Complex,
    pub terms: u32,
    /// Magnitude of the last included term.
    pub last_term_abs: Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemainderBound {
    pub envelope: Float,
    /// Extra `1/(2n)` factor available when `Re(a) = 1` and `n >= 1`.
    pub refined: Option<Float>,
}

/// `l!/(l-k)!`
fn falling(ell: u32, k: u32) -> Integer {
    factorial(ell) / factorial(ell - k)
}

fn sign(e: u32) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn neg_if_odd(z: Complex, e: u32) -> Complex {
    if e.is_multiple_of(2) {
        z
    } else {
        -z
    }
}

/// `sum_k s(j,k+1) l!/(l-k)! (-1)^k d_(l-k)` for derivative values `d_r`.
fn stirling_combination(table: &StirlingTable, j: u32, ell: u32, derivs: &[Complex], bits: u32) -> Complex {
    let mut acc = Complex::zero(bits);
    for k in 0..=ell.min(j - 1) {
        let s = table.get(j as usize, (k + 1) as usize);
        let w = (s * falling(ell, k)) * sign(k);
        acc += derivs[(ell - k) as usize].scale(&Float::with_val(bits, &w));
    }
    acc
}

/// `S_l(j, a)` for each `j` in `js`.
fn stirling_zeta_sums(ell: u32, a: &Complex, js: &[u32], ctx: &PrecisionContext) -> Result<Vec<Complex>> {
    let bits = ctx.bits();
    let top = js.iter().copied().max().unwrap_or(1) as usize;
    let table = shared_table(top);
    js.iter()
        .map(|&j| {
            let s = Float::with_val(bits, j);
            let derivs: Vec<Complex> = hurwitz::zeta_derivatives(&s, a, ell as usize, ctx)?
                .into_iter()
                .map(|z| z.value)
                .collect();
            Ok(stirling_combination(&table, j, ell, &derivs, bits))
        })
        .collect()
}

fn ln_power_term(ell: u32, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let bits = ctx.bits();
    // (-1)^(l+1) ln^(l+1)(z) / (l+1)
    let v = log_power(z, ell + 1, ctx)?.div_real(&Float::with_val(bits, ell + 1));
    Ok(neg_if_odd(v, ell + 1))
}

/// The finite part `T` with `(-1)^l gamma_l(a) = T + R`.
pub fn theorem2_truncated(params: &StieltjesParams, ctx: &PrecisionContext) -> Result<Complex> {
    let bits = ctx.bits();
    let StieltjesParams { ell, m, n, .. } = *params;
    let a = params.a.with_prec(bits);
    let table = shared_table((m.max(n) + 1) as usize);

    let mut total = Complex::zero(bits);
    let js: Vec<u32> = (2..=m.max(n)).collect();
    let sums = stirling_zeta_sums(ell, &a, &js, ctx)?;
    for (&j, s) in js.iter().zip(&sums) {
        // [(-m)_j - (-1)^j (-n)_j] / (-n-m)_j * (-1)^j / j!
        let c = coeff_ratio_exact(m, n, j)? - coeff_ratio_exact(n, m, j)? * sign(j);
        let c = (c * sign(j)) / factorial(j);
        total += s.scale(&Float::with_val(bits, &c));
    }

    let a_inv = a.recip();
    for k in 0..=ell {
        let mut inner = Complex::zero(bits);
        let mut a_pow = Complex::one(bits);
        for j in 1..=m {
            a_pow = &a_pow * &a_inv;
            if j < k + 1 {
                continue;
            }
            let ratio = coeff_ratio_exact(m, n, j)?;
            let c = (ratio * Integer::from(table.get(j as usize, (k + 1) as usize) * sign(j + ell + 1)))
                / factorial(j);
            inner += a_pow.scale(&Float::with_val(bits, &c));
        }
        let log = log_power(&a, ell - k, ctx)?;
        total += (log * inner).scale(&Float::with_val(bits, falling(ell, k)));
    }
    total += ln_power_term(ell, &a, ctx)?;
    Ok(total)
}

/// `int_0^1 x^m (1-x)^n zeta^(r,0)(m+n+1, a+x) dx` for `r = 0..=l`.
fn remainder_integrals(ell: u32, a: &Complex, m: u32, n: u32, ctx: &PrecisionContext) -> Result<Vec<Complex>> {
    let bits = ctx.bits();
    let s = Float::with_val(bits, m + n + 1);
    weighted_integral(m, n, ell as usize + 1, bits, |x| {
        let shifted = a.add_real(x);
        Ok(hurwitz::zeta_derivatives(&s, &shifted, ell as usize, ctx)?
            .into_iter()
            .map(|z| z.value)
            .collect())
    })
}

/// The exact remainder
/// `R = (-1)^(m+1)/(m+n)! sum_k s(N,k+1) l!/(l-k)! (-1)^k int_0^1 x^m (1-x)^n zeta^(l-k,0)(N, a+x) dx`,
/// `N = m+n+1`.
pub fn remainder_quadrature(params: &StieltjesParams, ctx: &PrecisionContext) -> Result<Complex> {
    let bits = ctx.bits();
    let StieltjesParams { ell, m, n, .. } = *params;
    let a = params.a.with_prec(bits);
    let big_n = m + n + 1;
    let table = shared_table(big_n as usize);
    let integrals = remainder_integrals(ell, &a, m, n, ctx)?;
    let combo = stirling_combination(&table, big_n, ell, &integrals, bits);
    let scaled = combo.div_real(&Float::with_val(bits, factorial(m + n)));
    Ok(neg_if_odd(scaled, m + 1))
}

/// `C (1 + l/ln(m+n)) ln^l(m+n) 2^(l+1) (Re a + 1)^-m (Re a)^-n`.
pub fn remainder_bound(params: &StieltjesParams, c: &Float, ctx: &PrecisionContext) -> Result<RemainderBound> {
    let StieltjesParams { ell, m, n, .. } = *params;
    if m + n < 2 {
        return Err(Error::domain("remainder envelope needs m + n >= 2"));
    }
    let bits = ctx.bits();
    let ln_mn = Float::with_val(bits, m + n).ln();
    let re_a = Float::with_val(bits, &params.a.re);
    let growth = Float::with_val(bits, ell) / &ln_mn + 1u32;
    let envelope = Float::with_val(bits, c * growth)
        * Float::with_val(bits, (&ln_mn).pow(ell))
        * Float::with_val(bits, Float::i_exp(1, (ell + 1) as i32))
        * Float::with_val(bits, Float::with_val(bits, &re_a + 1u32).pow(-(m as i32)))
        * Float::with_val(bits, (&re_a).pow(-(n as i32)));
    let refined = (re_a == 1 && n >= 1).then(|| Float::with_val(bits, &envelope / (2 * n)));
    Ok(RemainderBound { envelope, refined })
}

/// Full evaluation: finite part, exact remainder, calibrated envelope.
pub fn gamma_ell(params: &StieltjesParams, ctx: &PrecisionContext) -> Result<StieltjesComputation> {
    let bits = ctx.bits();
    let truncated = theorem2_truncated(params, ctx)?;
    let remainder = remainder_quadrature(params, ctx)?;
    let bound = if params.m + params.n >= 2 {
        remainder_bound(params, &Float::with_val(bits, REMAINDER_C), ctx)?.envelope
    } else {
        Float::with_val(bits, f64::INFINITY)
    };
    let gamma_estimate = neg_if_odd(&truncated + &remainder, params.ell);
    Ok(StieltjesComputation {
        params: params.clone(),
        truncated,
        remainder,
        bound,
        gamma_estimate,
    })
}

/// The `a = 1`, `l = 0` case:
/// `gamma = -sum_{j=2}^{max(m,n)} c_j zeta(j)/j + sum_{j=1}^{m} (-m)_j/(-n-m)_j / j + eps`.
/// Returns `(finite part, eps)`.
pub fn euler_gamma_formula(m: u32, n: u32, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    if m + n < 1 {
        return Err(Error::domain("needs m + n >= 1"));
    }
    let bits = ctx.bits();
    let one = Complex::one(bits);
    let mut value = Float::new(bits);
    for j in 2..=m.max(n) {
        let c = coeff_ratio_exact(m, n, j)? - coeff_ratio_exact(n, m, j)? * sign(j);
        if c == 0 {
            continue;
        }
        let z = hurwitz::zeta(&Float::with_val(bits, j), &one, ctx)?.value.re;
        value -= z * Float::with_val(bits, &c) / j;
    }
    for j in 1..=m {
        value += Float::with_val(bits, &coeff_ratio_exact(m, n, j)?) / j;
    }
    // eps = (-1)^(n+1) int_0^1 x^m (1-x)^n zeta(m+n+1, 1+x) dx
    let integral = remainder_integrals(0, &one, m, n, ctx)?.remove(0).re;
    let eps = if n % 2 == 1 { integral } else { -integral };
    Ok((value, eps))
}

fn check_series_domain(a: &Complex, j_max: u32, strict: bool) -> Result<()> {
    if a.re < 1 {
        return Err(Error::domain(format!("series needs Re(a) >= 1, got a = {a:?}")));
    }
    let abs = a.abs();
    if abs < 1 || (strict && abs == 1) {
        return Err(Error::domain(format!(
            "series needs |a| {} 1, got a = {a:?}",
            if strict { ">" } else { ">=" }
        )));
    }
    if j_max < 2 {
        return Err(Error::domain("series needs J >= 2"));
    }
    Ok(())
}

/// Sums `coeff(j) * S_l(j, a)` for `j = 2..=J` in ascending order on top of `base`,
/// returning `gamma_l(a)` and the last term.
fn sum_series<F>(ell: u32, a: &Complex, j_max: u32, base: Complex, ctx: &PrecisionContext, mut coeff: F) -> Result<SeriesResult>
where
    F: FnMut(u32) -> Complex,
{
    let bits = ctx.bits();
    let js: Vec<u32> = (2..=j_max).collect();
    let sums = stirling_zeta_sums(ell, a, &js, ctx)?;
    let mut total = base;
    let mut last = Float::new(bits);
    for (&j, s) in js.iter().zip(&sums) {
        let term = coeff(j) * s;
        last = term.abs();
        total += term;
    }
    Ok(SeriesResult {
        value: neg_if_odd(total, ell),
        terms: j_max - 1,
        last_term_abs: last,
    })
}

fn inv_factorial(j: u32, bits: u32) -> Float {
    Float::with_val(bits, 1u32) / Float::with_val(bits, factorial(j))
}

/// `m = 0`, `n -> oo`:
/// `(-1)^l gamma_l(a) = -sum_{j>=2} S_l(j,a)/j! + (-1)^(l+1) ln^(l+1)(a)/(l+1)`.
pub fn series_n_infinity(ell: u32, a: &Complex, j_max: u32, ctx: &PrecisionContext) -> Result<SeriesResult> {
    check_series_domain(a, j_max, false)?;
    let bits = ctx.bits();
    let a = a.with_prec(bits);
    let base = ln_power_term(ell, &a, ctx)?;
    sum_series(ell, &a, j_max, base, ctx, |j| Complex::from_real(-inv_factorial(j, bits)))
}

/// `m -> oo` after simplification:
/// `(-1)^l gamma_l(a) = (-1)^(l+1) ln^(l+1)(a-1)/(l+1) + sum_{j>=2} (-1)^j S_l(j,a)/j!`.
pub fn series_m_infinity(ell: u32, a: &Complex, j_max: u32, ctx: &PrecisionContext) -> Result<SeriesResult> {
    check_series_domain(a, j_max, true)?;
    let bits = ctx.bits();
    let a = a.with_prec(bits);
    let base = ln_power_term(ell, &a.add_real(&Float::with_val(bits, -1)), ctx)?;
    sum_series(ell, &a, j_max, base, ctx, |j| {
        Complex::from_real(inv_factorial(j, bits) * sign(j))
    })
}

/// One-parameter family
/// `(-1)^l gamma_l(a) = (-1)^(l+1) ln^(l+1)(a - L/(L+1))/(l+1)
///     - sum_{j>=2} (L^j - (-1)^j)/(L+1)^j (-1)^(j+1)/j! S_l(j,a)`.
pub fn lambda_series(
    ell: u32,
    a: &Complex,
    lambda: &Complex,
    j_max: u32,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    let bits = ctx.bits();
    let a = a.with_prec(bits);
    let lambda = lambda.with_prec(bits);
    let lp1 = lambda.add_u32(1);
    if lp1.is_zero() {
        return Err(Error::domain("lambda = -1 is excluded"));
    }
    if a.re <= 0 || a.abs() < 1 {
        return Err(Error::domain("lambda series needs Re(a) > 0 and |a| >= 1"));
    }
    let shift = &lambda / &lp1;
    if shift.abs() >= a.abs() {
        return Err(Error::domain("lambda series needs |L/(L+1)| < |a|"));
    }
    if j_max < 2 {
        return Err(Error::domain("series needs J >= 2"));
    }
    let base = ln_power_term(ell, &(&a - &shift), ctx)?;
    let lp1_inv = lp1.recip();
    sum_series(ell, &a, j_max, base, ctx, |j| {
        let num = lambda.powu(j).add_real(&Float::with_val(bits, -sign(j)));
        let c = num * lp1_inv.powu(j);
        // -(...)(-1)^(j+1)/j! = (-1)^j (...)/j!
        neg_if_odd(c, j).scale(&inv_factorial(j, bits))
    })
}

/// Residuals of the real- and imaginary-part identities at `L = i`, real
/// `a > 1`, using indices `q, r <= J` (so `j` up to `4J + 3`):
///
/// real: `(-1)^l gamma_l(a) = (-1)^(l+1) Re ln^(l+1)(a-(1+i)/2)/(l+1)
///   - [sum_{q=1}^{J} (-1)^q 4^-q S_l(4q+1,a)/(4q+1)! - sum_{q=0}^{J} (-1)^q 2^(-2q-1) S_l(4q+3,a)/(4q+3)!]`
///
/// imaginary: `sum_{r=0}^{J} (-1/4)^r S_l(4r+2,a)/(4r+2)! = (-1)^l Im ln^(l+1)(a-(1+i)/2)/(l+1)`
pub fn lambda_i_identities(ell: u32, a: &Float, j_max: u32, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    if *a <= 1 {
        return Err(Error::domain("identities need real a > 1"));
    }
    let bits = ctx.bits();
    let a_c = Complex::from_real(Float::with_val(bits, a));
    let half = Float::with_val(bits, 0.5);
    let log_arg = Complex::new(Float::with_val(bits, a - &half), Float::with_val(bits, -&half));
    let log_term = log_power(&log_arg, ell + 1, ctx)?.div_real(&Float::with_val(bits, ell + 1));

    let js: Vec<u32> = (0..=j_max).flat_map(|q| [4 * q + 1, 4 * q + 2, 4 * q + 3]).filter(|&j| j >= 2).collect();
    let sums = stirling_zeta_sums(ell, &a_c, &js, ctx)?;
    let lookup = |j: u32| -> Float {
        let idx = js.iter().position(|&x| x == j).expect("index present");
        sums[idx].re.clone()
    };

    let mut bracket = Float::new(bits);
    for q in 1..=j_max {
        let j = 4 * q + 1;
        let c = Float::with_val(bits, Float::i_exp(1, -2 * q as i32)) * sign(q) * inv_factorial(j, bits);
        bracket += c * lookup(j);
    }
    for q in 0..=j_max {
        let j = 4 * q + 3;
        let c = Float::with_val(bits, Float::i_exp(1, -2 * q as i32 - 1)) * sign(q) * inv_factorial(j, bits);
        bracket -= c * lookup(j);
    }
    let oracle = crate::oracle::stieltjes_limit(ell, &a_c, ctx)?.value.re;
    let lhs = if ell.is_multiple_of(2) { oracle } else { -oracle };
    // (-1)^(l+1) Re ln^(l+1)/(l+1) - bracket
    let log_re = if (ell + 1).is_multiple_of(2) {
        log_term.re.clone()
    } else {
        -log_term.re.clone()
    };
    let real_rhs = log_re - bracket;
    let residual_real = (lhs - real_rhs).abs();

    let mut imag_lhs = Float::new(bits);
    let quarter = Float::with_val(bits, -0.25);
    let mut q_pow = Float::with_val(bits, 1);
    for r in 0..=j_max {
        let j = 4 * r + 2;
        imag_lhs += Float::with_val(bits, &q_pow * inv_factorial(j, bits)) * lookup(j);
        q_pow *= &quarter;
    }
    let imag_rhs = if ell.is_multiple_of(2) {
        log_term.im.clone()
    } else {
        -log_term.im.clone()
    };
    let residual_imag = (imag_lhs - imag_rhs).abs();
    Ok((residual_real, residual_imag))
}

/// `sum_{j=1}^{J} zeta'(2j+1)/(2j+1)`.
pub fn gamma1_odd_zeta(j_max: u32, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let bits = ctx.bits();
    let one = Complex::one(bits);
    let mut total = Float::new(bits);
    let mut last = Float::new(bits);
    for j in 1..=j_max {
        let d = hurwitz::zeta_deriv(1, 2 * j + 1, &one, ctx)?.value.re / (2 * j + 1);
        last = Float::with_val(bits, d.abs_ref());
        total += d;
    }
    Ok(SeriesResult {
        value: Complex::from_real(total),
        terms: j_max,
        last_term_abs: last,
    })
}

/// Partial sum `sum_{j=2}^{J} H_(j-1)/j (zeta(j,2) + (-1)^(j-1) zeta(j))`.
pub fn zero_sum_identity(j_max: u32, ctx: &PrecisionContext) -> Result<Float> {
    if j_max < 2 {
        return Err(Error::domain("needs J >= 2"));
    }
    let bits = ctx.bits();
    let one = Complex::one(bits);
    let two = Complex::from_real(Float::with_val(bits, 2));
    let mut total = Float::new(bits);
    for j in 2..=j_max {
        let s = Float::with_val(bits, j);
        let z2 = hurwitz::zeta(&s, &two, ctx)?.value.re;
        let z1 = hurwitz::zeta(&s, &one, ctx)?.value.re;
        let inner = z2 + z1 * -sign(j);
        total += harmonic(j - 1, ctx) / j * inner;
    }
    Ok(total)
}

/// `sum_{k=0}^{p-1} ln^l(a+k)/(a+k)`, so that `gamma_l(a) = gamma_l(a+p) + correction`.
pub fn shift_accelerate(ell: u32, a: &Complex, p: u32, ctx: &PrecisionContext) -> Result<Complex> {
    if a.re <= 0 {
        return Err(Error::domain("shift needs Re(a) > 0"));
    }
    let bits = ctx.bits();
    let a = a.with_prec(bits);
    let mut total = Complex::zero(bits);
    for k in 0..p {
        let z = a.add_u32(k);
        total += log_power(&z, ell, ctx)? / z;
    }
    Ok(total)
}
