//! The Padé-derived zeta recurrence
//!
//! ```text
//! A(n,m,p; s,a) = sum_{j<=m} (-m)_j/(-n-m)_j p^j (s)_j/j! zeta(s+j, a+p)
//!               - sum_{j<=n} (-n)_j/(-n-m)_j (-p)^j (s)_j/j! zeta(s+j, a)
//!               = (-1)^(n+1) p^(m+n+1) (s)_(m+n+1)/(n+m)!
//!                 * int_0^1 x^m (1-x)^n zeta(s+m+n+1, a+px) dx
//! ```
//!
//! Both sides are computed independently. Only real `s > 1` is supported.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::hurwitz;
use crate::precision::{
    coeff_ratio_exact, factorial, gauss_legendre_unit, pochhammer, Complex, PrecisionContext,
};

#[derive(Debug, Clone, PartialEq)]
pub struct PadeIdentityCase {
    pub n: u32,
    pub m: u32,
    pub p: Complex,
    pub sigma: Float,
    pub a: Complex,
}

impl PadeIdentityCase {
    pub fn new(n: u32, m: u32, p: Complex, sigma: Float, a: Complex) -> Result<Self> {
        let case = Self { n, m, p, sigma, a };
        case.validate()?;
        Ok(case)
    }

    fn validate(&self) -> Result<()> {
        if self.sigma <= 1 {
            return Err(Error::domain(format!(
                "identity is evaluated for sigma > 1 only, got {}",
                self.sigma.to_f64()
            )));
        }
        if self.a.re <= 0 {
            return Err(Error::domain("identity needs Re(a) > 0"));
        }
        if Float::with_val(self.a.prec(), &self.a.re + &self.p.re) <= 0 {
            return Err(Error::domain("identity needs Re(a+p) > 0"));
        }
        Ok(())
    }
}

/// Gauss–Legendre node count for `int_0^1 x^m (1-x)^n f(x) dx`.
pub fn node_count(m: u32, n: u32) -> usize {
    64.max((m + n) as usize + 32)
}

/// `int_0^1 x^m (1-x)^n f(x) dx` for a vector-valued `f`, nodes in fixed order.
pub fn weighted_integral<F>(m: u32, n: u32, count: usize, bits: u32, mut f: F) -> Result<Vec<Complex>>
where
    F: FnMut(&Float) -> Result<Vec<Complex>>,
{
    let rule = gauss_legendre_unit(node_count(m, n), bits);
    let mut acc = vec![Complex::zero(bits); count];
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let one_minus = Float::with_val(bits, 1u32 - x);
        let weight = Float::with_val(bits, x.pow(m)) * Float::with_val(bits, (&one_minus).pow(n)) * w;
        for (slot, v) in acc.iter_mut().zip(f(x)?) {
            *slot += v.scale(&weight);
        }
    }
    Ok(acc)
}

fn sigma_term(sigma: &Complex, j: u32, bits: u32) -> Complex {
    pochhammer(sigma, j).div_real(&Float::with_val(bits, factorial(j)))
}

/// The finite zeta combination `A(n,m,p; s,a)`.
pub fn a_sum(case: &PadeIdentityCase, ctx: &PrecisionContext) -> Result<Complex> {
    case.validate()?;
    let bits = ctx.bits();
    let sigma = Complex::from_real(Float::with_val(bits, &case.sigma));
    let a = case.a.with_prec(bits);
    let p = case.p.with_prec(bits);
    let a_plus_p = &a + &p;
    let neg_p = -&p;

    let mut total = Complex::zero(bits);
    let mut p_pow = Complex::one(bits);
    for j in 0..=case.m {
        let ratio = coeff_ratio_exact(case.m, case.n, j)?;
        if ratio != 0 && !p_pow.is_zero() {
            let s = Float::with_val(bits, &case.sigma + j);
            let z = hurwitz::zeta(&s, &a_plus_p, ctx)?.value;
            let coeff = (&p_pow * &sigma_term(&sigma, j, bits)).scale(&Float::with_val(bits, &ratio));
            total += coeff * z;
        }
        p_pow = &p_pow * &p;
    }
    let mut p_pow = Complex::one(bits);
    for j in 0..=case.n {
        let ratio = coeff_ratio_exact(case.n, case.m, j)?;
        if ratio != 0 && !p_pow.is_zero() {
            let s = Float::with_val(bits, &case.sigma + j);
            let z = hurwitz::zeta(&s, &a, ctx)?.value;
            let coeff = (&p_pow * &sigma_term(&sigma, j, bits)).scale(&Float::with_val(bits, &ratio));
            total -= coeff * z;
        }
        p_pow = &p_pow * &neg_p;
    }
    Ok(total)
}

/// `int_0^1 x^m (1-x)^n zeta(s+m+n+1, a+px) dx`.
pub fn raw_integral(case: &PadeIdentityCase, ctx: &PrecisionContext) -> Result<Complex> {
    case.validate()?;
    let bits = ctx.bits();
    let a = case.a.with_prec(bits);
    let p = case.p.with_prec(bits);
    let s = Float::with_val(bits, &case.sigma + (case.m + case.n + 1));
    let mut out = weighted_integral(case.m, case.n, 1, bits, |x| {
        let shifted = &a + &p.scale(x);
        Ok(vec![hurwitz::zeta(&s, &shifted, ctx)?.value])
    })?;
    Ok(out.remove(0))
}

/// The Beta-weighted integral side of the identity.
pub fn a_integral(case: &PadeIdentityCase, ctx: &PrecisionContext) -> Result<Complex> {
    case.validate()?;
    let bits = ctx.bits();
    let p = case.p.with_prec(bits);
    let total = case.m + case.n + 1;
    if p.is_zero() {
        return Ok(Complex::zero(bits));
    }
    let sigma = Complex::from_real(Float::with_val(bits, &case.sigma));
    let mut prefactor = p.powu(total) * pochhammer(&sigma, total);
    prefactor = prefactor.div_real(&Float::with_val(bits, factorial(case.m + case.n)));
    if case.n.is_multiple_of(2) {
        prefactor = -prefactor;
    }
    Ok(prefactor * raw_integral(case, ctx)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayRow {
    pub m: u32,
    pub n: u32,
    pub integral_abs: Float,
    /// `|a+p|^-m |a|^-n`
    pub model: Float,
    pub ratio: Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub rows: Vec<DecayRow>,
    /// Largest observed `integral_abs / model`.
    pub c_fit: Float,
}

/// Sweeps `|int_0^1 x^m (1-x)^n zeta(s+m+n+1, a+px) dx|` against the
/// geometric model `|a+p|^-m |a|^-n` over `pairs`, rows ordered by `(m, n)`.
pub fn lemma1_decay(
    p: &Complex,
    sigma: &Float,
    a: &Complex,
    pairs: &[(u32, u32)],
    ctx: &PrecisionContext,
) -> Result<DecayReport> {
    let bits = ctx.bits();
    let a_abs = a.abs();
    let ap_abs = (a + p).abs();
    if p.abs() > a_abs || p.abs() > ap_abs {
        return Err(Error::domain("decay sweep needs |p| <= |a| and |p| <= |a+p|"));
    }
    let mut pairs = pairs.to_vec();
    pairs.sort_unstable();
    let mut rows = Vec::with_capacity(pairs.len());
    let mut c_fit = Float::new(bits);
    for (m, n) in pairs {
        let case = PadeIdentityCase::new(n, m, p.clone(), sigma.clone(), a.clone())?;
        let integral_abs = raw_integral(&case, ctx)?.abs();
        let model = Float::with_val(bits, (&ap_abs).pow(-(m as i32)))
            * Float::with_val(bits, (&a_abs).pow(-(n as i32)));
        let ratio = Float::with_val(bits, &integral_abs / &model);
        if ratio > c_fit {
            c_fit = ratio.clone();
        }
        rows.push(DecayRow {
            m,
            n,
            integral_abs,
            model,
            ratio,
        });
    }
    Ok(DecayReport { rows, c_fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::least_squares_slope;
    use proptest::prelude::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn case(n: u32, m: u32, p: (f64, f64), sigma: f64, a: (f64, f64)) -> PadeIdentityCase {
        let c = ctx();
        PadeIdentityCase::new(n, m, c.complex(p.0, p.1), c.real(sigma), c.complex(a.0, a.1)).unwrap()
    }

    fn residual(k: &PadeIdentityCase) -> f64 {
        let c = ctx();
        (a_sum(k, &c).unwrap() - a_integral(k, &c).unwrap()).abs().to_f64()
    }

    #[test]
    fn zeroth_order_is_a_difference() {
        let c = ctx();
        let k = case(0, 0, (1.0, 0.0), 2.5, (1.5, 0.0));
        let s = c.real(2.5);
        let expected = hurwitz::zeta(&s, &c.complex(2.5, 0.0), &c).unwrap().value
            - hurwitz::zeta(&s, &c.complex(1.5, 0.0), &c).unwrap().value;
        assert!((a_sum(&k, &c).unwrap() - &expected).abs().to_f64() < 1e-38);
        assert!((a_integral(&k, &c).unwrap() - expected).abs().to_f64() < 1e-30);
    }

    #[test]
    fn vanishes_without_shift() {
        let c = ctx();
        let k = case(3, 4, (0.0, 0.0), 3.0, (2.0, 0.0));
        assert!(a_sum(&k, &c).unwrap().is_zero());
        assert!(a_integral(&k, &c).unwrap().is_zero());
        // constant integrand: B(m+1, n+1) zeta(s+m+n+1, a) = 4! 3! / 8! * zeta(11, 2)
        let raw = raw_integral(&k, &c).unwrap();
        let z = hurwitz::zeta(&c.real(11.0), &c.complex(2.0, 0.0), &c).unwrap().value;
        let beta = Float::with_val(c.bits(), 144u32) / 40320u32;
        assert!((raw - z.scale(&beta)).abs().to_f64() < 1e-40);
    }

    #[test]
    fn identity_examples() {
        assert!(residual(&case(3, 2, (1.0, 0.0), 2.5, (1.5, 0.0))) < 1e-24);
        assert!(residual(&case(1, 1, (1.0, 0.0), 2.0, (2.0, 0.0))) < 1e-24);
        assert!(residual(&case(5, 7, (0.5, -0.7), 1.5, (1.2, 0.9))) < 1e-24);
    }

    #[test]
    fn swap_symmetry() {
        let c = ctx();
        let k = case(2, 5, (0.3, 0.6), 2.2, (1.7, -0.4));
        let swapped = PadeIdentityCase::new(5, 2, -&k.p, k.sigma.clone(), &k.a + &k.p).unwrap();
        let d = a_sum(&k, &c).unwrap() + a_sum(&swapped, &c).unwrap();
        assert!(d.abs().to_f64() < 1e-36);
    }

    #[test]
    fn rejects_bad_cases() {
        let c = ctx();
        let p = c.complex(1.0, 0.0);
        assert!(PadeIdentityCase::new(1, 1, p.clone(), c.real(1.0), c.complex(1.0, 0.0)).is_err());
        assert!(PadeIdentityCase::new(1, 1, p, c.real(2.0), c.complex(-0.5, 0.0)).is_err());
        assert!(PadeIdentityCase::new(1, 1, c.complex(-2.0, 0.0), c.real(2.0), c.complex(1.0, 0.0)).is_err());
    }

    #[test]
    fn decay_along_diagonal_is_bounded() {
        let c = ctx();
        let pairs: Vec<_> = (1..=12).map(|k| (k, k)).collect();
        let r = lemma1_decay(&c.complex(1.0, 0.0), &c.real(2.0), &c.complex(1.0, 0.0), &pairs, &c).unwrap();
        assert_eq!(r.rows.len(), 12);
        assert!(r.c_fit.to_f64() < 1.0);
        assert!(r.rows.iter().all(|row| row.ratio <= r.c_fit));
    }

    #[test]
    fn decay_in_n_is_geometric() {
        let c = ctx();
        let pairs: Vec<_> = (0..=16).map(|n| (0, n)).collect();
        let r = lemma1_decay(&c.complex(1.0, 0.0), &c.real(3.0), &c.complex(2.0, 0.0), &pairs, &c).unwrap();
        let pts: Vec<_> = r.rows.iter().map(|row| (row.n as f64, row.integral_abs.to_f64().ln())).collect();
        assert!(least_squares_slope(&pts) <= -(2f64.ln()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn identity_holds_for_random_cases(
            n in 0u32..=6, m in 0u32..=6,
            sigma in 1.05f64..6.0,
            are in 1.0f64..3.0, aim in -1.0f64..1.0,
            pr in -0.5f64..1.0, pi in -0.8f64..0.8,
        ) {
            prop_assert!(residual(&case(n, m, (pr, pi), sigma, (are, aim))) < 1e-22);
        }
    }
}
