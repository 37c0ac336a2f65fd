use std::sync::{Mutex, OnceLock};

use rug::{Float, Integer, Rational};

use super::{Complex, PrecisionContext};
use crate::error::{Error, Result};

/// `s (s+1) ... (s+j-1)`, with `(s)_0 = 1`.
pub fn pochhammer(s: &Complex, j: u32) -> Complex {
    let mut acc = Complex::one(s.prec());
    for i in 0..j {
        acc = &acc * &s.add_u32(i);
    }
    acc
}

/// Exact `(x)_j` for integer `x`.
pub fn pochhammer_int(x: i64, j: u32) -> Integer {
    let mut acc = Integer::from(1);
    for i in 0..i64::from(j) {
        acc *= x + i;
    }
    acc
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `H_j = 1 + 1/2 + ... + 1/j` as an exact rational.
pub fn harmonic_exact(j: u32) -> Rational {
    let mut h = Rational::new();
    for i in 1..=j {
        h += Rational::from((1, i));
    }
    h
}

/// `H_j` rounded once to working precision.
pub fn harmonic(j: u32, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), harmonic_exact(j))
}

/// `(ln a)^k` on the principal branch; `k = 0` gives 1 even when `ln a = 0`.
pub fn log_power(a: &Complex, k: u32, ctx: &PrecisionContext) -> Result<Complex> {
    if a.is_zero() {
        return Err(Error::domain("logarithm of zero"));
    }
    let bits = ctx.bits();
    if k == 0 {
        return Ok(Complex::one(bits));
    }
    Ok(a.with_prec(bits).ln().powu(k))
}

/// Exact `(-m)_j / (-n-m)_j`; defined for `j <= n + m`.
pub fn coeff_ratio_exact(m: u32, n: u32, j: u32) -> Result<Rational> {
    if j > n + m {
        return Err(Error::domain(format!(
            "coefficient ratio needs j <= n+m, got j={j}, n+m={}",
            n + m
        )));
    }
    let num = pochhammer_int(-i64::from(m), j);
    if num == 0 {
        return Ok(Rational::new());
    }
    let den = pochhammer_int(-i64::from(n) - i64::from(m), j);
    Ok(Rational::from((num, den)))
}

/// The Pade coefficient ratio `(-m)_j / (-n-m)_j` at working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffRatio {
    pub m: u32,
    pub n: u32,
    pub j: u32,
    pub exact: Rational,
    pub value: Float,
}

pub fn coeff_ratio(m: u32, n: u32, j: u32, ctx: &PrecisionContext) -> Result<CoeffRatio> {
    let exact = coeff_ratio_exact(m, n, j)?;
    let value = Float::with_val(ctx.bits(), &exact);
    Ok(CoeffRatio {
        m,
        n,
        j,
        exact,
        value,
    })
}

fn bernoulli_memo() -> &'static Mutex<Vec<Rational>> {
    static MEMO: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    let mut memo = bernoulli_memo().lock().expect("bernoulli memo poisoned");
    while memo.len() <= n {
        let k = memo.len();
        // sum_{i=0}^{k} C(k+1, i) B_i = 0
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (i, b) in memo.iter().enumerate() {
            if i <= 1 || i % 2 == 0 {
                let num = Integer::from(&binom * b.numer());
                acc += Rational::from((num, b.denom().clone()));
            }
            binom = binom * ((k + 1 - i) as u64) / ((i + 1) as u64);
        }
        let bk = -acc / Integer::from(k as u64 + 1);
        memo.push(bk);
    }
    memo[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn pochhammer_examples() {
        let b = ctx().bits();
        let one = Complex::from_f64(b, 1.0, 0.0);
        assert_eq!(pochhammer(&one, 4).re, 24);
        let s = Complex::from_f64(b, 2.5, 1.0);
        assert_eq!(pochhammer(&s, 0), Complex::one(b));
        let m3 = Complex::from_f64(b, -3.0, 0.0);
        assert_eq!(pochhammer(&m3, 2).re, 6);
        assert_eq!(pochhammer_int(-3, 2), 6);
        assert_eq!(pochhammer_int(-3, 4), 0);
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_exact(0), 0);
        assert_eq!(harmonic_exact(3), Rational::from((11, 6)));
        assert_eq!(harmonic_exact(10), Rational::from((7381, 2520)));
        let h3 = harmonic(3, &ctx());
        assert!((h3.to_f64() - 11.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn harmonic_differences_are_exact() {
        for j in 1..60u32 {
            assert_eq!(harmonic_exact(j) - harmonic_exact(j - 1), Rational::from((1, j)));
        }
    }

    #[test]
    fn log_power_examples() {
        let c = ctx();
        let one = c.complex(1.0, 0.0);
        assert_eq!(log_power(&one, 0, &c).unwrap(), Complex::one(c.bits()));
        assert!(log_power(&one, 3, &c).unwrap().is_zero());
        let e = Complex::from_real(Float::with_val(c.bits(), 1).exp());
        let v = log_power(&e, 2, &c).unwrap();
        assert!((v - Complex::one(c.bits())).abs().to_f64() < 1e-38);
        assert!(log_power(&c.complex(0.0, 0.0), 1, &c).is_err());
    }

    #[test]
    fn coeff_ratio_examples() {
        assert_eq!(coeff_ratio_exact(3, 0, 2).unwrap(), 1);
        assert_eq!(coeff_ratio_exact(0, 5, 1).unwrap(), 0);
        assert_eq!(coeff_ratio_exact(2, 3, 2).unwrap(), Rational::from((1, 10)));
        assert_eq!(coeff_ratio_exact(4, 4, 0).unwrap(), 1);
        assert_eq!(coeff_ratio_exact(2, 5, 3).unwrap(), 0);
        assert!(coeff_ratio_exact(2, 3, 6).is_err());
        let r = coeff_ratio(2, 3, 2, &ctx()).unwrap();
        assert!((r.value.to_f64() - 0.1).abs() < 1e-16);
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(20), Rational::from((-174611, 330)));
    }
}
