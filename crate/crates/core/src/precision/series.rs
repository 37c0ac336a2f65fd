use rug::Float;

use super::Complex;

/// Power series in a small parameter `t`, truncated after `len` coefficients.
///
/// Used to carry derivatives through a computation: if `f(x + t)` is built
/// as a `TruncSeries`, coefficient `q` equals `f^(q)(x) / q!`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<Complex>,
}

impl TruncSeries {
    pub fn zero(prec: u32, len: usize) -> Self {
        Self {
            coeffs: vec![Complex::zero(prec); len],
        }
    }

    pub fn constant(c: Complex, len: usize) -> Self {
        let mut s = Self::zero(c.prec(), len);
        if len > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Complex>) -> Self {
        Self { coeffs }
    }

    /// `exp(c * t)`.
    pub fn exp_linear(c: &Complex, len: usize) -> Self {
        let p = c.prec();
        let mut coeffs = Vec::with_capacity(len);
        let mut term = Complex::one(p);
        for q in 0..len {
            if q > 0 {
                term = (&term * c).div_real(&Float::with_val(p, q));
            }
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    /// `1 / (c + t)`.
    pub fn recip_linear(c: &Complex, len: usize) -> Self {
        let inv = c.recip();
        let mut coeffs = Vec::with_capacity(len);
        let mut term = inv.clone();
        for q in 0..len {
            if q > 0 {
                term = -(&term * &inv);
            }
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    /// `ln(c + t)` on the principal branch.
    pub fn ln_linear(c: &Complex, len: usize) -> Self {
        let p = c.prec();
        let inv = c.recip();
        let mut coeffs = Vec::with_capacity(len);
        if len == 0 {
            return Self { coeffs };
        }
        coeffs.push(c.ln());
        let mut pw = Complex::one(p);
        for q in 1..len {
            pw = &pw * &inv;
            let mut t = pw.div_real(&Float::with_val(p, q));
            if q % 2 == 0 {
                t = -t;
            }
            coeffs.push(t);
        }
        Self { coeffs }
    }

    /// The linear polynomial `c + t`.
    pub fn linear(c: Complex, len: usize) -> Self {
        let p = c.prec();
        let mut s = Self::constant(c, len);
        if len > 1 {
            s.coeffs[1] = Complex::one(p);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, q: usize) -> &Complex {
        &self.coeffs[q]
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    /// `q!` times coefficient `q`, i.e. the `q`-th derivative.
    pub fn derivative(&self, q: usize) -> Complex {
        let p = self.coeffs[q].prec();
        let f = Float::with_val(p, Float::factorial(q as u32));
        self.coeffs[q].scale(&f)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let p = self.coeffs.first().map_or(64, Complex::prec);
        let mut out = vec![Complex::zero(p); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn scale(&self, k: &Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Adds `k * other` in place.
    pub fn add_scaled(&mut self, other: &Self, k: &Complex) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * k;
        }
    }

    pub fn powu(&self, e: u32) -> Self {
        let p = self.coeffs.first().map_or(64, Complex::prec);
        let mut acc = Self::constant(Complex::one(p), self.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}
