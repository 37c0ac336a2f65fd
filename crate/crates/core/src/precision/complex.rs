use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::Float;

/// Complex number over two MPFR floats of equal precision.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Copy rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    /// Principal logarithm. The caller guarantees `self != 0`.
    pub fn ln(&self) -> Self {
        if self.is_real() && self.re.is_sign_positive() {
            return Self::from_real(Float::with_val(self.prec(), self.re.ln_ref()));
        }
        let p = self.prec();
        let r = Float::with_val(p, self.norm_sqr().ln()) / 2u32;
        Self { re: r, im: self.arg() }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        if self.im.is_zero() {
            return Self::from_real(m);
        }
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self { re: Float::with_val(p, &m * &c), im: m * s }
    }

    /// `self^s` for real `s` on the principal branch.
    pub fn pow_real(&self, s: &Float) -> Self {
        self.ln().scale(s).exp()
    }

    pub fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        Self {
            re: Float::with_val(p, &self.re / &d),
            im: Float::with_val(p, -&self.im) / d,
        }
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn div_real(&self, k: &Float) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re / k),
            im: Float::with_val(p, &self.im / k),
        }
    }

    pub fn add_real(&self, k: &Float) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re + k),
            im: self.im.clone(),
        }
    }

    pub fn add_u32(&self, k: u32) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re + k),
            im: self.im.clone(),
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {:+}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render_complex(self))
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        let p = self.prec();
        Complex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        let p = self.prec();
        Complex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let p = self.prec();
        if self.im.is_zero() && rhs.im.is_zero() {
            return Complex::from_real(Float::with_val(p, &self.re * &rhs.re));
        }
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        Complex { re: ac - bd, im: ad + bc }
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    // division is multiplication by the reciprocal
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Complex) -> Complex {
        if rhs.im.is_zero() {
            return self.div_real(&rhs.re);
        }
        self * &rhs.recip()
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Complex> for &'a Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign<Complex> for Complex {
    fn add_assign(&mut self, rhs: Complex) {
        *self += &rhs;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign<Complex> for Complex {
    fn sub_assign(&mut self, rhs: Complex) {
        *self -= &rhs;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, rhs: &Complex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 140;

    fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol
    }

    #[test]
    fn exp_ln_round_trip() {
        let z = Complex::from_f64(P, 1.5, -0.75);
        assert!(close(&z.ln().exp(), &z, 1e-38));
    }

    #[test]
    fn ln_of_e_is_one() {
        let e = Float::with_val(P, 1).exp();
        let l = Complex::from_real(e).ln();
        assert!(close(&l, &Complex::one(P), 1e-40));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Complex::from_f64(P, 2.0, 1.0);
        let b = Complex::from_f64(P, -0.5, 3.0);
        assert!(close(&(&(&a * &b) / &b), &a, 1e-38));
    }

    #[test]
    fn powu_matches_repeated_product() {
        let z = Complex::from_f64(P, 0.5, 0.5);
        let mut acc = Complex::one(P);
        for _ in 0..7 {
            acc = &acc * &z;
        }
        assert!(close(&z.powu(7), &acc, 1e-40));
    }

    #[test]
    fn principal_branch_on_negative_axis() {
        let z = Complex::from_f64(P, -1.0, 0.0);
        let pi = Float::with_val(P, rug::float::Constant::Pi);
        assert!((z.ln().im - pi).abs().to_f64() < 1e-40);
    }
}
