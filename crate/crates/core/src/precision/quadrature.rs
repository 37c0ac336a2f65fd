use rug::Float;

use super::Complex;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let p = x.prec();
    let mut p0 = Float::with_val(p, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        let a = Float::with_val(p, x * &p1) * (2 * kf - 1);
        let b = Float::with_val(p, &p0 * (kf - 1));
        let p2 = (a - b) / kf;
        p0 = p1;
        p1 = p2;
    }
    // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = (Float::with_val(p, x * &p1) - &p0) * (n as u32);
    let den = Float::with_val(p, x.square_ref()) - 1u32;
    let dp = num / den;
    (p1, dp)
}

/// Builds an `n`-point rule at `prec` bits by Newton iteration on `P_n`.
pub fn gauss_legendre_unit(n: usize, prec: u32) -> GaussRule {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![Float::new(prec); n];
    let mut weights = vec![Float::new(prec); n];
    let half = n.div_ceil(2);
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
    for i in 0..half {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, guess);
        let mut dp = Float::new(prec);
        for _ in 0..100 {
            let (pn, d) = legendre(n, &x);
            let dx = Float::with_val(prec, &pn / &d);
            x -= &dx;
            dp = d;
            if dx.abs() < tol {
                let (_, d) = legendre(n, &x);
                dp = d;
                break;
            }
        }
        // w = 2 / ((1 - x^2) P_n'(x)^2), halved for [0, 1]
        let one_minus = 1u32 - Float::with_val(prec, x.square_ref());
        let w = Float::with_val(prec, 1u32) / (one_minus * Float::with_val(prec, dp.square_ref()));
        let hi = Float::with_val(prec, 1u32 + &x) / 2u32;
        let lo = Float::with_val(prec, 1u32 - &x) / 2u32;
        nodes[i] = hi;
        nodes[n - 1 - i] = lo;
        weights[i] = w.clone();
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)` over `[0, 1]`, accumulated in node order.
    pub fn integrate<F>(&self, mut f: F) -> Complex
    where
        F: FnMut(&Float) -> Complex,
    {
        let prec = self.nodes.first().map_or(64, Float::prec);
        let mut acc = Complex::zero(prec);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(x).scale(w);
        }
        acc
    }

    /// Like [`GaussRule::integrate`] but the integrand returns several values at once.
    pub fn integrate_many<F>(&self, count: usize, mut f: F) -> Vec<Complex>
    where
        F: FnMut(&Float) -> Vec<Complex>,
    {
        let prec = self.nodes.first().map_or(64, Float::prec);
        let mut acc = vec![Complex::zero(prec); count];
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            for (a, v) in acc.iter_mut().zip(f(x)) {
                *a += v.scale(w);
            }
        }
        acc
    }
}
