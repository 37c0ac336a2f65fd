//! Signed Stirling numbers of the first kind, `(x)_n = sum_k (-1)^(n-k) s(n,k) x^k`
//! where `(x)_n` is the rising factorial.

use std::io::{self, Write};
use std::sync::{Arc, Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::precision::{factorial, harmonic_exact, PrecisionContext};

/// Exact triangular table `s(n, k)` for `0 <= k <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<Integer>>,
}

static ZERO: Integer = Integer::ZERO;

impl StirlingTable {
    /// Fills the table with `s(n+1, k) = s(n, k-1) - n s(n, k)`.
    pub fn build(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::domain("Stirling table needs n_max >= 1"));
        }
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Integer::from(1)]);
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = vec![Integer::new(); n + 2];
            for (k, slot) in next.iter_mut().enumerate().skip(1) {
                let left = &prev[k - 1];
                let mut v = left.clone();
                if k <= n {
                    v -= Integer::from(&prev[k] * n as u64);
                }
                *slot = v;
            }
            rows.push(next);
        }
        Ok(Self { rows })
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n, k)`, zero for `k > n`. Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> &Integer {
        assert!(n <= self.n_max(), "s({n},{k}) outside table (n_max={})", self.n_max());
        self.rows[n].get(k).unwrap_or(&ZERO)
    }

    pub fn row(&self, n: usize) -> &[Integer] {
        &self.rows[n]
    }

    /// Dumps `n,k,s(n,k)` rows with a header line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "n,k,s(n,k)")?;
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                writeln!(w, "{n},{k},{v}")?;
            }
        }
        Ok(())
    }
}

pub fn build_table(n_max: usize) -> Result<StirlingTable> {
    StirlingTable::build(n_max)
}

fn shared_slot() -> &'static Mutex<Option<Arc<StirlingTable>>> {
    static SLOT: OnceLock<Mutex<Option<Arc<StirlingTable>>>> = OnceLock::new();
    SLOT.get_or_init(|| Mutex::new(None))
}

/// Process-wide table covering at least `n_max`, rebuilt larger on demand.
pub fn shared_table(n_max: usize) -> Arc<StirlingTable> {
    let n_max = n_max.max(1);
    let mut slot = shared_slot().lock().expect("stirling cache poisoned");
    if let Some(t) = slot.as_ref() {
        if t.n_max() >= n_max {
            return Arc::clone(t);
        }
    }
    let grown = n_max.max(slot.as_ref().map_or(0, |t| 2 * t.n_max()));
    let t = Arc::new(StirlingTable::build(grown).expect("n_max >= 1"));
    *slot = Some(Arc::clone(&t));
    t
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sn12Row {
    pub n: usize,
    pub sn1_ok: bool,
    pub sn2_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sn12Report {
    pub rows: Vec<Sn12Row>,
}

impl Sn12Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.sn1_ok && r.sn2_ok)
    }
}

/// Checks `s(n,1) = (-1)^(n-1) (n-1)!` and `s(n,2) = (-1)^n (n-1)! H_(n-1)` exactly.
pub fn check_sn1_sn2(table: &StirlingTable) -> Sn12Report {
    let rows = (2..=table.n_max())
        .map(|n| {
            let fact = factorial(n as u32 - 1);
            let sign = if n % 2 == 0 { -1 } else { 1 };
            let sn1 = Integer::from(&fact * sign);
            let sn2 = harmonic_exact(n as u32 - 1) * Integer::from(&fact * -sign);
            Sn12Row {
                n,
                sn1_ok: *table.get(n, 1) == sn1,
                sn2_ok: sn2.denom() == &1 && table.get(n, 2) == sn2.numer(),
            }
        })
        .collect();
    Sn12Report { rows }
}

/// `|sum_{n=k}^{J} s(n,k) x^n / n! - ln^k(1+x) / k!|` for `|x| < 1`.
pub fn check_generating_function(
    table: &StirlingTable,
    k: usize,
    x: &Float,
    terms: usize,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let bits = ctx.bits();
    let x = Float::with_val(bits, x);
    if Float::with_val(bits, x.abs_ref()) >= 1 {
        return Err(Error::domain("generating function needs |x| < 1"));
    }
    if terms > table.n_max() || k > terms {
        return Err(Error::domain(format!(
            "need k <= J <= n_max, got k={k}, J={terms}, n_max={}",
            table.n_max()
        )));
    }
    let mut sum = Float::new(bits);
    let mut xn_over_fact = Float::with_val(bits, 1);
    for n in 0..=terms {
        if n > 0 {
            xn_over_fact = xn_over_fact * &x / (n as u32);
        }
        if n >= k {
            sum += Float::with_val(bits, table.get(n, k)) * &xn_over_fact;
        }
    }
    let log = Float::with_val(bits, x.ln_1p_ref());
    let target = Float::with_val(bits, (&log).pow(k as u32)) / Float::with_val(bits, factorial(k as u32));
    Ok((sum - target).abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdellCheck {
    pub lhs: Integer,
    pub rhs: Float,
    pub ok: bool,
}

/// `|s(j+1, l+1)| <= (j!/l!) (ln j)^l (1 + l/ln j)` for `1 <= l <= j-1`.
pub fn adell_bound_check(
    table: &StirlingTable,
    j: usize,
    ell: usize,
    ctx: &PrecisionContext,
) -> Result<AdellCheck> {
    if j < 2 || ell < 1 || ell > j - 1 {
        return Err(Error::domain(format!(
            "Stirling bound needs j >= 2 and 1 <= l <= j-1, got j={j}, l={ell}"
        )));
    }
    if j + 1 > table.n_max() {
        return Err(Error::domain("Stirling table too small for bound check"));
    }
    let bits = ctx.bits();
    let lhs = Integer::from(table.get(j + 1, ell + 1).abs_ref());
    let ln_j = Float::with_val(bits, j as u32).ln();
    let ratio = Float::with_val(bits, factorial(j as u32)) / Float::with_val(bits, factorial(ell as u32));
    let corr = Float::with_val(bits, ell as u32) / &ln_j + 1u32;
    let rhs = ratio * Float::with_val(bits, (&ln_j).pow(ell as u32)) * corr;
    let ok = rhs >= lhs;
    Ok(AdellCheck { lhs, rhs, ok })
}
